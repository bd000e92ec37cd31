#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

namespace defectwalk {

/// Thrown whenever an argument lies outside the domain of an operation
/// (zero spectral parameter, excluded defect strength, non-finite input, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

using Complex = std::complex<double>;

/// Maps a real scalar type to the complex type used with it. Specialized in
/// multiprecision.hpp for the extended-precision types.
template <class Real>
struct complex_for {
  using type = std::complex<Real>;
};
template <class Real>
using complex_t = typename complex_for<Real>::type;

template <class C>
struct real_for;
template <class T>
struct real_for<std::complex<T>> {
  using type = T;
};
template <class C>
using real_t = typename real_for<C>::type;

/// Shared tolerance bundle. Every module takes one of these instead of
/// hard-coding its own thresholds.
struct Tolerances {
  /// Equality of two complex values.
  double complex_equality = 1e-12;
  /// Half-width of the band | |λ| - 1 | treated as the unit circle.
  double circle = 1e-9;
  /// Angular tolerance for the arc endpoints e^{i(2k+1)π/4}.
  double angle = 1e-9;
  /// |λ² + λ⁻²| below which the bulk transfer matrix is treated as defective.
  double coalescence = 1e-12;
  /// Distance under which a user-supplied λ is accepted as a closed-form eigenvalue.
  double eigenvalue_match = 1e-9;

  /// Parses either a bare number (overrides complex_equality and
  /// eigenvalue_match) or a comma list of key=value pairs with keys
  /// complex, circle, angle, coalescence, eigenvalue.
  static Tolerances parse(std::string_view text, const Tolerances& base);
  static Tolerances parse(std::string_view text);

  /// Defaults, overridden by the DEFECTWALK_TOL environment variable when set.
  static Tolerances from_env(const char* variable = "DEFECTWALK_TOL");
};

namespace detail {

inline double parse_positive(std::string_view text) {
  const std::string owned(text);
  char* end = nullptr;
  const double value = std::strtod(owned.c_str(), &end);
  if (owned.empty() || end != owned.c_str() + owned.size() || !std::isfinite(value) || value <= 0.0) {
    throw DomainError("tolerance must be a positive finite number, got '" + owned + "'");
  }
  return value;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace detail

inline Tolerances Tolerances::parse(std::string_view text, const Tolerances& defaults) {
  Tolerances base = defaults;
  text = detail::trim(text);
  if (text.find('=') == std::string_view::npos) {
    const double value = detail::parse_positive(text);
    base.complex_equality = value;
    base.eigenvalue_match = value;
    return base;
  }
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = detail::trim(text.substr(0, comma));
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw DomainError("malformed tolerance entry '" + std::string(item) + "'");
    }
    const auto key = detail::trim(item.substr(0, eq));
    const double value = detail::parse_positive(detail::trim(item.substr(eq + 1)));
    if (key == "complex") {
      base.complex_equality = value;
    } else if (key == "circle") {
      base.circle = value;
    } else if (key == "angle") {
      base.angle = value;
    } else if (key == "coalescence") {
      base.coalescence = value;
    } else if (key == "eigenvalue") {
      base.eigenvalue_match = value;
    } else {
      throw DomainError("unknown tolerance key '" + std::string(key) + "'");
    }
  }
  return base;
}

inline Tolerances Tolerances::parse(std::string_view text) { return parse(text, Tolerances{}); }

inline Tolerances Tolerances::from_env(const char* variable) {
  const char* value = std::getenv(variable);
  if (value == nullptr || *value == '\0') return {};
  return parse(value);
}

template <class Real>
bool is_finite(const Real& x) {
  using std::isfinite;
  return isfinite(x);
}

template <class C>
bool is_finite_complex(const C& z) {
  return is_finite(real(z)) && is_finite(imag(z));
}

template <class C>
void require_finite(const C& z, const char* what) {
  if (!is_finite_complex(z)) throw DomainError(std::string(what) + ": non-finite complex input");
}

/// Principal square root in polar form: z = r e^{iθ} with θ ∈ (-π, π]
/// gives √z = r^{1/2} e^{iθ/2}. The cut sits on the negative real axis and
/// √(-r) = i√r; a signed-zero imaginary part is normalized to +0 first.
template <class C>
C principal_sqrt(const C& z) {
  using Real = real_t<C>;
  using std::atan2;
  using std::cos;
  using std::sin;
  using std::sqrt;
  require_finite(z, "principal_sqrt");
  const Real re = real(z);
  Real im = imag(z);
  if (im == Real{0}) im = Real{0};  // drops the sign of -0.0
  if (re == Real{0} && im == Real{0}) return C(Real{0}, Real{0});
  if (im == Real{0}) {
    return re > Real{0} ? C(sqrt(re), Real{0}) : C(Real{0}, sqrt(-re));
  }
  const Real r = sqrt(re * re + im * im);
  const Real half_theta = atan2(im, re) / Real{2};
  const Real root_r = sqrt(r);
  return C(root_r * cos(half_theta), root_r * sin(half_theta));
}

/// Cartesian square root √(a+bi) = √((a+m)/2) ± i√((-a+m)/2), m = √(a²+b²),
/// with the + sign iff b ≥ 0. The smaller of the two radicals is recovered as
/// |b| / (2·larger) to avoid cancellation; the value is unchanged.
template <class Real>
complex_t<Real> sqrt_cartesian(const Real& a, const Real& b) {
  using C = complex_t<Real>;
  using std::abs;
  using std::sqrt;
  if (!is_finite(a) || !is_finite(b)) throw DomainError("sqrt_cartesian: non-finite input");
  if (a == Real{0} && b == Real{0}) return C(Real{0}, Real{0});
  const Real m = sqrt(a * a + b * b);
  Real re;
  Real im;
  if (a >= Real{0}) {
    re = sqrt((a + m) / Real{2});
    im = abs(b) / (Real{2} * re);
  } else {
    im = sqrt((-a + m) / Real{2});
    re = abs(b) / (Real{2} * im);
  }
  return b >= Real{0} ? C(re, im) : C(re, -im);
}

/// Sign of a nonzero real, as ±1.
template <class Real>
int sign_of(const Real& x) {
  return x < Real{0} ? -1 : 1;
}

inline bool approx_equal(const Complex& a, const Complex& b, const Tolerances& tol = {}) {
  return std::abs(a - b) <= tol.complex_equality * std::max(1.0, std::abs(b));
}

}  // namespace defectwalk

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "defectwalk/lattice.hpp"
#include "defectwalk/matrix2.hpp"
#include "defectwalk/scalar.hpp"

namespace defectwalk {

// ---------------------------------------------------------------------------
// Defect-strength functions and the eigenvalue quadruple
// ---------------------------------------------------------------------------

namespace detail {

template <class Real>
Real r_squared(double omega_value, int which) {
  using std::sqrt;
  const Real w(omega_value);
  const Real wm1 = w - Real{1};
  const Real wm1_sq = wm1 * wm1;
  const Real q = w * w - w + Real{1};
  const Real inner = sqrt(w * w * (wm1_sq * wm1_sq + q * q));
  const Real half = w - Real{1} / Real{2};
  const Real numerator = Real(which) * w * wm1_sq + inner;
  return numerator / (Real{4} * half * half + Real{1});
}

}  // namespace detail

/// R₊(ω) = √((ω(ω-1)² + √(ω²((ω-1)⁴ + (ω²-ω+1)²))) / (4(ω-½)² + 1)).
/// Defined and positive for every ω ≠ 0, including ω = 1 where it is 1/√2.
template <class Real = double>
Real r_plus(DefectParameter omega) {
  using std::sqrt;
  return sqrt(detail::r_squared<Real>(omega.value(), +1));
}

/// R₋(ω): as r_plus with the sign of the ω(ω-1)² term flipped.
template <class Real = double>
Real r_minus(DefectParameter omega) {
  using std::sqrt;
  return sqrt(detail::r_squared<Real>(omega.value(), -1));
}

/// Closed form of |λ_j|² = R₋² + R₊² = sgn(ω)·ω·√((ω²-2ω+2)/(2ω²-2ω+1)).
template <class Real = double>
Real eigenvalue_modulus_squared(DefectParameter omega) {
  using std::sqrt;
  const Real w(omega.value());
  const Real ratio = (w * w - Real{2} * w + Real{2}) / (Real{2} * w * w - Real{2} * w + Real{1});
  return Real(omega.sign()) * w * sqrt(ratio);
}

/// λ₁ = R₋ + iR₊, λ₂ = -conj(λ₁), λ₃ = -λ₁, λ₄ = conj(λ₁).
template <class C = Complex>
struct SpectralQuadruple {
  std::array<C, 4> values;

  /// 1-based access matching the λ₁..λ₄ labels.
  const C& operator()(int index) const {
    if (index < 1 || index > 4) throw DomainError("eigenvalue index must be in 1..4");
    return values[static_cast<std::size_t>(index - 1)];
  }

  auto begin() const { return values.begin(); }
  auto end() const { return values.end(); }
};

template <class Real = double>
SpectralQuadruple<complex_t<Real>> eigenvalues(DefectParameter omega) {
  using C = complex_t<Real>;
  if (omega.is_homogeneous()) {
    throw DomainError("eigenvalue formulas require omega in R \\ {0, 1}; omega = 1 is the homogeneous walk");
  }
  const Real rp = r_plus<Real>(omega);
  const Real rm = r_minus<Real>(omega);
  return {{C(rm, rp), C(-rm, rp), C(-rm, -rp), C(rm, -rp)}};
}

// ---------------------------------------------------------------------------
// Branch bookkeeping
// ---------------------------------------------------------------------------

/// Which half-line decay pattern an eigenvector follows: PlusFamily decays
/// like z₋^x to the right (Re λ > 0), MinusFamily like z₊^x (Re λ < 0).
enum class Family { plus, minus };

/// Upper ⇔ λ = ±R₋ + i·sgn(ω)·R₊, Lower ⇔ λ = ±R₋ - i·sgn(ω)·R₊.
enum class SignChoice { upper, lower };

struct Branch {
  Family family;
  SignChoice sign;

  /// σ = +1 for Upper, -1 for Lower.
  int sigma() const { return sign == SignChoice::upper ? 1 : -1; }
  bool operator==(const Branch&) const = default;
};

/// Branch of λ_index. Table (σ = sgn(Im λ)·sgn(ω)):
///   λ₁: plus,  σ = sgn ω      λ₂: minus, σ = sgn ω
///   λ₃: minus, σ = -sgn ω     λ₄: plus,  σ = -sgn ω
inline Branch branch_of(DefectParameter omega, int index) {
  if (index < 1 || index > 4) throw DomainError("eigenvalue index must be in 1..4");
  const bool positive_real = index == 1 || index == 4;
  const int imag_sign = (index == 1 || index == 2) ? 1 : -1;
  const int sigma = imag_sign * omega.sign();
  return {positive_real ? Family::plus : Family::minus, sigma > 0 ? SignChoice::upper : SignChoice::lower};
}

inline std::string_view to_string(Family f) { return f == Family::plus ? "plus" : "minus"; }
inline std::string_view to_string(SignChoice s) { return s == SignChoice::upper ? "upper" : "lower"; }

// ---------------------------------------------------------------------------
// Bulk transfer matrix: eigenvalues z±, eigenvectors χ±
// ---------------------------------------------------------------------------

template <class C>
void require_nonzero(const C& lambda, const char* what) {
  require_finite(lambda, what);
  if (lambda == C{}) throw DomainError(std::string(what) + ": spectral parameter must be nonzero");
}

/// Everything derived from √(λ² + λ⁻²) for one λ.
template <class C>
struct BulkSpectrum {
  C root;         ///< principal √(λ² + λ⁻²), forced to 0 when coalescent
  C z_plus;       ///< (λ + λ⁻¹ + root)/√2
  C z_minus;      ///< (λ + λ⁻¹ - root)/√2
  C kappa_plus;   ///< (-λ + λ⁻¹ + root)/√2, second entry of χ₊
  C kappa_minus;  ///< (-λ + λ⁻¹ - root)/√2, second entry of χ₋
  bool coalescent;
};

template <class C>
BulkSpectrum<C> bulk_spectrum(const C& lambda, const Tolerances& tol = {}) {
  using Real = real_t<C>;
  using std::abs;
  using std::sqrt;
  require_nonzero(lambda, "bulk_spectrum");
  const C inv = C(Real{1}) / lambda;
  const C s = lambda * lambda + inv * inv;
  const bool coalescent = abs(s) <= Real(tol.coalescence);
  const C root = coalescent ? C{} : principal_sqrt(s);
  const Real rt2 = sqrt(Real{2});
  return {root,
          (lambda + inv + root) / rt2,
          (lambda + inv - root) / rt2,
          (-lambda + inv + root) / rt2,
          (-lambda + inv - root) / rt2,
          coalescent};
}

/// Eigenvalues (z₊, z₋) of the bulk transfer matrix; z₊z₋ = 1. At the four
/// coalescence points the common value is returned twice.
template <class C>
std::pair<C, C> z_pm(const C& lambda, const Tolerances& tol = {}) {
  const auto b = bulk_spectrum(lambda, tol);
  return {b.z_plus, b.z_minus};
}

/// Eigenvectors χ± = [1, κ±] of the bulk transfer matrix.
template <class C>
std::pair<Vector2<C>, Vector2<C>> chi_pm(const C& lambda, const Tolerances& tol = {}) {
  const auto b = bulk_spectrum(lambda, tol);
  return {Vector2<C>{C(1), b.kappa_plus}, Vector2<C>{C(1), b.kappa_minus}};
}

template <class C>
using TransferMatrix = Matrix2<C>;

/// [[√2λ, 1], [1, √2/λ]]
template <class C>
TransferMatrix<C> bulk_transfer_matrix(const C& lambda) {
  using Real = real_t<C>;
  using std::sqrt;
  require_nonzero(lambda, "bulk_transfer_matrix");
  const Real rt2 = sqrt(Real{2});
  return {rt2 * lambda, C(1), C(1), rt2 / lambda};
}

/// T_λ(x): the bulk matrix off the origin, [[√2λ/ω, 1], [1, √2ω/λ]] at x = 0.
/// Propagates (Ψ_L(x-1), Ψ_R(x)) to (Ψ_L(x), Ψ_R(x+1)) for eigenvectors.
template <class C>
TransferMatrix<C> transfer_matrix(const C& lambda, long x, DefectParameter omega) {
  using Real = real_t<C>;
  using std::sqrt;
  if (x != 0) return bulk_transfer_matrix(lambda);
  require_nonzero(lambda, "transfer_matrix");
  const Real rt2 = sqrt(Real{2});
  const Real w(omega.value());
  return {rt2 * lambda / w, C(1), C(1), rt2 * w / lambda};
}

// ---------------------------------------------------------------------------
// Region classification
// ---------------------------------------------------------------------------

enum class RegionLabel { sigma0, sigma, xi_plus, xi_minus };

inline std::string_view to_string(RegionLabel r) {
  switch (r) {
    case RegionLabel::sigma0:
      return "Sigma0";
    case RegionLabel::sigma:
      return "Sigma";
    case RegionLabel::xi_plus:
      return "XiPlus";
    case RegionLabel::xi_minus:
      return "XiMinus";
  }
  return "?";
}

namespace detail {

/// arg mapped to [0, 2π).
inline double angle_0_2pi(const Complex& z) {
  const double a = std::arg(z);
  return a < 0.0 ? a + 2.0 * std::numbers::pi : a;
}

/// Is θ ∈ [π/4, 3π/4] ∪ [5π/4, 7π/4], widened by `slack`?
inline bool in_arc_sector(double theta, double slack) {
  constexpr double q = std::numbers::pi / 4.0;
  return (theta >= q - slack && theta <= 3.0 * q + slack) || (theta >= 5.0 * q - slack && theta <= 7.0 * q + slack);
}

}  // namespace detail

/// The four points e^{i(2k+1)π/4}, k = 0..3.
inline std::array<Complex, 4> coalescence_points() {
  constexpr double q = std::numbers::pi / 4.0;
  return {std::polar(1.0, q), std::polar(1.0, 3.0 * q), std::polar(1.0, 5.0 * q), std::polar(1.0, 7.0 * q)};
}

/// Σ₀ ⊂ Σ (arc endpoints) is reported as Sigma0. Unit-circle membership uses
/// | |λ| - 1 | ≤ tol.circle; the arc endpoints use tol.angle.
inline RegionLabel classify(const Complex& lambda, const Tolerances& tol = {}) {
  require_nonzero(lambda, "classify");
  const double modulus = std::abs(lambda);
  if (std::abs(modulus - 1.0) <= tol.circle) {
    const double theta = detail::angle_0_2pi(lambda);
    constexpr double q = std::numbers::pi / 4.0;
    for (int k = 0; k < 4; ++k) {
      const double endpoint = (2 * k + 1) * q;
      if (std::abs(theta - endpoint) <= tol.angle) return RegionLabel::sigma0;
    }
    if (detail::in_arc_sector(theta, 0.0)) return RegionLabel::sigma;
  }
  const double re = lambda.real();
  const double im = lambda.imag();
  if (re > 0.0) return RegionLabel::xi_plus;
  if (re < 0.0) return RegionLabel::xi_minus;
  // Imaginary axis off Σ: it with t ∈ (-1, 0) ∪ (1, ∞) is Ξ₊.
  return ((im > -1.0 && im < 0.0) || im > 1.0) ? RegionLabel::xi_plus : RegionLabel::xi_minus;
}

/// Euclidean distance from λ to the arcs Σ.
inline double distance_to_essential_spectrum(const Complex& lambda) {
  if (lambda != Complex{} && detail::in_arc_sector(detail::angle_0_2pi(lambda), 0.0)) {
    return std::abs(std::abs(lambda) - 1.0);
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& e : coalescence_points()) best = std::min(best, std::abs(lambda - e));
  return best;
}

/// Evenly spaced points on each of the two arcs of Σ, endpoints included.
inline std::vector<Complex> essential_spectrum_arcs(int samples_per_arc) {
  if (samples_per_arc < 2) throw DomainError("essential_spectrum_arcs needs at least 2 samples per arc");
  constexpr double q = std::numbers::pi / 4.0;
  std::vector<Complex> points;
  points.reserve(static_cast<std::size_t>(2 * samples_per_arc));
  for (const double start : {q, 5.0 * q}) {
    for (int k = 0; k < samples_per_arc; ++k) {
      const double theta = start + 2.0 * q * k / (samples_per_arc - 1);
      points.push_back(std::polar(1.0, theta));
    }
  }
  return points;
}

// ---------------------------------------------------------------------------
// Defect matching: linear dependence of T_λ(0)χ± and χ∓
// ---------------------------------------------------------------------------

/// Λ₁ = (ω/λ)·κ₊
template <class C>
C defect_ratio_plus(const C& lambda, DefectParameter omega, const Tolerances& tol = {}) {
  using Real = real_t<C>;
  const auto b = bulk_spectrum(lambda, tol);
  return Real(omega.value()) / lambda * b.kappa_plus;
}

/// Λ₂ = (λ/ω)·κ₊
template <class C>
C defect_ratio_minus(const C& lambda, DefectParameter omega, const Tolerances& tol = {}) {
  using Real = real_t<C>;
  const auto b = bulk_spectrum(lambda, tol);
  return lambda / Real(omega.value()) * b.kappa_plus;
}

/// det[T_λ(0)χ₊  χ₋], evaluated as a raw 2x2 determinant. Vanishes on Ξ₊
/// exactly at the eigenvalues with Re λ > 0.
template <class C>
C dependence_det_plus(const C& lambda, DefectParameter omega, const Tolerances& tol = {}) {
  const auto b = bulk_spectrum(lambda, tol);
  const auto t0 = transfer_matrix(lambda, 0, omega);
  return det_columns(t0 * Vector2<C>{C(1), b.kappa_plus}, Vector2<C>{C(1), b.kappa_minus});
}

/// det[T_λ(0)χ₋  χ₊]; vanishes on Ξ₋ at the eigenvalues with Re λ < 0.
template <class C>
C dependence_det_minus(const C& lambda, DefectParameter omega, const Tolerances& tol = {}) {
  const auto b = bulk_spectrum(lambda, tol);
  const auto t0 = transfer_matrix(lambda, 0, omega);
  return det_columns(t0 * Vector2<C>{C(1), b.kappa_minus}, Vector2<C>{C(1), b.kappa_plus});
}

namespace detail {

template <class C>
void require_nonzero_ratio(const C& ratio) {
  if (ratio == C{}) throw DomainError("degenerate defect ratio (zero)");
}

}  // namespace detail

/// Same determinant through Λ₁: -2 - √2Λ₁ - √2Λ₁⁻¹.
template <class C>
C dependence_det_plus_closed(const C& lambda, DefectParameter omega, const Tolerances& tol = {}) {
  using Real = real_t<C>;
  using std::sqrt;
  const C ratio = defect_ratio_plus(lambda, omega, tol);
  detail::require_nonzero_ratio(ratio);
  const Real rt2 = sqrt(Real{2});
  return C(Real{-2}) - rt2 * ratio - rt2 / ratio;
}

/// Same determinant through Λ₂: -2 + √2Λ₂ + √2Λ₂⁻¹.
template <class C>
C dependence_det_minus_closed(const C& lambda, DefectParameter omega, const Tolerances& tol = {}) {
  using Real = real_t<C>;
  using std::sqrt;
  const C ratio = defect_ratio_minus(lambda, omega, tol);
  detail::require_nonzero_ratio(ratio);
  const Real rt2 = sqrt(Real{2});
  return C(Real{-2}) + rt2 * ratio + rt2 / ratio;
}

/// First entry of T_λ(0)χ_f, i.e. the factor γ in T_λ(0)χ₊ = γχ₋ (plus
/// family) or γ' in T_λ(0)χ₋ = γ'χ₊ (minus family) when the two are collinear.
template <class C>
C collinearity_factor(const C& lambda, DefectParameter omega, Family family, const Tolerances& tol = {}) {
  const auto b = bulk_spectrum(lambda, tol);
  const auto t0 = transfer_matrix(lambda, 0, omega);
  const C kappa = family == Family::plus ? b.kappa_plus : b.kappa_minus;
  return (t0 * Vector2<C>{C(1), kappa})[0];
}

/// Closed-form collinearity factor: γ = iσκ₊ (plus), γ' = -iσκ₋ (minus).
template <class C>
C expected_collinearity_factor(const BulkSpectrum<C>& b, Branch branch) {
  using Real = real_t<C>;
  const C i(Real{0}, Real{1});
  const Real sigma(branch.sigma());
  return branch.family == Family::plus ? sigma * i * b.kappa_plus : -sigma * i * b.kappa_minus;
}

/// Expected value of Λ₁ (plus family) or Λ₂ (minus family) at an eigenvalue:
/// Λ₁ = (-1 - iσ)/√2, Λ₂ = (1 + iσ)/√2.
template <class Real = double>
complex_t<Real> expected_defect_ratio(Branch branch) {
  using C = complex_t<Real>;
  using std::sqrt;
  const Real rt2 = sqrt(Real{2});
  const Real sigma(branch.sigma());
  return branch.family == Family::plus ? C(Real{-1} / rt2, -sigma / rt2) : C(Real{1} / rt2, sigma / rt2);
}

// ---------------------------------------------------------------------------
// Eigenvectors
// ---------------------------------------------------------------------------

template <class C>
struct EigenvectorProfile {
  int index;           ///< 1..4
  C lambda;
  C kappa;             ///< κ₊ (plus family) or κ₋ (minus family): Ψ_R(0)
  C kappa_other;       ///< the other κ; κ·κ_other = -1
  C z_decay_right;     ///< |·| < 1, ratio of successive sites for x ≥ 1
  C z_decay_left;      ///< |·| > 1, Ψ(x) ∝ z_decay_left^x for x ≤ -1
  C gamma;             ///< Ψ_L(0)
  Branch branch;
};

template <class Real = double>
EigenvectorProfile<complex_t<Real>> eigenvector_profile(DefectParameter omega, int index,
                                                        const Tolerances& tol = {}) {
  const auto quad = eigenvalues<Real>(omega);
  const auto lambda = quad(index);
  const Branch br = branch_of(omega, index);
  const auto b = bulk_spectrum(lambda, tol);
  const bool plus = br.family == Family::plus;
  return {index,
          lambda,
          plus ? b.kappa_plus : b.kappa_minus,
          plus ? b.kappa_minus : b.kappa_plus,
          plus ? b.z_minus : b.z_plus,
          plus ? b.z_plus : b.z_minus,
          expected_collinearity_factor(b, br),
          br};
}

enum class Normalization {
  unit_norm,    ///< ‖Ψ‖ = 1 on the window and Ψ_R(0) real positive
  defect_site,  ///< Ψ_R(0) = 1; independent of the window
};

/// Closed-form eigenvector for λ_index sampled on [-N, N]:
///   x ≥ 1:  Ψ = (γ z_r^x,  γκ' z_r^{x-1})
///   x = 0:  Ψ = (γ, κ)
///   x ≤ -1: Ψ = (z_l^{x+1}, z_l^x κ)
/// with z_r = z_decay_right, z_l = z_decay_left, κ' = kappa_other.
template <class Real = double>
WaveFunction<complex_t<Real>> eigenvector(DefectParameter omega, int index, long window,
                                          Normalization normalization = Normalization::unit_norm,
                                          const Tolerances& tol = {}) {
  using C = complex_t<Real>;
  using std::abs;
  using std::conj;
  if (window < 1) throw DomainError("eigenvector window must be >= 1");
  const auto p = eigenvector_profile<Real>(omega, index, tol);
  WaveFunction<C> psi(window);
  psi.at(0) = {p.gamma, p.kappa};
  C right_power(Real{1});  // z_r^{x-1}
  for (long x = 1; x <= window; ++x) {
    psi.at(x) = {p.gamma * right_power * p.z_decay_right, p.gamma * p.kappa_other * right_power};
    right_power *= p.z_decay_right;
  }
  const C inv_left = C(Real{1}) / p.z_decay_left;
  C left_power(Real{1});  // z_l^{x+1}
  for (long x = -1; x >= -window; --x) {
    psi.at(x) = {left_power, left_power * inv_left * p.kappa};
    left_power *= inv_left;
  }
  if (normalization == Normalization::defect_site) {
    psi *= C(Real{1}) / p.kappa;
  } else {
    const C phase = conj(p.kappa) / abs(p.kappa);
    psi *= phase;
    psi *= C(Real{1} / psi.norm());
  }
  return psi;
}

/// Solution of the eigenvalue equation built purely from transfer matrices:
/// (JΨ)(x) = (Ψ_L(x-1), Ψ_R(x)) is seeded at x = 0 and propagated with
/// (JΨ)(x+1) = T_λ(x)(JΨ)(x) to the right and T_λ(x)⁻¹ to the left. Not
/// square-summable unless λ is an eigenvalue and the seed is aligned; the
/// interior of the window satisfies UΨ = λΨ regardless.
template <class C>
WaveFunction<C> transfer_solution(const C& lambda, DefectParameter omega, const Vector2<C>& seed, long window) {
  if (window < 1) throw DomainError("transfer_solution window must be >= 1");
  WaveFunction<C> psi(window);
  Vector2<C> j = seed;
  psi.at(0).right = j[1];
  if (-1 >= -window) psi.at(-1).left = j[0];
  for (long x = 0; x < window; ++x) {
    j = transfer_matrix(lambda, x, omega) * j;
    psi.at(x).left = j[0];
    psi.at(x + 1).right = j[1];
  }
  psi.at(window).left = (transfer_matrix(lambda, window, omega) * j)[0];
  j = seed;
  for (long x = -1; x >= -window; --x) {
    const auto t = transfer_matrix(lambda, x, omega);
    // det T = 1, so T⁻¹ = [[d, -b], [-c, a]].
    const Vector2<C> prev{t(1, 1) * j[0] - t(0, 1) * j[1], -t(1, 0) * j[0] + t(0, 0) * j[1]};
    j = prev;
    psi.at(x).right = j[1];
    if (x - 1 >= -window) psi.at(x - 1).left = j[0];
  }
  return psi;
}

/// Index (1..4) of the closed-form eigenvalue nearest to λ; throws when the
/// nearest one is farther than tol.eigenvalue_match.
inline int eigenvalue_index(DefectParameter omega, const Complex& lambda, const Tolerances& tol = {}) {
  const auto quad = eigenvalues(omega);
  int best = 1;
  for (int j = 2; j <= 4; ++j) {
    if (std::abs(quad(j) - lambda) < std::abs(quad(best) - lambda)) best = j;
  }
  const double distance = std::abs(quad(best) - lambda);
  if (distance > tol.eigenvalue_match * std::max(1.0, std::abs(lambda))) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "lambda = " << lambda << " is not an eigenvalue for omega = " << omega.value() << "; nearest is lambda"
        << best << " = " << quad(best) << " at distance " << distance;
    throw DomainError(msg.str());
  }
  return best;
}

/// Eigenvector for a user-supplied eigenvalue (matched against the quadruple).
inline WaveFunction<Complex> eigenvector(DefectParameter omega, const Complex& lambda, long window,
                                         Normalization normalization = Normalization::unit_norm,
                                         const Tolerances& tol = {}) {
  return eigenvector<double>(omega, eigenvalue_index(omega, lambda, tol), window, normalization, tol);
}

}  // namespace defectwalk

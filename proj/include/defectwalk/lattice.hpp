#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "defectwalk/scalar.hpp"

namespace defectwalk {

/// Real, nonzero coin factor ω applied at the origin only. ω = 1 is the
/// homogeneous walk; ω = ±1 keeps the walk unitary.
class DefectParameter {
 public:
  explicit DefectParameter(double omega) : omega_(omega) {
    if (!std::isfinite(omega)) throw DomainError("defect parameter must be finite");
    if (omega == 0.0) throw DomainError("defect parameter must be nonzero (omega in R \\ {0})");
  }

  /// Same, additionally rejecting ω = 1, where the four-eigenvalue formulas
  /// do not apply.
  static DefectParameter spectral(double omega) {
    DefectParameter p(omega);
    if (omega == 1.0) {
      throw DomainError("eigenvalue formulas require omega in R \\ {0, 1}; omega = 1 is the homogeneous walk");
    }
    return p;
  }

  double value() const { return omega_; }
  int sign() const { return omega_ < 0.0 ? -1 : 1; }
  bool is_homogeneous() const { return omega_ == 1.0; }
  bool is_unitary() const { return omega_ == 1.0 || omega_ == -1.0; }
  /// |ω - 1|
  double perturbation_strength() const { return std::abs(omega_ - 1.0); }

  /// Coin factor ω_x: ω at the origin, 1 elsewhere.
  double site_factor(long x) const { return x == 0 ? omega_ : 1.0; }

 private:
  double omega_;
};

template <class C>
struct Spinor {
  C left{};
  C right{};
};

/// Two-component field on the window x ∈ [-N, N].
template <class C = Complex>
class WaveFunction {
 public:
  using complex_type = C;
  using real_type = real_t<C>;

  explicit WaveFunction(long window) : window_(window) {
    if (window < 1) throw DomainError("wave function window must be >= 1");
    sites_.resize(static_cast<std::size_t>(2 * window + 1));
  }

  long window() const { return window_; }
  std::size_t size() const { return sites_.size(); }
  bool contains(long x) const { return x >= -window_ && x <= window_; }

  Spinor<C>& at(long x) { return sites_[index(x)]; }
  const Spinor<C>& at(long x) const { return sites_[index(x)]; }

  std::vector<Spinor<C>>& sites() { return sites_; }
  const std::vector<Spinor<C>>& sites() const { return sites_; }

  real_type norm_squared() const {
    using std::norm;
    real_type total{0};
    for (const auto& s : sites_) total += norm(s.left) + norm(s.right);
    return total;
  }

  real_type norm() const {
    using std::sqrt;
    return sqrt(norm_squared());
  }

  /// |Ψ_L(x)|² + |Ψ_R(x)|²
  real_type weight(long x) const {
    using std::norm;
    const auto& s = at(x);
    return norm(s.left) + norm(s.right);
  }

  WaveFunction& operator*=(const C& factor) {
    for (auto& s : sites_) {
      s.left *= factor;
      s.right *= factor;
    }
    return *this;
  }

  WaveFunction& operator+=(const WaveFunction& other) {
    require_same_window(other);
    for (std::size_t i = 0; i < sites_.size(); ++i) {
      sites_[i].left += other.sites_[i].left;
      sites_[i].right += other.sites_[i].right;
    }
    return *this;
  }

  WaveFunction& operator-=(const WaveFunction& other) {
    require_same_window(other);
    for (std::size_t i = 0; i < sites_.size(); ++i) {
      sites_[i].left -= other.sites_[i].left;
      sites_[i].right -= other.sites_[i].right;
    }
    return *this;
  }

  bool all_finite() const {
    for (const auto& s : sites_) {
      if (!is_finite_complex(s.left) || !is_finite_complex(s.right)) return false;
    }
    return true;
  }

  /// Largest |x| carrying a nonzero amplitude, or -1 for the zero field.
  long support_radius() const {
    long radius = -1;
    for (long x = -window_; x <= window_; ++x) {
      const auto& s = at(x);
      if (s.left != C{} || s.right != C{}) radius = std::max(radius, x < 0 ? -x : x);
    }
    return radius;
  }

 private:
  std::size_t index(long x) const {
    if (!contains(x)) throw std::out_of_range("site " + std::to_string(x) + " outside window");
    return static_cast<std::size_t>(x + window_);
  }

  void require_same_window(const WaveFunction& other) const {
    if (other.window_ != window_) throw DomainError("wave functions live on different windows");
  }

  long window_;
  std::vector<Spinor<C>> sites_;
};

template <class C>
WaveFunction<C> operator*(C factor, WaveFunction<C> psi) {
  psi *= factor;
  return psi;
}

template <class C>
WaveFunction<C> operator+(WaveFunction<C> a, const WaveFunction<C>& b) {
  a += b;
  return a;
}

template <class C>
WaveFunction<C> operator-(WaveFunction<C> a, const WaveFunction<C>& b) {
  a -= b;
  return a;
}

}  // namespace defectwalk

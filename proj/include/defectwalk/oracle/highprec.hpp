#pragma once

#include <string>
#include <vector>

#include "defectwalk/multiprecision.hpp"
#include "defectwalk/spectrum.hpp"

namespace defectwalk {

struct IdentityCheck {
  std::string name;
  bool passed = false;
  /// |lhs - rhs| for identities; the quantity that must be positive for
  /// inequalities.
  double value = 0.0;
  double threshold = 0.0;
};

struct HighPrecisionReport {
  double omega = 0.0;
  std::vector<IdentityCheck> checks;

  bool passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }

  std::vector<std::string> failures() const {
    std::vector<std::string> out;
    for (const auto& c : checks) {
      if (!c.passed) out.push_back(c.name + " failed at omega = " + std::to_string(omega));
    }
    return out;
  }
};

namespace detail {

inline double mp_to_double(const mp_real& x) { return static_cast<double>(x); }

}  // namespace detail

/// Re-derives the closed forms at ~100 significant digits and checks the
/// identities they must satisfy: R± > 0, the modulus identity, the defect
/// ratios Λ₁ and Λ₂ at their eigenvalues, vanishing dependence determinants,
/// the unsquared root equation together with its sign condition, and the
/// reduced inequality in ω. At ω = -1 also the exact values (±3 ± i)/√10.
inline HighPrecisionReport highprec_check(DefectParameter omega, double threshold = 1e-40) {
  using std::abs;
  using std::sqrt;
  if (omega.is_homogeneous()) throw DomainError("highprec_check requires omega in R \\ {0, 1}");

  HighPrecisionReport report;
  report.omega = omega.value();
  const mp_real thr(threshold);
  auto identity = [&](std::string name, const mp_real& deviation) {
    report.checks.push_back({std::move(name), deviation <= thr, detail::mp_to_double(deviation), threshold});
  };
  auto positive = [&](std::string name, const mp_real& value) {
    report.checks.push_back({std::move(name), value > 0, detail::mp_to_double(value), 0.0});
  };

  const mp_real w(omega.value());
  const mp_real one(1);
  const mp_real two(2);
  const mp_real rt2 = sqrt(two);
  const mp_real sgn(omega.sign());

  const mp_real rp = r_plus<mp_real>(omega);
  const mp_real rm = r_minus<mp_real>(omega);
  positive("r_plus_positive", rp);
  positive("r_minus_positive", rm);

  const mp_real wm1 = w - one;
  const mp_real q = w * w - w + one;
  const mp_real a = two * w * w - two * w + one;
  const mp_real b = w * w - two * w + two;
  identity("factorization", abs(wm1 * wm1 * wm1 * wm1 + q * q - a * b));
  identity("modulus_identity", abs(rm * rm + rp * rp - eigenvalue_modulus_squared<mp_real>(omega)));

  const auto quad = eigenvalues<mp_real>(omega);
  Tolerances exact;
  exact.coalescence = 0.0;
  for (int j = 1; j <= 4; ++j) {
    const std::string tag = "[lambda" + std::to_string(j) + "]";
    const mp_complex lambda = quad(j);
    const Branch br = branch_of(omega, j);
    const bool plus = br.family == Family::plus;
    const auto expected = expected_defect_ratio<mp_real>(br);
    const mp_complex ratio = plus ? defect_ratio_plus(lambda, omega, exact) : defect_ratio_minus(lambda, omega, exact);
    identity((plus ? "defect_ratio_plus" : "defect_ratio_minus") + tag, abs(ratio - expected));
    const mp_complex det =
        plus ? dependence_det_plus(lambda, omega, exact) : dependence_det_minus(lambda, omega, exact);
    identity("dependence_det" + tag, abs(det));

    // √(λ² + λ⁻²) = √2Λ₁·λ/ω + λ - λ⁻¹ (plus) or √2Λ₂·ω/λ + λ - λ⁻¹ (minus);
    // the right side must lie in the principal half-plane Re > 0.
    const mp_complex inv = mp_complex(one) / lambda;
    const mp_complex rhs = plus ? rt2 * expected * lambda / w + lambda - inv : rt2 * expected * w / lambda + lambda - inv;
    positive("sign_condition" + tag, rhs.real());
    identity("unsquared_equation" + tag, abs(rhs - principal_sqrt(mp_complex(lambda * lambda + inv * inv))));
  }

  positive("reduced_inequality", wm1 * (sgn * w * w * sqrt(b) - sqrt(a)));

  if (omega.value() == -1.0) {
    const mp_real r10 = sqrt(mp_real(10));
    const std::array<mp_complex, 4> exact_values{mp_complex(mp_real(3) / r10, one / r10),
                                                 mp_complex(mp_real(-3) / r10, one / r10),
                                                 mp_complex(mp_real(-3) / r10, -one / r10),
                                                 mp_complex(mp_real(3) / r10, -one / r10)};
    mp_real worst(0);
    for (int j = 1; j <= 4; ++j) {
      const mp_real d = abs(quad(j) - exact_values[static_cast<std::size_t>(j - 1)]);
      if (d > worst) worst = d;
    }
    identity("unitary_exact_values", worst);
  }
  return report;
}

}  // namespace defectwalk

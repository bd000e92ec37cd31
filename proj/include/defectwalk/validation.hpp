#pragma once

#include <algorithm>
#include <functional>
#include <future>
#include <string>
#include <vector>

#include "defectwalk/oracle/highprec.hpp"
#include "defectwalk/oracle/residual.hpp"
#include "defectwalk/oracle/roots.hpp"
#include "defectwalk/spectrum.hpp"
#include "defectwalk/walk.hpp"

namespace defectwalk {

struct CheckResult {
  std::string name;
  double omega = 0.0;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  }

  std::vector<CheckResult> failures() const {
    std::vector<CheckResult> out;
    std::copy_if(checks.begin(), checks.end(), std::back_inserter(out), [](const CheckResult& c) { return !c.passed; });
    return out;
  }
};

/// Source of the closed-form quadruple under test. Replaceable so a test can
/// feed a deliberately wrong formula and watch validation fail.
using QuadrupleSource = std::function<SpectralQuadruple<Complex>(DefectParameter)>;

inline std::vector<double> default_omega_grid() { return {-3.0, -2.0, -1.0, -0.5, 0.5, 0.9, 1.5, 2.0, 3.0}; }

struct ValidationOptions {
  std::vector<double> omega_grid = default_omega_grid();
  RootSearchOptions roots;
  Tolerances tol;
  QuadrupleSource quadruple = [](DefectParameter w) { return eigenvalues(w); };
  double root_agreement = 1e-8;
  long residual_window = 64;
  double residual_threshold = 1e-10;
  std::vector<long> decay_windows{16, 32, 64, 128};
  double decay_rate_tolerance = 0.10;
  double identity_threshold = 1e-40;
  bool parallel = true;
};

namespace detail {

inline std::vector<CheckResult> validate_one(double omega_value, const ValidationOptions& opt) {
  std::vector<CheckResult> out;
  const auto omega = DefectParameter::spectral(omega_value);
  auto add = [&](std::string name, bool passed, double value, double threshold, std::string detail = {}) {
    out.push_back({std::move(name), omega_value, passed, value, threshold, std::move(detail)});
  };

  for (const auto& c : highprec_check(omega, opt.identity_threshold).checks) {
    add("highprec." + c.name, c.passed, c.value, c.threshold);
  }

  const auto quad = opt.quadruple(omega);
  const auto search = find_eigenvalues_numeric(omega, opt.roots);
  int plus_roots = 0;
  int minus_roots = 0;
  bool regions_ok = true;
  for (const auto& r : search.roots) {
    const auto label = classify(r.root, opt.tol);
    if (r.determinant == Determinant::plus) {
      ++plus_roots;
      regions_ok = regions_ok && label == RegionLabel::xi_plus;
    } else {
      ++minus_roots;
      regions_ok = regions_ok && label == RegionLabel::xi_minus;
    }
  }
  std::string diag;
  for (const auto& d : search.diagnostics) diag += (diag.empty() ? "" : "; ") + d;
  add("roots.count", plus_roots == 2 && minus_roots == 2, static_cast<double>(search.roots.size()), 4.0,
      "det_plus: " + std::to_string(plus_roots) + ", det_minus: " + std::to_string(minus_roots) +
          (diag.empty() ? "" : "; " + diag));
  add("roots.regions", regions_ok && !search.roots.empty(), regions_ok ? 0.0 : 1.0, 0.0);

  // Symmetric set distance between the Newton roots and the quadruple.
  double distance = search.roots.empty() ? std::numeric_limits<double>::infinity() : 0.0;
  for (const auto& r : search.roots) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& q : quad) best = std::min(best, std::abs(r.root - q));
    distance = std::max(distance, best);
  }
  for (const auto& q : quad) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& r : search.roots) best = std::min(best, std::abs(r.root - q));
    distance = std::max(distance, best);
  }
  add("roots.agreement", distance < opt.root_agreement, distance, opt.root_agreement);

  for (int j = 1; j <= 4; ++j) {
    const std::string tag = "[lambda" + std::to_string(j) + "]";
    const auto psi = eigenvector(omega, j, opt.residual_window);
    const double residual = eigen_residual(psi, omega, quad(j));
    add("eigvec.residual" + tag, residual < opt.residual_threshold, residual, opt.residual_threshold);

    const auto decay = residual_decay(omega, j, opt.decay_windows);
    add("eigvec.decay_rate" + tag, decay.decreasing && decay.relative_error <= opt.decay_rate_tolerance,
        decay.relative_error, opt.decay_rate_tolerance,
        "fitted " + std::to_string(decay.fitted_rate) + ", predicted " + std::to_string(decay.predicted_rate));
  }
  return out;
}

}  // namespace detail

/// Runs the full identity, root-agreement and eigenvector suite for every ω
/// of the grid. Results are ordered by grid position regardless of threading.
inline ValidationReport validate(const ValidationOptions& opt = {}) {
  for (const double w : opt.omega_grid) DefectParameter::spectral(w);
  ValidationReport report;
  if (opt.parallel) {
    std::vector<std::future<std::vector<CheckResult>>> jobs;
    for (const double w : opt.omega_grid) {
      jobs.push_back(std::async(std::launch::async, [w, &opt] { return detail::validate_one(w, opt); }));
    }
    for (auto& j : jobs) {
      auto part = j.get();
      report.checks.insert(report.checks.end(), part.begin(), part.end());
    }
  } else {
    for (const double w : opt.omega_grid) {
      auto part = detail::validate_one(w, opt);
      report.checks.insert(report.checks.end(), part.begin(), part.end());
    }
  }
  return report;
}

}  // namespace defectwalk

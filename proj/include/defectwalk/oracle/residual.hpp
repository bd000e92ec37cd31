#pragma once

#include <cmath>
#include <vector>

#include "defectwalk/multiprecision.hpp"
#include "defectwalk/spectrum.hpp"
#include "defectwalk/walk.hpp"

namespace defectwalk {

struct ResidualSample {
  long window = 0;
  double log_residual = 0.0;  ///< natural log; the residual itself underflows double for large N
};

struct ResidualDecay {
  int index = 0;
  std::vector<ResidualSample> samples;
  double fitted_rate = 0.0;     ///< exp(slope) of log residual against N
  double predicted_rate = 0.0;  ///< |z_decay_right| = 1/|z_decay_left|
  double relative_error = 0.0;
  bool decreasing = false;
};

/// Full truncated residual ‖U_NΨ_N - λΨ_N‖ (boundary leakage included) of the
/// closed-form eigenvector, scaled so Ψ_R(0) = 1, evaluated in extended
/// precision for each window and fitted to a geometric rate.
inline ResidualDecay residual_decay(DefectParameter omega, int index, const std::vector<long>& windows = {16, 32, 64, 128}) {
  if (windows.size() < 2) throw DomainError("residual_decay needs at least two windows");
  ResidualDecay out;
  out.index = index;
  const auto profile = eigenvector_profile<mp_real>(omega, index);
  out.predicted_rate = static_cast<double>(abs(profile.z_decay_right));

  for (const long n : windows) {
    const auto psi = eigenvector<mp_real>(omega, index, n, Normalization::defect_site);
    const mp_real r = eigen_residual(psi, omega, profile.lambda, 0);
    out.samples.push_back({n, static_cast<double>(log(r))});
  }

  double mean_n = 0.0;
  double mean_l = 0.0;
  for (const auto& s : out.samples) {
    mean_n += static_cast<double>(s.window);
    mean_l += s.log_residual;
  }
  mean_n /= static_cast<double>(out.samples.size());
  mean_l /= static_cast<double>(out.samples.size());
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& s : out.samples) {
    const double dx = static_cast<double>(s.window) - mean_n;
    sxx += dx * dx;
    sxy += dx * (s.log_residual - mean_l);
  }
  if (sxx == 0.0) throw DomainError("residual_decay needs at least two distinct windows");
  out.fitted_rate = std::exp(sxy / sxx);
  out.relative_error = std::abs(out.fitted_rate - out.predicted_rate) / out.predicted_rate;
  out.decreasing = true;
  for (std::size_t i = 1; i < out.samples.size(); ++i) {
    if (!(out.samples[i].log_residual < out.samples[i - 1].log_residual)) out.decreasing = false;
  }
  return out;
}

}  // namespace defectwalk

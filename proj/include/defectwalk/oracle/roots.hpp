#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "defectwalk/spectrum.hpp"

namespace defectwalk {

enum class Determinant { plus, minus };

inline std::string_view to_string(Determinant d) { return d == Determinant::plus ? "plus" : "minus"; }

struct RootSearchOptions {
  int resolution = 60;  ///< radial and angular seed count per half-plane
  double min_modulus = 0.2;
  double max_modulus = 3.0;
  double exclusion = 0.05;  ///< seeds keep this distance from iR and Σ
  int max_iterations = 100;
  double fd_step = 1e-7;
  double residual_tolerance = 1e-11;
  double dedupe_distance = 1e-8;
  int max_restarts = 3;
};

struct RootFindResult {
  Complex root;
  double residual = 0.0;
  int iterations = 0;
  Complex seed;
  bool converged = false;
  Determinant determinant = Determinant::plus;
  int restarts = 0;
  int basin_size = 1;  ///< number of seeds that landed on this root
};

struct RootSearch {
  std::vector<RootFindResult> roots;
  long seeds_tried = 0;
  long seeds_converged = 0;
  long restarts = 0;
  std::vector<std::string> diagnostics;
};

namespace detail {

inline Complex evaluate_determinant(Determinant which, const Complex& lambda, DefectParameter omega) {
  return which == Determinant::plus ? dependence_det_plus(lambda, omega) : dependence_det_minus(lambda, omega);
}

/// Does the step a -> b leave the half-plane or pass through Σ, where
/// √(λ² + λ⁻²) jumps?
inline bool crosses_cut(Determinant which, const Complex& a, const Complex& b) {
  if (which == Determinant::plus ? b.real() <= 0.0 : b.real() >= 0.0) return true;
  const double da = std::abs(a) - 1.0;
  const double db = std::abs(b) - 1.0;
  if (da * db < 0.0) {
    const double t = da / (da - db);
    const Complex p = a + t * (b - a);
    if (detail::in_arc_sector(detail::angle_0_2pi(p), 0.0)) return true;
  }
  return false;
}

}  // namespace detail

/// Newton iteration on det_plus or det_minus with a central finite-difference
/// derivative. A step that crosses the branch cut restarts from a perturbed seed.
inline RootFindResult newton_root(Determinant which, DefectParameter omega, Complex seed,
                                  const RootSearchOptions& opt = {}) {
  RootFindResult res;
  res.seed = seed;
  res.determinant = which;
  Complex lambda = seed;
  const Complex h(opt.fd_step, 0.0);
  for (int it = 0; it < opt.max_iterations; ++it) {
    res.iterations = it + 1;
    const Complex f = detail::evaluate_determinant(which, lambda, omega);
    const Complex df = (detail::evaluate_determinant(which, lambda + h, omega) -
                        detail::evaluate_determinant(which, lambda - h, omega)) /
                       (2.0 * h);
    if (df == Complex{} || !std::isfinite(std::abs(df))) break;
    Complex step = f / df;
    // Damp long jumps; the determinant varies on the scale of |λ|.
    const double cap = 0.5 * std::abs(lambda);
    if (std::abs(step) > cap) step *= cap / std::abs(step);
    const Complex next = lambda - step;
    if (detail::crosses_cut(which, lambda, next) || std::abs(next) < 1e-3) {
      if (res.restarts >= opt.max_restarts) break;
      ++res.restarts;
      lambda = seed * (1.0 + 0.02 * res.restarts * std::polar(1.0, 0.7 * res.restarts));
      continue;
    }
    lambda = next;
    if (std::abs(step) <= 4e-16 * std::abs(lambda)) break;
  }
  res.root = lambda;
  res.residual = std::abs(detail::evaluate_determinant(which, lambda, omega));
  res.converged = std::isfinite(res.residual) && res.residual < opt.residual_tolerance;
  return res;
}

/// Scans a polar seed grid over min_modulus ≤ |λ| ≤ max_modulus in each
/// half-plane (right: det_plus, left: det_minus), runs Newton from every seed
/// and returns the deduplicated converged roots. Never fabricates a root: an
/// empty result means nothing converged.
inline RootSearch find_eigenvalues_numeric(DefectParameter omega, const RootSearchOptions& opt = {}) {
  if (omega.is_homogeneous()) throw DomainError("root search requires omega in R \\ {0, 1}");
  if (opt.resolution < 1) throw DomainError("seed grid resolution must be >= 1");
  RootSearch search;
  for (const Determinant which : {Determinant::plus, Determinant::minus}) {
    std::vector<RootFindResult> found;
    const double base = which == Determinant::plus ? -std::numbers::pi / 2.0 : std::numbers::pi / 2.0;
    for (int ir = 0; ir < opt.resolution; ++ir) {
      const double r = opt.min_modulus + (opt.max_modulus - opt.min_modulus) * (ir + 0.5) / opt.resolution;
      for (int ia = 0; ia < opt.resolution; ++ia) {
        const double theta = base + std::numbers::pi * (ia + 0.5) / opt.resolution;
        const Complex seed = std::polar(r, theta);
        if (std::abs(seed.real()) < opt.exclusion || distance_to_essential_spectrum(seed) < opt.exclusion) continue;
        ++search.seeds_tried;
        auto res = newton_root(which, omega, seed, opt);
        search.restarts += res.restarts;
        if (!res.converged) continue;
        ++search.seeds_converged;
        auto same = std::find_if(found.begin(), found.end(), [&](const RootFindResult& f) {
          return std::abs(f.root - res.root) <= opt.dedupe_distance * std::max(1.0, std::abs(res.root));
        });
        if (same == found.end()) {
          found.push_back(res);
        } else {
          const int basin = same->basin_size + 1;
          if (res.residual < same->residual) *same = res;
          same->basin_size = basin;
        }
      }
    }
    if (found.empty()) {
      search.diagnostics.push_back(std::string("no seed converged for det_") + std::string(to_string(which)));
    }
    std::sort(found.begin(), found.end(), [](const RootFindResult& a, const RootFindResult& b) {
      return a.root.imag() > b.root.imag();
    });
    search.roots.insert(search.roots.end(), found.begin(), found.end());
  }
  return search;
}

}  // namespace defectwalk

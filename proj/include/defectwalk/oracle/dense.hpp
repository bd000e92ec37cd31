#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "defectwalk/lattice.hpp"
#include "defectwalk/walk.hpp"

namespace defectwalk {

class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Finite section of U_ω on [-N, N] as a dense row-major matrix.
/// Basis order is site-major: index 2(x + N) + c with c = 0 (L), 1 (R).
class DenseOperator {
 public:
  DenseOperator(long window, std::vector<Complex> entries)
      : window_(window), dim_(static_cast<std::size_t>(2 * (2 * window + 1))), entries_(std::move(entries)) {
    if (entries_.size() != dim_ * dim_) throw DomainError("dense operator storage has the wrong size");
  }

  long window() const { return window_; }
  std::size_t dimension() const { return dim_; }

  static std::size_t basis_index(long window, long x, int component) {
    return static_cast<std::size_t>(2 * (x + window) + component);
  }

  const Complex& operator()(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }

  std::vector<Complex> apply(std::span<const Complex> v) const {
    if (v.size() != dim_) throw DomainError("vector length does not match operator dimension");
    std::vector<Complex> out(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
      Complex acc{};
      const Complex* row = entries_.data() + r * dim_;
      for (std::size_t c = 0; c < dim_; ++c) acc += row[c] * v[c];
      out[r] = acc;
    }
    return out;
  }

  std::size_t nonzeros_in_row(std::size_t row) const {
    std::size_t count = 0;
    for (std::size_t c = 0; c < dim_; ++c) count += (*this)(row, c) != Complex{} ? 1 : 0;
    return count;
  }

 private:
  long window_;
  std::size_t dim_;
  std::vector<Complex> entries_;
};

/// Assembled from the coin matrices and the shift: row (x, L) reads C(x+1)
/// row 0 at site x+1, row (x, R) reads C(x-1) row 1 at site x-1.
inline DenseOperator build_dense(DefectParameter omega, long window, std::size_t max_bytes = std::size_t{512} << 20) {
  if (window < 1) throw DomainError("dense operator window must be >= 1");
  const auto dim = static_cast<std::size_t>(2 * (2 * window + 1));
  if (dim > max_bytes / sizeof(Complex) / dim) {
    throw CapacityError("dense operator of dimension " + std::to_string(dim) + " exceeds the memory budget of " +
                        std::to_string(max_bytes) + " bytes");
  }
  std::vector<Complex> entries(dim * dim);
  auto set = [&](std::size_t r, std::size_t c, double v) { entries[r * dim + c] = v; };
  for (long x = -window; x <= window; ++x) {
    if (x + 1 <= window) {
      const auto c = coin(x + 1, omega);
      for (int k = 0; k < 2; ++k) set(DenseOperator::basis_index(window, x, 0), DenseOperator::basis_index(window, x + 1, k), c(0, k));
    }
    if (x - 1 >= -window) {
      const auto c = coin(x - 1, omega);
      for (int k = 0; k < 2; ++k) set(DenseOperator::basis_index(window, x, 1), DenseOperator::basis_index(window, x - 1, k), c(1, k));
    }
  }
  return {window, std::move(entries)};
}

inline std::vector<Complex> flatten(const WaveFunction<>& psi) {
  std::vector<Complex> v;
  v.reserve(2 * psi.size());
  for (const auto& s : psi.sites()) {
    v.push_back(s.left);
    v.push_back(s.right);
  }
  return v;
}

inline WaveFunction<> unflatten(std::span<const Complex> v, long window) {
  WaveFunction<> psi(window);
  if (v.size() != 2 * psi.size()) throw DomainError("vector length does not match window");
  for (std::size_t i = 0; i < psi.size(); ++i) psi.sites()[i] = {v[2 * i], v[2 * i + 1]};
  return psi;
}

}  // namespace defectwalk

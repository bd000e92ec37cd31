#pragma once

#include <array>

namespace defectwalk {

template <class T>
using Vector2 = std::array<T, 2>;

/// Fixed 2x2 matrix, row-major.
template <class T>
struct Matrix2 {
  std::array<T, 4> entries{};

  Matrix2() = default;
  Matrix2(T a, T b, T c, T d) : entries{std::move(a), std::move(b), std::move(c), std::move(d)} {}

  T& operator()(int row, int col) { return entries[2 * row + col]; }
  const T& operator()(int row, int col) const { return entries[2 * row + col]; }

  T det() const { return entries[0] * entries[3] - entries[1] * entries[2]; }

  Vector2<T> operator*(const Vector2<T>& v) const {
    return {entries[0] * v[0] + entries[1] * v[1], entries[2] * v[0] + entries[3] * v[1]};
  }

  Matrix2 operator*(const Matrix2& o) const {
    return {entries[0] * o.entries[0] + entries[1] * o.entries[2], entries[0] * o.entries[1] + entries[1] * o.entries[3],
            entries[2] * o.entries[0] + entries[3] * o.entries[2], entries[2] * o.entries[1] + entries[3] * o.entries[3]};
  }
};

/// det[u v] for column vectors u, v.
template <class T>
T det_columns(const Vector2<T>& u, const Vector2<T>& v) {
  return u[0] * v[1] - v[0] * u[1];
}

}  // namespace defectwalk

#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "defectwalk/scalar.hpp"

namespace defectwalk {

/// ~100 significant decimal digits; used by the oracle's identity checks and
/// by the residual-decay fit, where double precision hits its floor.
using mp_real = boost::multiprecision::cpp_bin_float_100;
using mp_complex = boost::multiprecision::cpp_complex_100;

template <>
struct complex_for<mp_real> {
  using type = mp_complex;
};

template <>
struct real_for<mp_complex> {
  using type = mp_real;
};

inline Complex to_double(const mp_complex& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

inline Complex to_double(const Complex& z) { return z; }

}  // namespace defectwalk

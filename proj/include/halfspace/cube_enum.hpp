#pragma once

#include "halfspace/core.hpp"

#include <bit>
#include <cstdint>
#include <stdexcept>

namespace halfspace {

inline constexpr Index kMaxEnumerableDim = 22;

/// Visits all 2^d points of {±1}^d in Gray-code order, maintaining the
/// running margin v·x + tau incrementally. The callback receives
/// (bits, margin) where bit i set means x_i = +1.
template <class F>
void for_each_cube_margin(const Vector& v, double tau, F&& f) {
  const Index d = v.size();
  if (d > kMaxEnumerableDim) throw std::invalid_argument("cube enumeration: d too large");
  std::uint32_t bits = 0;  // start at the all -1 corner
  double margin = tau - v.sum();
  const std::uint64_t total = 1ULL << d;
  f(bits, margin);
  for (std::uint64_t t = 1; t < total; ++t) {
    const int j = std::countr_zero(t);
    bits ^= (1u << j);
    margin += (bits >> j) & 1u ? 2.0 * v[j] : -2.0 * v[j];
    f(bits, margin);
  }
}

}  // namespace halfspace

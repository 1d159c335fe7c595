#pragma once

#include "halfspace/core.hpp"
#include "halfspace/oracle.hpp"
#include "halfspace/synth.hpp"

#include <cmath>
#include <functional>

namespace halfspace::testing {

/// Adaptive Simpson quadrature, the test-side oracle for closed-form
/// antiderivatives.
inline double simpson(const std::function<double(double)>& f, double a, double b, double fa,
                      double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double quadrature(const std::function<double(double)>& f, double a, double b,
                         double tol = 1e-11) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

/// Monte-Carlo disagreement between a hypothesis and a planted concept.
inline double fresh_disagreement(const Halfspace& h, const Halfspace& planted, Index n,
                                 SeededRng& rng) {
  const auto pts = synth::sample_uniform(planted.dim(), n, rng);
  Index wrong = 0;
  for (const auto& p : pts)
    if (h.predict(p) != planted.predict(p)) ++wrong;
  return static_cast<double>(wrong) / static_cast<double>(n);
}

/// Random integer-weight halfspace for brute-force checks: weights in
/// [-max_w, max_w], bias in [-max_b, max_b].
inline Halfspace random_integer_halfspace(Index d, int max_w, int max_b, SeededRng& rng) {
  Vector v(d);
  bool nonzero = false;
  for (Index i = 0; i < d; ++i) {
    v[i] = static_cast<double>(static_cast<long>(rng.uniform_int(2 * max_w + 1)) - max_w);
    nonzero = nonzero || v[i] != 0.0;
  }
  if (!nonzero) v[0] = 1.0;
  const double tau = static_cast<double>(static_cast<long>(rng.uniform_int(2 * max_b + 1)) - max_b);
  return Halfspace(std::move(v), tau);
}

}  // namespace halfspace::testing

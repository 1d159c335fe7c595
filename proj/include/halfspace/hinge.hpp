#pragma once

#include "halfspace/core.hpp"

#include <span>
#include <utility>
#include <vector>

namespace halfspace::hinge {

/// Tail-recovery instance: head coefficients and bias are fixed, the unit
/// ball over the remaining coordinates is the feasible class.
struct TailProblem {
  Index d = 0;
  std::vector<Index> head_indices;  // H
  Vector v_head;                    // supported on H, length d
  double tau = 0.0;
  double eps = 0.0;

  TailProblem(Index d, std::vector<Index> H, Vector v_head, double tau, double eps);

  double phi(const CubePoint& x) const { return x.dot(v_head) + tau; }
};

/// Retains exactly the samples with |v_head·x + τ| ≤ ln(1/ε).
LabeledSet filter_band(const TailProblem& p, const LabeledSet& s);

/// value = Σ ReLU(ε − y(φ(x) + v·x)); subgradient = Σ −y·x over the strictly
/// active samples, with the H coordinates zeroed.
std::pair<double, Vector> hinge_objective(const TailProblem& p, const Vector& v,
                                          const LabeledSet& filtered);

struct RegularFitOptions {
  double c_const = 4.0;
  std::int64_t cap_samples = 1000000;
  Index iter_clamp = 200000;
  // deterministic stall stop inside the subgradient loop (0 disables):
  // quit when a window gains less than this fraction of ε
  Index stall_window = 1500;
  double stall_rel_improvement = 2.5e-2;
};

struct RegularFit {
  Halfspace hypothesis;
  Vector v_tail;
  bool head_only_fallback = false;  // filtered set came back empty
  Index filtered_size = 0;
  ParamValue samples;
  Index iterations = 0;
};

/// Filtered hinge minimization over {‖v‖₂ ≤ 1, v_H = 0}; returns
/// v̂_tail + v_head with the given bias.
RegularFit find_regular_coefficients(const TailProblem& p, const SampleOracle& data,
                                     SeededRng& rng, const RegularFitOptions& opts = {});

/// Shared engine: minimizes the filtered hinge objective on an explicit
/// already-filtered sample (matrix form), used by both noise models.
std::pair<Vector, Index> minimize_tail_hinge(const TailProblem& p, const Matrix& x,
                                             const Vector& y, const Vector& phi,
                                             const RegularFitOptions& opts);

}  // namespace halfspace::hinge

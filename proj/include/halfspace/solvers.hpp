#pragma once

#include "halfspace/core.hpp"

#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>

namespace halfspace::solvers {

struct Eval {
  double value = 0.0;
  Vector subgradient;
};

/// First-order oracle for a convex function. The returned subgradient must
/// satisfy f(y) >= f(x) + g·(y-x); the solvers spot-check this and flag
/// violations as a diagnostic.
struct ConvexObjective {
  Index dimension = 0;
  std::function<Eval(const Vector&)> eval;
  double lipschitz_bound = 1.0;
};

/// Raised when the ellipsoid matrix degenerates numerically instead of
/// letting NaNs propagate.
struct NumericalCollapse : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EllipsoidOptions {
  // Stop as soon as a feasible point with value <= stop_below is seen.
  double stop_below = -std::numeric_limits<double>::infinity();
  // Stop once the certified lower bound passes this level (LP infeasibility).
  double stop_when_lb_exceeds = std::numeric_limits<double>::infinity();
  // When false, a degenerate shape matrix ends the run with `collapsed` set
  // instead of raising NumericalCollapse.
  bool throw_on_collapse = true;
  // Optional per-iteration inspection hook (tests use it for the volume law).
  std::function<void(const Vector& center, const Matrix& shape)> trace;
};

struct EllipsoidResult {
  Vector point;
  double value = std::numeric_limits<double>::infinity();
  // certified bound on the ball optimum: every cut proves f* >= value − width
  double lower_bound = -std::numeric_limits<double>::infinity();
  Index iterations = 0;
  bool convexity_warning = false;
  bool collapsed = false;
};

/// Minimizes f over the ball ‖w‖₂ <= radius to additive accuracy tol.
/// Feasibility cuts use the ball normal, objective cuts the subgradient;
/// the iteration budget is ⌈2(n+1)² ln(radius·L/tol)⌉ + n².
EllipsoidResult ellipsoid_minimize(const ConvexObjective& f, double radius, double tol,
                                   const EllipsoidOptions& opts = {});

struct SubgradientOptions {
  // Deterministic early stop: give up when the best value has improved by
  // less than min_improvement over a trailing window (0 disables).
  Index stall_window = 0;
  double min_improvement = 0.0;
  // Certified stop for objectives with a known lower bound: once the best
  // value reaches lower_bound + gap_target the optimality gap is proven.
  double lower_bound = -std::numeric_limits<double>::infinity();
  double gap_target = 0.0;
};

struct SubgradientResult {
  Vector point;
  double value = std::numeric_limits<double>::infinity();
  Index iterations = 0;
};

/// Best-iterate projected subgradient descent: w ← Π(w − (radius/(L√t))·g),
/// started at Π(0). `project` must map onto a closed convex subset of the
/// radius ball.
SubgradientResult projected_subgradient(const ConvexObjective& f,
                                        const std::function<Vector(const Vector&)>& project,
                                        double radius, Index iters,
                                        const SubgradientOptions& opts = {});

/// Rows a·w >= b.
struct LinearConstraintSystem {
  Matrix a;  // r×n
  Vector b;  // r

  Index rows() const { return b.size(); }
  Index vars() const { return a.cols(); }
};

/// Phase-1 feasibility via the ellipsoid on max_r(b_r − a_r·w): returns a
/// point satisfying every row within slack·max(1,|b_r|), or nullopt when the
/// minimum violation over the ball provably exceeds the slack.
std::optional<Vector> lp_feasible(const LinearConstraintSystem& sys, double radius,
                                  double slack = 1e-9);

}  // namespace halfspace::solvers

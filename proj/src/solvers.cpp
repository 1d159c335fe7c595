#include "halfspace/solvers.hpp"

#include <algorithm>
#include <cmath>

namespace halfspace::solvers {

EllipsoidResult ellipsoid_minimize(const ConvexObjective& f, double radius, double tol,
                                   const EllipsoidOptions& opts) {
  if (!(tol > 0.0)) throw std::invalid_argument("ellipsoid_minimize: tol must be positive");
  if (!(radius > 0.0)) throw std::invalid_argument("ellipsoid_minimize: radius must be positive");
  const Index n = f.dimension;
  if (n < 1) throw std::invalid_argument("ellipsoid_minimize: dimension must be >= 1");
  const double L = std::max(f.lipschitz_bound, 1e-300);
  const double nd = static_cast<double>(n);

  const double budget_log = std::log(std::max(radius * L / tol, std::exp(1.0)));
  const Index budget =
      static_cast<Index>(std::ceil(2.0 * (nd + 1.0) * (nd + 1.0) * budget_log)) + n * n;

  Vector c = Vector::Zero(n);
  Matrix P = Matrix::Identity(n, n) * (radius * radius);

  EllipsoidResult out;
  out.point = c;

  // for the subgradient-inequality spot check
  Vector prev_x;
  double prev_v = 0.0;
  Vector prev_g;
  bool have_prev = false;

  Vector cut(n);
  for (Index it = 0; it < budget; ++it) {
    out.iterations = it + 1;
    if (opts.trace) opts.trace(c, P);

    const double cnorm = c.norm();
    bool objective_cut = false;
    double fc = 0.0;
    if (cnorm <= radius * (1.0 + 1e-12)) {
      Eval e = f.eval(c);
      fc = e.value;
      if (!std::isfinite(fc) || !e.subgradient.allFinite())
        throw NumericalCollapse("ellipsoid_minimize: non-finite objective");
      if (have_prev) {
        const double lin = prev_v + prev_g.dot(c - prev_x);
        if (fc < lin - 1e-9 * std::max(1.0, std::abs(prev_v))) out.convexity_warning = true;
      }
      prev_x = c;
      prev_v = fc;
      prev_g = e.subgradient;
      have_prev = true;

      if (fc < out.value) {
        out.value = fc;
        out.point = c;
      }
      if (out.value <= opts.stop_below) return out;
      const double gnorm = e.subgradient.norm();
      if (gnorm == 0.0) return out;  // flat point of a convex function
      cut = std::move(e.subgradient);
      objective_cut = true;
    } else {
      cut = c / cnorm;
    }

    Vector Pg = P.selfadjointView<Eigen::Lower>() * cut;
    const double gPg = cut.dot(Pg);
    if (!std::isfinite(gPg) || gPg <= 1e-30 * cut.squaredNorm()) {
      if (opts.throw_on_collapse)
        throw NumericalCollapse("ellipsoid_minimize: shape matrix degenerate");
      out.collapsed = true;
      return out;
    }
    const double width = std::sqrt(gPg);

    // every x in the ellipsoid satisfies f(x) >= fc − width, and ball optima
    // never leave the ellipsoid, so fc − width certifies a lower bound
    if (objective_cut) {
      out.lower_bound = std::max(out.lower_bound, fc - width);
      if (out.lower_bound > opts.stop_when_lb_exceeds) return out;
      if (std::isfinite(out.value) && out.value - out.lower_bound <= tol) return out;
    }

    // deep cut: slice at the certified level instead of through the center.
    // Objective cuts may discard everything above the incumbent value;
    // feasibility cuts may discard down to the supporting plane of the ball.
    double alpha = objective_cut ? (fc - out.value) / width : (cnorm - radius) / width;
    if (!(alpha >= 0.0)) alpha = 0.0;
    if (alpha >= 1.0) return out;  // the remaining set is empty: incumbent optimal
    alpha = std::min(alpha, 0.98);

    const Vector gn = Pg / width;
    const double tau = (1.0 + nd * alpha) / (nd + 1.0);
    c -= tau * gn;
    if (n == 1) {
      P *= 0.25 * (1.0 - alpha) * (1.0 - alpha);  // interval shrink
    } else {
      const double sigma = 2.0 * (1.0 + nd * alpha) / ((nd + 1.0) * (1.0 + alpha));
      const double delta = (nd * nd / (nd * nd - 1.0)) * (1.0 - alpha * alpha);
      P = delta * (P - sigma * (gn * gn.transpose()));
      P = ((P + P.transpose()) * 0.5).eval();
    }
  }
  return out;
}

SubgradientResult projected_subgradient(const ConvexObjective& f,
                                        const std::function<Vector(const Vector&)>& project,
                                        double radius, Index iters,
                                        const SubgradientOptions& opts) {
  if (iters < 1) throw std::invalid_argument("projected_subgradient: iters must be >= 1");
  if (!(radius > 0.0)) throw std::invalid_argument("projected_subgradient: radius must be positive");
  const double L = std::max(f.lipschitz_bound, 1e-300);

  Vector w = project(Vector::Zero(f.dimension));
  SubgradientResult out;
  out.point = w;

  double window_best = std::numeric_limits<double>::infinity();
  for (Index t = 1; t <= iters; ++t) {
    out.iterations = t;
    Eval e = f.eval(w);
    if (e.value < out.value) {
      out.value = e.value;
      out.point = w;
    }
    if (out.value <= opts.lower_bound + opts.gap_target) break;
    if (opts.stall_window > 0 && t % opts.stall_window == 0) {
      if (out.value > window_best - opts.min_improvement) break;
      window_best = out.value;
    }
    const double step = radius / (L * std::sqrt(static_cast<double>(t)));
    w = project(w - step * e.subgradient);
  }
  return out;
}

std::optional<Vector> lp_feasible(const LinearConstraintSystem& sys, double radius,
                                  double slack) {
  if (!(radius > 0.0)) throw std::invalid_argument("lp_feasible: radius must be positive");
  const Index n = sys.vars();
  if (sys.rows() == 0) return Vector::Zero(n);
  if (sys.a.rows() != sys.rows()) throw std::invalid_argument("lp_feasible: shape mismatch");
  if (!sys.a.allFinite() || !sys.b.allFinite())
    throw std::invalid_argument("lp_feasible: entries must be finite");

  const auto row_ok = [&](const Vector& w) {
    for (Index r = 0; r < sys.rows(); ++r) {
      const double s = slack * std::max(1.0, std::abs(sys.b[r]));
      if (sys.a.row(r).dot(w) < sys.b[r] - s) return false;
    }
    return true;
  };

  // phase-1: minimize the worst violation max_r (b_r − a_r·w)
  ConvexObjective worst;
  worst.dimension = n;
  double rowmax = 0.0;
  for (Index r = 0; r < sys.rows(); ++r) rowmax = std::max(rowmax, sys.a.row(r).norm());
  worst.lipschitz_bound = std::max(rowmax, 1e-12);
  worst.eval = [&sys](const Vector& w) {
    Vector viol = sys.b - sys.a * w;
    Index arg = 0;
    const double v = viol.maxCoeff(&arg);
    return Eval{v, -sys.a.row(arg).transpose()};
  };

  double accept = slack;
  for (Index r = 0; r < sys.rows(); ++r)
    accept = std::min(accept, slack * std::max(1.0, std::abs(sys.b[r])));

  EllipsoidOptions opts;
  opts.stop_below = 0.0;  // any strictly feasible point ends the search
  opts.stop_when_lb_exceeds = accept;  // certified min violation above slack
  // infeasible systems legitimately flatten the ellipsoid along the violated
  // direction; the best center then witnesses the violation level
  opts.throw_on_collapse = false;
  const EllipsoidResult res = ellipsoid_minimize(worst, radius, accept / 2.0, opts);
  if (row_ok(res.point)) return res.point;
  return std::nullopt;
}

}  // namespace halfspace::solvers

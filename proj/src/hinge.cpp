#include "halfspace/hinge.hpp"

#include "halfspace/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace halfspace::hinge {

TailProblem::TailProblem(Index d_, std::vector<Index> H, Vector vh, double tau_, double eps_)
    : d(d_), head_indices(std::move(H)), v_head(std::move(vh)), tau(tau_), eps(eps_) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("TailProblem: eps in (0,1)");
  if (v_head.size() != d) throw std::invalid_argument("TailProblem: v_head must have length d");
  std::vector<bool> in_head(static_cast<std::size_t>(d), false);
  for (Index i : head_indices) {
    if (i < 0 || i >= d) throw std::out_of_range("TailProblem: head index out of range");
    in_head[static_cast<std::size_t>(i)] = true;
  }
  for (Index i = 0; i < d; ++i)
    if (!in_head[static_cast<std::size_t>(i)] && v_head[i] != 0.0)
      throw std::invalid_argument("TailProblem: v_head supported off H");
}

LabeledSet filter_band(const TailProblem& p, const LabeledSet& s) {
  const double band = std::log(1.0 / p.eps);
  LabeledSet out(s.dim(), s.provenance());
  for (Index i = 0; i < s.size(); ++i)
    if (std::abs(p.phi(s.point(i))) <= band) out.push_back(s.point(i), s.label(i));
  return out;
}

std::pair<double, Vector> hinge_objective(const TailProblem& p, const Vector& v,
                                          const LabeledSet& filtered) {
  if (v.size() != p.d) throw std::invalid_argument("hinge_objective: dimension mismatch");
  double value = 0.0;
  Vector g = Vector::Zero(p.d);
  for (Index i = 0; i < filtered.size(); ++i) {
    const CubePoint& x = filtered.point(i);
    const double y = filtered.label(i);
    const double slack = p.eps - y * (p.phi(x) + x.dot(v));
    if (slack > 0.0) {
      value += slack;
      for (Index c = 0; c < p.d; ++c) g[c] -= y * x.get(c);
    }
  }
  for (Index i : p.head_indices) g[i] = 0.0;
  return {value, std::move(g)};
}

std::pair<Vector, Index> minimize_tail_hinge(const TailProblem& p, const Matrix& x,
                                             const Vector& y, const Vector& phi,
                                             const RegularFitOptions& opts) {
  const Index n = y.size();
  const Index d = p.d;
  const double eps = p.eps;
  const double inv_n = 1.0 / static_cast<double>(n);

  std::vector<char> head_mask(static_cast<std::size_t>(d), 0);
  for (Index i : p.head_indices) head_mask[static_cast<std::size_t>(i)] = 1;

  solvers::ConvexObjective obj;
  obj.dimension = d;
  obj.lipschitz_bound = std::sqrt(static_cast<double>(d));
  Vector margins(n), act(n);
  obj.eval = [&](const Vector& v) {
    margins.noalias() = x * v;
    margins += phi;
    double total = 0.0;
    for (Index i = 0; i < n; ++i) {
      const double slack = eps - y[i] * margins[i];
      if (slack > 0.0) {
        total += slack;
        act[i] = -y[i];
      } else {
        act[i] = 0.0;
      }
    }
    Vector g = (x.transpose() * act) * inv_n;
    for (Index i = 0; i < d; ++i)
      if (head_mask[static_cast<std::size_t>(i)]) g[i] = 0.0;
    return solvers::Eval{total * inv_n, std::move(g)};
  };

  const auto project = [&](const Vector& v) {
    Vector out = v;
    for (Index i = 0; i < d; ++i)
      if (head_mask[static_cast<std::size_t>(i)]) out[i] = 0.0;
    const double norm = out.norm();
    if (norm > 1.0) out /= norm;
    return out;
  };

  // iteration budget d·L²/δ² with δ = ε|S'|/4 reduces to 16 d²/ε²
  const double budget = 16.0 * static_cast<double>(d) * static_cast<double>(d) / (eps * eps);
  const Index iters = static_cast<Index>(
      std::min(std::ceil(budget), static_cast<double>(opts.iter_clamp)));

  solvers::SubgradientOptions sopts;
  sopts.stall_window = opts.stall_window;
  sopts.min_improvement = opts.stall_rel_improvement * eps;
  // the loss is nonnegative, so reaching ε/4 certifies the gap δ/|S'| = ε/4
  sopts.lower_bound = 0.0;
  sopts.gap_target = eps / 4.0;

  const auto res = solvers::projected_subgradient(obj, project, 1.0, std::max<Index>(iters, 1), sopts);
  return {res.point, res.iterations};
}

RegularFit find_regular_coefficients(const TailProblem& p, const SampleOracle& data,
                                     SeededRng& rng, const RegularFitOptions& opts) {
  const double C = opts.c_const;
  const double m_formula = C * std::pow(static_cast<double>(p.d) / p.eps, C);
  const Index m = static_cast<Index>(
      std::max(1.0, std::min(m_formula, static_cast<double>(opts.cap_samples))));

  const LabeledSet s = data.draw(m, rng);
  const LabeledSet filt = filter_band(p, s);

  RegularFit fit{Halfspace::constant_plus_one(p.d), Vector::Zero(p.d)};
  fit.samples = ParamValue{m_formula, static_cast<double>(m)};
  fit.filtered_size = filt.size();

  if (filt.empty()) {
    fit.head_only_fallback = true;
    const bool degenerate = p.v_head.isZero(0.0) && p.tau == 0.0;
    fit.hypothesis = degenerate ? Halfspace::constant_plus_one(p.d) : Halfspace(p.v_head, p.tau);
    return fit;
  }

  const Matrix x = filt.to_matrix();
  const Vector y = filt.label_vector();
  const Vector phi = (x * p.v_head).array() + p.tau;

  auto [v_tail, iters] = minimize_tail_hinge(p, x, y, phi, opts);
  fit.v_tail = v_tail;
  fit.iterations = iters;
  Vector w = v_tail + p.v_head;
  fit.hypothesis = (w.isZero(0.0) && p.tau == 0.0) ? Halfspace::constant_plus_one(p.d)
                                                   : Halfspace(std::move(w), p.tau);
  return fit;
}

}  // namespace halfspace::hinge

#include "halfspace/robust.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace halfspace::robust {

namespace {

constexpr double kMomentBound = 8.0;

// Largest eigenpair of a symmetric PSD matrix by power iteration, relative
// tolerance 1e-6 on the eigenvalue. Deterministic start.
std::pair<double, Vector> top_eigenpair(const Matrix& g) {
  const Index d = g.rows();
  Vector u = Vector::Ones(d);
  for (Index i = 0; i < d; ++i) u[i] += 1e-3 * static_cast<double>(i % 17);
  u.normalize();
  double lambda = 0.0;
  for (int it = 0; it < 5000; ++it) {
    Vector next = g.selfadjointView<Eigen::Lower>() * u;
    const double norm = next.norm();
    if (norm == 0.0) return {0.0, u};
    next /= norm;
    const double estimate = next.dot(g.selfadjointView<Eigen::Lower>() * next);
    const bool done = it > 2 && std::abs(estimate - lambda) <= 1e-6 * std::max(estimate, 1e-12);
    lambda = estimate;
    u = std::move(next);
    if (done) break;
  }
  return {lambda, u};
}

}  // namespace

OutlierResult outlier_remove(const std::vector<CubePoint>& pts, int r) {
  if (r != 1) throw Unsupported("outlier_remove: only r = 1 is supported");
  if (pts.empty()) throw std::invalid_argument("outlier_remove: empty input");
  const Index m = static_cast<Index>(pts.size());
  const Index d = pts.front().dim();

  Matrix x(m, d);
  for (Index i = 0; i < m; ++i)
    for (Index c = 0; c < d; ++c) x(i, c) = static_cast<double>(pts[static_cast<std::size_t>(i)].get(c));

  Matrix gram = Matrix::Zero(d, d);
  gram.selfadjointView<Eigen::Lower>().rankUpdate(x.transpose());

  std::vector<Index> kept(static_cast<std::size_t>(m));
  std::iota(kept.begin(), kept.end(), Index{0});

  OutlierResult out;
  const double inv_m = 1.0 / static_cast<double>(m);
  double lambda = 0.0;
  while (true) {
    auto [lam, u] = top_eigenpair(gram * inv_m);
    lambda = lam;
    if (lambda <= kMomentBound || kept.empty()) break;
    ++out.report.iterations;

    // scores (u·x)² over the kept points, largest first, ties by index
    std::vector<std::pair<double, Index>> scored;
    scored.reserve(kept.size());
    for (Index i : kept) {
      const double s = x.row(i).dot(u);
      scored.emplace_back(s * s, i);
    }
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    const Index chunk = static_cast<Index>(
        std::ceil(0.001 * static_cast<double>(kept.size())));
    const Index removing = std::min<Index>(chunk, static_cast<Index>(kept.size()));

    std::vector<Index> gone;
    gone.reserve(static_cast<std::size_t>(removing));
    for (Index j = 0; j < removing; ++j) {
      const Index i = scored[static_cast<std::size_t>(j)].second;
      gone.push_back(i);
      gram.selfadjointView<Eigen::Lower>().rankUpdate(x.row(i).transpose(), -1.0);
    }
    std::sort(gone.begin(), gone.end());
    std::vector<Index> next;
    next.reserve(kept.size() - gone.size());
    std::set_difference(kept.begin(), kept.end(), gone.begin(), gone.end(),
                        std::back_inserter(next));
    kept = std::move(next);
    out.report.removed_count += removing;
  }
  out.report.final_top_moment = lambda;
  out.kept_indices = std::move(kept);
  return out;
}

hinge::RegularFit find_regular_contaminated(const hinge::TailProblem& p,
                                            const SampleOracle& data, SeededRng& rng,
                                            const hinge::RegularFitOptions& opts) {
  const double C = opts.c_const;
  const double m_formula = C * std::pow(static_cast<double>(p.d) / p.eps, C);
  const Index m = static_cast<Index>(
      std::max(1.0, std::min(m_formula, static_cast<double>(opts.cap_samples))));

  const LabeledSet s = data.draw(m, rng);
  std::vector<CubePoint> pts;
  pts.reserve(static_cast<std::size_t>(s.size()));
  for (Index i = 0; i < s.size(); ++i) pts.push_back(s.point(i));
  const OutlierResult filtered = outlier_remove(pts);

  const double phi_max = std::pow(C, 0.1) / std::sqrt(p.eps);
  LabeledSet band(s.dim(), s.provenance());
  for (Index i : filtered.kept_indices)
    if (std::abs(p.phi(s.point(i))) <= phi_max) band.push_back(s.point(i), s.label(i));

  hinge::RegularFit fit{Halfspace::constant_plus_one(p.d), Vector::Zero(p.d)};
  fit.samples = ParamValue{m_formula, static_cast<double>(m)};
  fit.filtered_size = band.size();

  if (band.empty()) {
    fit.head_only_fallback = true;
    const bool degenerate = p.v_head.isZero(0.0) && p.tau == 0.0;
    fit.hypothesis = degenerate ? Halfspace::constant_plus_one(p.d) : Halfspace(p.v_head, p.tau);
    return fit;
  }

  const Matrix x = band.to_matrix();
  const Vector y = band.label_vector();
  const Vector phi = (x * p.v_head).array() + p.tau;

  // ReLU(1 − y·margin/ε) rescales the band hinge by 1/ε; minimizers coincide.
  auto [v_tail, iters] = hinge::minimize_tail_hinge(p, x, y, phi, opts);
  fit.v_tail = v_tail;
  fit.iterations = iters;
  Vector w = v_tail + p.v_head;
  fit.hypothesis = (w.isZero(0.0) && p.tau == 0.0) ? Halfspace::constant_plus_one(p.d)
                                                   : Halfspace(std::move(w), p.tau);
  return fit;
}

}  // namespace halfspace::robust

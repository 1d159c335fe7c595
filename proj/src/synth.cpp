#include "halfspace/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace halfspace::synth {

std::vector<CubePoint> sample_uniform(Index d, Index n, SeededRng& rng) {
  if (d < 1 || n < 1) throw std::invalid_argument("sample_uniform: d, n >= 1");
  std::vector<CubePoint> out;
  out.reserve(static_cast<std::size_t>(n));
  const Index words = (d + 63) / 64;
  for (Index i = 0; i < n; ++i) {
    CubePoint p(d);
    for (Index w = 0; w < words; ++w) {
      std::uint64_t bits = rng.next_u64();
      const Index base = w * 64;
      const Index upto = std::min<Index>(64, d - base);
      for (Index b = 0; b < upto; ++b) p.set(base + b, (bits >> b) & 1ULL ? 1 : -1);
    }
    out.push_back(std::move(p));
  }
  return out;
}

LabeledSet label_with(const Halfspace& h, const std::vector<CubePoint>& pts) {
  if (pts.empty()) return LabeledSet(h.dim());
  LabeledSet out(pts.front().dim());
  for (const auto& p : pts) out.push_back(p, predict(h, p));
  return out;
}

LabeledSample adversary_draw(const std::string& adversary_id, Index d, SeededRng& rng,
                             const std::optional<Halfspace>& planted) {
  if (adversary_id == "corner_cluster") {
    CubePoint corner(d);
    for (Index i = 0; i < d; ++i) corner.set(i, 1);
    if (!planted)
      throw std::invalid_argument("corner_cluster adversary needs the planted halfspace");
    const int y = -predict(*planted, corner);
    return {std::move(corner), y};
  }
  if (adversary_id == "anti_dictator") {
    // Uniform point, label opposing the first coordinate.
    CubePoint p = sample_uniform(d, 1, rng).front();
    return {p, -p.get(0)};
  }
  if (adversary_id == "dense_direction") {
    CubePoint p = sample_uniform(d, 1, rng).front();
    const Index lead = static_cast<Index>(std::ceil(std::sqrt(static_cast<double>(d))));
    for (Index i = 0; i < std::min(lead, d); ++i) p.set(i, 1);
    return {std::move(p), -1};
  }
  throw std::invalid_argument("unknown adversary '" + adversary_id + "'");
}

LabeledSet apply_noise(const LabeledSet& s, const NoiseSpec& spec, SeededRng& rng,
                       const std::optional<Halfspace>& planted) {
  if (!(spec.rate >= 0.0 && spec.rate < 1.0)) throw std::invalid_argument("NoiseSpec: rate in [0,1)");
  LabeledSet out = s;
  switch (spec.kind) {
    case NoiseSpec::Kind::None:
      return out;
    case NoiseSpec::Kind::RandomFlip: {
      for (Index i = 0; i < out.size(); ++i)
        if (rng.bernoulli(spec.rate)) out.set_label(i, -out.label(i));
      out.set_provenance({Provenance::Kind::LabelNoise, spec.rate});
      return out;
    }
    case NoiseSpec::Kind::BoundaryFlip: {
      if (!planted) throw std::invalid_argument("BoundaryFlip needs the planted halfspace");
      const Index flips = static_cast<Index>(std::floor(spec.rate * static_cast<double>(s.size())));
      std::vector<Index> order(static_cast<std::size_t>(s.size()));
      std::iota(order.begin(), order.end(), Index{0});
      std::vector<double> margin(static_cast<std::size_t>(s.size()));
      for (Index i = 0; i < s.size(); ++i)
        margin[static_cast<std::size_t>(i)] = std::abs(planted->margin(s.point(i)));
      std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
        return margin[static_cast<std::size_t>(a)] < margin[static_cast<std::size_t>(b)];
      });
      for (Index j = 0; j < flips; ++j) {
        const Index i = order[static_cast<std::size_t>(j)];
        out.set_label(i, -out.label(i));
      }
      out.set_provenance({Provenance::Kind::LabelNoise, spec.rate});
      return out;
    }
    case NoiseSpec::Kind::ObliviousContaminate: {
      LabeledSet next(s.dim(), {Provenance::Kind::Contaminated, spec.rate});
      for (Index i = 0; i < s.size(); ++i) {
        if (rng.bernoulli(spec.rate)) {
          LabeledSample adv = adversary_draw(spec.adversary_id, s.dim(), rng, planted);
          next.push_back(std::move(adv.x), adv.y);
        } else {
          next.push_back(s.point(i), s.label(i));
        }
      }
      return next;
    }
  }
  return out;
}

Halfspace random_regular_halfspace(Index d, SeededRng& rng) {
  if (d < 2) throw std::invalid_argument("random_regular_halfspace: d >= 2");
  const double bound = 2.0 / std::sqrt(static_cast<double>(d));
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Vector v(d);
    for (Index i = 0; i < d; ++i) v[i] = rng.normal();
    const double n = v.norm();
    if (n == 0.0) continue;
    v /= n;
    if (regularity_ratio(v) <= bound) return Halfspace(std::move(v), rng.uniform(-1.0, 1.0));
  }
  throw std::runtime_error("random_regular_halfspace: rejection sampling did not converge");
}

LabeledSet SyntheticOracle::draw(Index n, SeededRng& rng) const {
  const LabeledSet clean = label_with(planted_, sample_uniform(planted_.dim(), n, rng));
  return apply_noise(clean, noise_, rng, planted_);
}

Halfspace planted_sparse_halfspace(Index d, Index k, SeededRng& rng) {
  if (k < 1 || k > d) throw std::invalid_argument("planted_sparse_halfspace: 1 <= k <= d");
  // uniformly chosen support via partial Fisher-Yates
  std::vector<Index> idx(static_cast<std::size_t>(d));
  std::iota(idx.begin(), idx.end(), Index{0});
  for (Index i = 0; i < k; ++i) {
    const Index j = i + static_cast<Index>(rng.uniform_int(static_cast<std::uint64_t>(d - i)));
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  }
  const double wmax = std::pow(2.0, static_cast<double>(k));
  Vector v = Vector::Zero(d);
  for (Index i = 0; i < k; ++i) {
    const std::uint64_t mag = 1 + rng.uniform_int(static_cast<std::uint64_t>(wmax));
    v[idx[static_cast<std::size_t>(i)]] = static_cast<double>(mag) * rng.rademacher();
  }
  const std::uint64_t tau_range = static_cast<std::uint64_t>(static_cast<double>(k) * wmax);
  const double tau = static_cast<double>(rng.uniform_int(2 * tau_range + 1)) - static_cast<double>(tau_range);
  return Halfspace(std::move(v), tau);
}

}  // namespace halfspace::synth

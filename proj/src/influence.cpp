#include "halfspace/influence.hpp"

#include "halfspace/cube_enum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace halfspace::influence {

ChowEstimate estimate_chow(const LabeledSet& s) {
  if (s.empty()) throw std::invalid_argument("estimate_chow: empty set");
  const Index d = s.dim();
  std::vector<std::int64_t> acc(static_cast<std::size_t>(d), 0);
  for (Index r = 0; r < s.size(); ++r) {
    const int y = s.label(r);
    const CubePoint& p = s.point(r);
    for (Index i = 0; i < d; ++i) acc[static_cast<std::size_t>(i)] += y * p.get(i);
  }
  ChowEstimate out;
  out.sample_count = s.size();
  out.values.resize(d);
  for (Index i = 0; i < d; ++i)
    out.values[i] = static_cast<double>(acc[static_cast<std::size_t>(i)]) /
                    static_cast<double>(s.size());
  return out;
}

std::vector<Index> top_k_by_magnitude(const Vector& v, Index k) {
  if (k > v.size()) throw std::invalid_argument("top_k: k > d");
  std::vector<Index> order(static_cast<std::size_t>(v.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    const double ma = std::abs(v[a]), mb = std::abs(v[b]);
    if (ma != mb) return ma > mb;
    return a < b;
  });
  order.resize(static_cast<std::size_t>(k));
  return order;
}

std::vector<Index> top_k_indices(const ChowEstimate& c, Index k) {
  return top_k_by_magnitude(c.values, k);
}

double exact_influence(const Halfspace& h, Index i) {
  const Index d = h.dim();
  if (d > kMaxEnumerableDim) throw std::invalid_argument("exact_influence: d too large");
  if (i < 0 || i >= d) throw std::out_of_range("exact_influence: index out of range");
  const double vi = h.weights()[i];
  std::uint64_t disagree = 0;
  for_each_cube_margin(h.weights(), h.bias(), [&](std::uint32_t bits, double m) {
    const double xi = (bits >> i) & 1u ? 1.0 : -1.0;
    const double flipped = m - 2.0 * xi * vi;
    if (sign_pm(m) != sign_pm(flipped)) ++disagree;
  });
  return static_cast<double>(disagree) / static_cast<double>(1ULL << d);
}

Vector exact_chow(const Halfspace& h) {
  const Index d = h.dim();
  if (d > kMaxEnumerableDim) throw std::invalid_argument("exact_chow: d too large");
  std::vector<std::int64_t> acc(static_cast<std::size_t>(d), 0);
  for_each_cube_margin(h.weights(), h.bias(), [&](std::uint32_t bits, double m) {
    const int g = sign_pm(m);
    for (Index i = 0; i < d; ++i) acc[static_cast<std::size_t>(i)] += ((bits >> i) & 1u) ? g : -g;
  });
  Vector out(d);
  for (Index i = 0; i < d; ++i)
    out[i] = static_cast<double>(acc[static_cast<std::size_t>(i)]) /
             static_cast<double>(1ULL << d);
  return out;
}

Vector swap_vector(const Vector& v, Index i, Index j) {
  if (i < 0 || i >= v.size() || j < 0 || j >= v.size())
    throw std::out_of_range("swap_vector: index out of range");
  Vector out = v;
  if (i == j) return out;
  out[i] = (v[i] < 0 ? -1.0 : 1.0) * std::abs(v[j]);
  out[j] = (v[j] < 0 ? -1.0 : 1.0) * std::abs(v[i]);
  return out;
}

Vector permute_abs(const Vector& v, std::span<const Index> pi) {
  const Index d = v.size();
  if (static_cast<Index>(pi.size()) != d) throw std::invalid_argument("permute_abs: size mismatch");
  std::vector<bool> seen(static_cast<std::size_t>(d), false);
  for (Index i : pi) {
    if (i < 0 || i >= d || seen[static_cast<std::size_t>(i)])
      throw std::invalid_argument("permute_abs: not a bijection");
    seen[static_cast<std::size_t>(i)] = true;
  }
  Vector out(d);
  for (Index i = 0; i < d; ++i)
    out[i] = (v[i] < 0 ? -1.0 : 1.0) * std::abs(v[pi[static_cast<std::size_t>(i)]]);
  return out;
}

std::vector<Index> build_swap_permutation(const Vector& v, std::span<const Index> hat_indices) {
  const Index d = v.size();
  const Index k = static_cast<Index>(hat_indices.size());
  if (k > d) throw std::invalid_argument("build_swap_permutation: too many hat indices");
  {
    std::vector<bool> seen(static_cast<std::size_t>(d), false);
    for (Index i : hat_indices) {
      if (i < 0 || i >= d || seen[static_cast<std::size_t>(i)])
        throw std::invalid_argument("build_swap_permutation: hat indices must be distinct");
      seen[static_cast<std::size_t>(i)] = true;
    }
  }
  const std::vector<Index> top = top_k_by_magnitude(v, k);

  // pos[j] tracks where the magnitude that started at top[j] currently sits.
  std::vector<Index> pos = top;
  std::vector<Index> perm(static_cast<std::size_t>(d));
  std::iota(perm.begin(), perm.end(), Index{0});

  for (Index j = 0; j < k; ++j) {
    const Index a = pos[static_cast<std::size_t>(j)];
    const Index b = hat_indices[static_cast<std::size_t>(j)];
    if (a != b) {
      std::swap(perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(b)]);
      for (Index l = 0; l < k; ++l)
        if (pos[static_cast<std::size_t>(l)] == b) pos[static_cast<std::size_t>(l)] = a;
    }
    pos[static_cast<std::size_t>(j)] = b;
  }
  return perm;
}

}  // namespace halfspace::influence

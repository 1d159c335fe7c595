#include "halfspace/oracle.hpp"

#include "halfspace/cube_enum.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <set>
#include <stdexcept>

namespace halfspace::oracle {

double exact_error(const Halfspace& h, const Halfspace& f) {
  const Index d = h.dim();
  if (d != f.dim()) throw std::invalid_argument("exact_error: dimension mismatch");
  if (d > kMaxEnumerableDim) throw std::invalid_argument("exact_error: d too large");
  const Vector& vh = h.weights();
  const Vector& vf = f.weights();
  std::uint32_t bits = 0;
  double mh = h.bias() - vh.sum();
  double mf = f.bias() - vf.sum();
  std::uint64_t disagree = (sign_pm(mh) != sign_pm(mf)) ? 1 : 0;
  const std::uint64_t total = 1ULL << d;
  for (std::uint64_t t = 1; t < total; ++t) {
    const int j = std::countr_zero(t);
    bits ^= (1u << j);
    const double dir = (bits >> j) & 1u ? 2.0 : -2.0;
    mh += dir * vh[j];
    mf += dir * vf[j];
    if (sign_pm(mh) != sign_pm(mf)) ++disagree;
  }
  return static_cast<double>(disagree) / static_cast<double>(total);
}

SigmaReg::SigmaReg(const Vector& u) : dim_(u.size()) {
  if (dim_ > kMaxEnumerableDim) throw std::invalid_argument("SigmaReg: tail dimension too large");
  if (std::abs(u.norm() - 1.0) > 1e-9) throw std::invalid_argument("SigmaReg: u must be unit norm");
  sorted_sums_.reserve(1ULL << dim_);
  for_each_cube_margin(u, 0.0, [&](std::uint32_t, double m) { sorted_sums_.push_back(m); });
  std::sort(sorted_sums_.begin(), sorted_sums_.end());
}

double SigmaReg::operator()(double z) const {
  // sign(z + s) = +1 iff s >= -z under the sign(0)=+1 convention
  const auto it = std::lower_bound(sorted_sums_.begin(), sorted_sums_.end(), -z);
  const auto n = static_cast<double>(sorted_sums_.size());
  const auto plus = static_cast<double>(sorted_sums_.end() - it);
  return (2.0 * plus - n) / n;
}

double exact_sigma_reg(const Vector& u, double z) { return SigmaReg(u)(z); }

namespace {

// Enumerates integer-weight halfspaces over {±1}^h with an odd doubled bias,
// so no margin is ever zero, and collects the realizable dichotomies. Weight
// range 8 is generous for h <= 4 (tests pin the known counts 14/104/1882).
std::vector<std::uint32_t> enumerate_dichotomies(int h) {
  if (h == 0) return {0u, 1u};
  const int patterns = 1 << h;
  const int wrange = 8;
  const int base = 2 * wrange + 1;
  const int brange = 2 * wrange * h + 1;
  std::set<std::uint32_t> seen;

  long total = 1;
  for (int i = 0; i < h; ++i) total *= base;

  std::array<int, 4> w{};
  std::array<int, 16> dot{};
  for (long c = 0; c < total; ++c) {
    long t = c;
    for (int i = 0; i < h; ++i) {
      w[static_cast<std::size_t>(i)] = static_cast<int>(t % base) - wrange;
      t /= base;
    }
    for (int p = 0; p < patterns; ++p) {
      int m = 0;
      for (int i = 0; i < h; ++i)
        m += 2 * w[static_cast<std::size_t>(i)] * ((p >> i) & 1 ? 1 : -1);
      dot[static_cast<std::size_t>(p)] = m;
    }
    for (int b = -brange; b <= brange; b += 2) {
      std::uint32_t mask = 0;
      for (int p = 0; p < patterns; ++p)
        if (dot[static_cast<std::size_t>(p)] + b > 0) mask |= 1u << p;
      seen.insert(mask);
    }
  }
  return std::vector<std::uint32_t>(seen.begin(), seen.end());
}

}  // namespace

const std::vector<std::uint32_t>& realizable_dichotomies(int h) {
  if (h < 0 || h > 4) throw std::invalid_argument("realizable_dichotomies: h in [0,4]");
  static std::array<std::vector<std::uint32_t>, 5> cache;
  static std::array<std::once_flag, 5> flags;
  std::call_once(flags[static_cast<std::size_t>(h)],
                 [h] { cache[static_cast<std::size_t>(h)] = enumerate_dichotomies(h); });
  return cache[static_cast<std::size_t>(h)];
}

double exact_opt_sparse(const LabeledSet& s, std::span<const Index> H) {
  if (H.size() > 4) throw std::invalid_argument("exact_opt_sparse: |H| <= 4");
  if (s.empty()) throw std::invalid_argument("exact_opt_sparse: empty set");
  const int h = static_cast<int>(H.size());
  const int patterns = 1 << h;
  std::array<std::int64_t, 16> n_plus{}, n_minus{};
  for (Index r = 0; r < s.size(); ++r) {
    int p = 0;
    for (int i = 0; i < h; ++i)
      if (s.point(r).get(H[static_cast<std::size_t>(i)]) > 0) p |= 1 << i;
    (s.label(r) > 0 ? n_plus : n_minus)[static_cast<std::size_t>(p)] += 1;
  }
  std::int64_t best = s.size();
  for (std::uint32_t mask : realizable_dichotomies(h)) {
    std::int64_t err = 0;
    for (int p = 0; p < patterns; ++p)
      err += (mask >> p) & 1u ? n_minus[static_cast<std::size_t>(p)]
                              : n_plus[static_cast<std::size_t>(p)];
    best = std::min(best, err);
  }
  return static_cast<double>(best) / static_cast<double>(s.size());
}

}  // namespace halfspace::oracle

#include "halfspace/core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace halfspace {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

SeededRng::SeededRng(std::uint64_t seed) : seed_(seed) {
  std::uint64_t x = seed;
  for (auto& w : s_) w = splitmix64(x);
}

std::uint64_t SeededRng::next_u64() {
  auto rotl = [](std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); };
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double SeededRng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SeededRng::uniform(double a, double b) { return a + (b - a) * uniform01(); }

double SeededRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform01() - 1.0;
    v = 2.0 * uniform01() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double m = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * m;
  has_spare_ = true;
  return u * m;
}

std::uint64_t SeededRng::uniform_int(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_int: n must be positive");
  // Rejection sampling to avoid modulo bias.
  const std::uint64_t limit = n * (~0ULL / n);
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return x % n;
}

int SeededRng::rademacher() { return (next_u64() & 1ULL) ? 1 : -1; }

bool SeededRng::bernoulli(double p) { return uniform01() < p; }

SeededRng SeededRng::split(std::uint64_t index) const {
  std::uint64_t x = seed_ ^ (0xa0761d6478bd642fULL + index * 0xe7037ed1a0b428dbULL);
  return SeededRng(splitmix64(x));
}

CubePoint::CubePoint(Index d) : d_(d) {
  if (d < 1) throw std::invalid_argument("CubePoint: dimension must be >= 1");
  words_.assign(static_cast<std::size_t>((d + 63) / 64), 0ULL);
}

CubePoint CubePoint::from_signs(std::span<const int> signs) {
  CubePoint p(static_cast<Index>(signs.size()));
  for (Index i = 0; i < p.d_; ++i) {
    const int s = signs[static_cast<std::size_t>(i)];
    if (s != 1 && s != -1) throw std::invalid_argument("CubePoint: coordinates must be ±1");
    p.set(i, s);
  }
  return p;
}

int CubePoint::get(Index i) const {
  return (words_[static_cast<std::size_t>(i >> 6)] >> (i & 63)) & 1ULL ? 1 : -1;
}

void CubePoint::set(Index i, int sign) {
  const std::uint64_t mask = 1ULL << (i & 63);
  auto& w = words_[static_cast<std::size_t>(i >> 6)];
  if (sign >= 0)
    w |= mask;
  else
    w &= ~mask;
}

void CubePoint::flip(Index i) { words_[static_cast<std::size_t>(i >> 6)] ^= 1ULL << (i & 63); }

double CubePoint::dot(const Vector& v) const {
  if (v.size() != d_) throw std::invalid_argument("CubePoint::dot: dimension mismatch");
  // v·x = 2·Σ_{bits set} v_i − Σ_i v_i
  double set_sum = 0.0;
  for (std::size_t wi = 0; wi < words_.size(); ++wi) {
    std::uint64_t w = words_[wi];
    while (w) {
      const int b = std::countr_zero(w);
      set_sum += v[static_cast<Index>(wi * 64 + static_cast<std::size_t>(b))];
      w &= w - 1;
    }
  }
  return 2.0 * set_sum - v.sum();
}

std::int64_t CubePoint::dot_pm1(const CubePoint& weights) const {
  if (weights.d_ != d_) throw std::invalid_argument("CubePoint::dot_pm1: dimension mismatch");
  std::int64_t agree = 0;
  for (std::size_t wi = 0; wi < words_.size(); ++wi) {
    std::uint64_t x = ~(words_[wi] ^ weights.words_[wi]);
    if (wi + 1 == words_.size() && (d_ & 63)) x &= (1ULL << (d_ & 63)) - 1;
    agree += std::popcount(x);
  }
  return 2 * agree - d_;
}

std::string Provenance::tag() const {
  switch (kind) {
    case Kind::Clean:
      return "Clean";
    case Kind::LabelNoise:
      return "LabelNoise:" + std::to_string(rate);
    case Kind::Contaminated:
      return "Contaminated:" + std::to_string(rate);
  }
  return "Clean";
}

Provenance Provenance::parse(const std::string& tag) {
  Provenance p;
  if (tag == "Clean") return p;
  const auto colon = tag.find(':');
  const std::string head = tag.substr(0, colon);
  const double rate = colon == std::string::npos ? 0.0 : std::stod(tag.substr(colon + 1));
  if (head == "LabelNoise") {
    p.kind = Kind::LabelNoise;
  } else if (head == "Contaminated") {
    p.kind = Kind::Contaminated;
  } else {
    throw std::invalid_argument("Provenance: unknown tag '" + tag + "'");
  }
  p.rate = rate;
  return p;
}

void LabeledSet::push_back(CubePoint x, int y) {
  if (y != 1 && y != -1) throw std::invalid_argument("LabeledSet: label must be ±1");
  if (x.dim() != d_) throw std::invalid_argument("LabeledSet: dimension mismatch");
  xs_.push_back(std::move(x));
  ys_.push_back(static_cast<std::int8_t>(y));
}

void LabeledSet::set_label(Index i, int y) {
  if (y != 1 && y != -1) throw std::invalid_argument("LabeledSet: label must be ±1");
  ys_[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(y);
}

Matrix LabeledSet::to_matrix() const {
  Matrix m(size(), d_);
  for (Index r = 0; r < size(); ++r) {
    const CubePoint& p = xs_[static_cast<std::size_t>(r)];
    for (Index c = 0; c < d_; ++c) m(r, c) = static_cast<double>(p.get(c));
  }
  return m;
}

Matrix LabeledSet::restrict_matrix(std::span<const Index> H) const {
  Matrix m(size(), static_cast<Index>(H.size()));
  for (Index r = 0; r < size(); ++r) {
    const CubePoint& p = xs_[static_cast<std::size_t>(r)];
    for (std::size_t c = 0; c < H.size(); ++c) {
      if (H[c] < 0 || H[c] >= d_) throw std::out_of_range("restrict_matrix: index out of range");
      m(r, static_cast<Index>(c)) = static_cast<double>(p.get(H[c]));
    }
  }
  return m;
}

Vector LabeledSet::label_vector() const {
  Vector y(size());
  for (Index i = 0; i < size(); ++i) y[i] = static_cast<double>(ys_[static_cast<std::size_t>(i)]);
  return y;
}

Halfspace::Halfspace(Vector weights, double bias) : w_(std::move(weights)), tau_(bias) {
  if (!w_.allFinite() || !std::isfinite(tau_))
    throw std::invalid_argument("Halfspace: weights and bias must be finite");
  if (w_.size() < 1) throw std::invalid_argument("Halfspace: dimension must be >= 1");
  if (w_.isZero(0.0) && tau_ == 0.0)
    throw std::invalid_argument("Halfspace: all-zero weights with zero bias rejected");
}

Halfspace Halfspace::constant_plus_one(Index d) { return Halfspace(Vector::Zero(d), 1.0); }

int predict(const Halfspace& h, const CubePoint& x) {
  if (h.dim() != x.dim()) throw std::invalid_argument("predict: dimension mismatch");
  return h.predict(x);
}

double empirical_error(const Halfspace& h, const LabeledSet& s) {
  if (s.empty()) throw std::invalid_argument("empirical_error: empty set");
  if (h.dim() != s.dim()) throw std::invalid_argument("empirical_error: dimension mismatch");
  Index wrong = 0;
  for (Index i = 0; i < s.size(); ++i)
    if (h.predict(s.point(i)) != s.label(i)) ++wrong;
  return static_cast<double>(wrong) / static_cast<double>(s.size());
}

Halfspace negate(const Halfspace& h) { return Halfspace(-h.weights(), -h.bias()); }

double regularity_ratio(const Vector& v) {
  const double n2 = v.squaredNorm();
  if (n2 == 0.0) throw std::invalid_argument("regularity_ratio: zero vector");
  const double n4sq = std::sqrt(v.array().square().square().sum());
  return n4sq / n2;
}

Vector restrict(const Vector& v, std::span<const Index> H) {
  Vector out(static_cast<Index>(H.size()));
  for (std::size_t i = 0; i < H.size(); ++i) {
    if (H[i] < 0 || H[i] >= v.size()) throw std::out_of_range("restrict: index out of range");
    out[static_cast<Index>(i)] = v[H[i]];
  }
  return out;
}

Vector embed(const Vector& u, std::span<const Index> H, Index d) {
  if (u.size() != static_cast<Index>(H.size()))
    throw std::invalid_argument("embed: size mismatch between values and index set");
  Vector out = Vector::Zero(d);
  for (std::size_t i = 0; i < H.size(); ++i) {
    if (H[i] < 0 || H[i] >= d) throw std::out_of_range("embed: index out of range");
    out[H[i]] = u[static_cast<Index>(i)];
  }
  return out;
}

DatasetOracle::DatasetOracle(LabeledSet data) : data_(std::move(data)) {
  if (data_.empty()) throw std::invalid_argument("DatasetOracle: empty dataset");
}

LabeledSet DatasetOracle::draw(Index n, SeededRng& rng) const {
  LabeledSet out(data_.dim(), data_.provenance());
  for (Index i = 0; i < n; ++i) {
    const Index j = static_cast<Index>(rng.uniform_int(static_cast<std::uint64_t>(data_.size())));
    out.push_back(data_.point(j), data_.label(j));
  }
  return out;
}

namespace {

ParamValue clampv(double formula, double cap) {
  return ParamValue{formula, std::min(formula, cap)};
}

ParamValue sample_count(double formula, std::int64_t explicit_value, std::int64_t cap) {
  if (explicit_value > 0)
    return ParamValue{formula, static_cast<double>(explicit_value)};
  const double capped = std::min(formula, static_cast<double>(cap));
  return ParamValue{formula, std::max(1.0, std::floor(capped))};
}

}  // namespace

LearnerConfig::Resolved LearnerConfig::resolve(Index d) const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("LearnerConfig: epsilon in (0,1)");
  if (c_const < 1.0) throw std::invalid_argument("LearnerConfig: c_const >= 1");
  if (w_max < 1.0) throw std::invalid_argument("LearnerConfig: w_max >= 1");

  Resolved r;
  const double C = c_const;
  const double log_inv_eps = std::log(1.0 / epsilon);

  const double k_formula = std::pow(C, 0.1) * std::pow(log_inv_eps, 16.0) / std::pow(epsilon, 8.0);
  if (k > 0) {
    r.k = ParamValue{k_formula, static_cast<double>(k)};
  } else {
    r.k = ParamValue{k_formula, std::max(1.0, std::floor(std::min(k_formula, static_cast<double>(cap_k))))};
  }
  const double k_applied = r.k.applied;

  const double eta_formula = std::pow(epsilon, 25.0) / C;
  r.eta = ParamValue{eta_formula, eta > 0.0 ? eta : eta_formula};

  // log²(k)/√k exceeds 1 for desk-scale k; the regularity parameter must stay in (0,1).
  const double eps_hv_formula =
      std::pow(C, 0.01) * std::pow(std::log(std::max(k_applied, 2.0)), 2.0) / std::sqrt(k_applied);
  r.eps_hv = ParamValue{eps_hv_formula, eps_hv > 0.0 ? eps_hv : std::min(eps_hv_formula, 0.5)};

  const double eps_reg_formula = epsilon / std::pow(C, 0.01);
  r.eps_reg = ParamValue{eps_reg_formula, eps_reg > 0.0 ? eps_reg : eps_reg_formula};

  const double eta_applied = r.eta.applied;
  const double s1_formula = C * std::sqrt(std::log(std::max<double>(d, 2))) / (eta_applied * eta_applied);
  r.s1 = sample_count(s1_formula, s1, cap_samples);

  const double s2_formula = std::sqrt(C) * (k_applied / (epsilon * epsilon)) *
                            std::pow(std::log(std::max(k_applied / epsilon, 2.0)), 2.0);
  r.s2 = sample_count(s2_formula, s2, cap_samples);

  const double s3_formula = C * std::sqrt(std::log(std::max(k_applied, 2.0))) / (epsilon * epsilon);
  r.s3 = sample_count(s3_formula, s3, cap_samples);

  // d·2^{20 d log d} overflows double well before d = 30; the runtime is
  // logarithmic in this bound so the clamp is recorded and harmless.
  const double dd = static_cast<double>(d);
  const double log2_umax = std::log2(dd) + 20.0 * dd * std::log2(std::max(dd, 2.0));
  const double u_max_formula = log2_umax > 1020.0 ? std::numeric_limits<double>::infinity()
                                                  : dd * std::exp2(20.0 * dd * std::log2(std::max(dd, 2.0)));
  r.u_max = clampv(u_max_formula, std::min(w_max, 1e300));

  r.ellipsoid_tol = ellipsoid_tol > 0.0 ? ellipsoid_tol : epsilon / 8.0;
  r.lp_slack = lp_slack;
  return r;
}

}  // namespace halfspace

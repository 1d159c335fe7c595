#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace halfspace {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// Global tie convention: sign(0) = +1, used by labeling, prediction and LP margins alike.
inline int sign_pm(double z) { return z >= 0.0 ? 1 : -1; }

/// Deterministic pseudo-random stream (xoshiro256++ seeded via splitmix64).
/// Identical seed produces an identical stream; `split` derives independent
/// child streams by index so parallel workers stay reproducible.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed);

  std::uint64_t next_u64();
  double uniform01();                       // [0, 1)
  double uniform(double a, double b);       // [a, b)
  double normal();                          // N(0, 1)
  std::uint64_t uniform_int(std::uint64_t n);  // [0, n), n >= 1
  int rademacher();                         // ±1 fair coin
  bool bernoulli(double p);

  SeededRng split(std::uint64_t index) const;
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::array<std::uint64_t, 4> s_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// A point of {±1}^d stored as packed sign bits (bit set = +1).
class CubePoint {
 public:
  CubePoint() = default;
  explicit CubePoint(Index d);  // all coordinates -1
  static CubePoint from_signs(std::span<const int> signs);

  Index dim() const { return d_; }
  int get(Index i) const;
  void set(Index i, int sign);
  void flip(Index i);  // x^{⊗i}, single bit toggle

  double dot(const Vector& v) const;
  // Popcount fast path for ±1 integer weight vectors (oracle use).
  std::int64_t dot_pm1(const CubePoint& weights) const;

  std::span<const std::uint64_t> words() const { return words_; }
  bool operator==(const CubePoint& o) const { return d_ == o.d_ && words_ == o.words_; }

 private:
  Index d_ = 0;
  std::vector<std::uint64_t> words_;
};

struct LabeledSample {
  CubePoint x;
  int y;  // ±1
};

struct Provenance {
  enum class Kind { Clean, LabelNoise, Contaminated };
  Kind kind = Kind::Clean;
  double rate = 0.0;

  std::string tag() const;
  static Provenance parse(const std::string& tag);
  bool operator==(const Provenance&) const = default;
};

/// Finite multiset of labeled cube points; all samples share one dimension.
class LabeledSet {
 public:
  LabeledSet() = default;
  explicit LabeledSet(Index d, Provenance prov = {}) : d_(d), prov_(prov) {}

  Index dim() const { return d_; }
  Index size() const { return static_cast<Index>(ys_.size()); }
  bool empty() const { return ys_.empty(); }

  void push_back(CubePoint x, int y);
  const CubePoint& point(Index i) const { return xs_[static_cast<std::size_t>(i)]; }
  int label(Index i) const { return ys_[static_cast<std::size_t>(i)]; }
  void set_label(Index i, int y);

  Provenance provenance() const { return prov_; }
  void set_provenance(Provenance p) { prov_ = p; }

  Matrix to_matrix() const;                                 // n×d entries ±1
  Matrix restrict_matrix(std::span<const Index> H) const;   // n×|H|
  Vector label_vector() const;

 private:
  Index d_ = 0;
  std::vector<CubePoint> xs_;
  std::vector<std::int8_t> ys_;
  Provenance prov_;
};

/// Hypothesis sign(v·x + τ). Construction rejects the all-zero degenerate case.
class Halfspace {
 public:
  Halfspace(Vector weights, double bias);

  const Vector& weights() const { return w_; }
  double bias() const { return tau_; }
  Index dim() const { return w_.size(); }

  double margin(const CubePoint& x) const { return x.dot(w_) + tau_; }
  int predict(const CubePoint& x) const { return sign_pm(margin(x)); }

  static Halfspace constant_plus_one(Index d);

 private:
  Vector w_;
  double tau_;
};

int predict(const Halfspace& h, const CubePoint& x);
double empirical_error(const Halfspace& h, const LabeledSet& s);
Halfspace negate(const Halfspace& h);

/// Pull-based access to labeled samples. Implementations must be pure given
/// the supplied rng so split streams keep parallel runs reproducible.
class SampleOracle {
 public:
  virtual ~SampleOracle() = default;
  virtual Index dim() const = 0;
  virtual LabeledSet draw(Index n, SeededRng& rng) const = 0;
};

/// Resamples a finite dataset with replacement.
class DatasetOracle final : public SampleOracle {
 public:
  explicit DatasetOracle(LabeledSet data);
  Index dim() const override { return data_.dim(); }
  LabeledSet draw(Index n, SeededRng& rng) const override;
  const LabeledSet& data() const { return data_; }

 private:
  LabeledSet data_;
};

double regularity_ratio(const Vector& v);  // ‖v‖₄² / ‖v‖₂²

Vector restrict(const Vector& v, std::span<const Index> H);
Vector embed(const Vector& u, std::span<const Index> H, Index d);

/// A parameter together with its raw formula value and the desk-scale clamp
/// actually applied; both are kept for reporting.
struct ParamValue {
  double formula = 0.0;
  double applied = 0.0;
};

/// Every learner parameter. Fields left at 0 are derived from the formulas
/// below at resolve time; nonzero fields are explicit overrides. Formula
/// values are clamped by `cap_k` / `cap_samples` because the nominal
/// constants are far beyond desk scale.
struct LearnerConfig {
  double epsilon = 0.1;
  double c_const = 4.0;   // the universal constant C
  double w_max = 1e6;     // cap on the weight-norm bound fed to the ellipsoid

  std::int64_t k = 0;
  double eta = 0.0;
  double eps_hv = 0.0;
  double eps_reg = 0.0;
  std::int64_t s1 = 0;
  std::int64_t s2 = 0;
  std::int64_t s3 = 0;

  double ellipsoid_tol = 0.0;  // 0 → epsilon / 8
  double lp_slack = 1e-9;

  std::int64_t cap_k = 64;
  std::int64_t cap_samples = 1000000;
  std::uint64_t seed = 0;

  struct Resolved {
    ParamValue k, eta, eps_hv, eps_reg, s1, s2, s3, u_max;
    double ellipsoid_tol = 0.0;
    double lp_slack = 1e-9;
  };
  Resolved resolve(Index d) const;
};

}  // namespace halfspace

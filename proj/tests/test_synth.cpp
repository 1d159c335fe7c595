#include "halfspace/synth.hpp"

#include <doctest.h>

#include "support.hpp"

#include <cmath>
#include <set>

using namespace halfspace;
using namespace halfspace::synth;

TEST_CASE("sample_uniform: unbiased marginals and determinism") {
  SeededRng rng(1);
  const auto pts = sample_uniform(1, 1000000, rng);
  double mean = 0.0;
  for (const auto& p : pts) mean += p.get(0);
  mean /= 1e6;
  CHECK(std::abs(mean) <= 0.005);

  SeededRng a(7), b(7);
  const auto pa = sample_uniform(9, 100, a);
  const auto pb = sample_uniform(9, 100, b);
  for (int i = 0; i < 100; ++i) CHECK(pa[static_cast<std::size_t>(i)] == pb[static_cast<std::size_t>(i)]);
}

TEST_CASE("sample_uniform: all 8 patterns of d=3 near-equally frequent") {
  SeededRng rng(2);
  const Index n = 800000;
  const auto pts = sample_uniform(3, n, rng);
  std::array<Index, 8> count{};
  for (const auto& p : pts) {
    int m = 0;
    for (Index i = 0; i < 3; ++i)
      if (p.get(i) > 0) m |= 1 << i;
    count[static_cast<std::size_t>(m)]++;
  }
  for (const auto c : count)
    CHECK(std::abs(static_cast<double>(c) / static_cast<double>(n) - 0.125) <= 0.003);
}

TEST_CASE("label_with") {
  SeededRng rng(3);
  const Index d = 6;
  const auto pts = sample_uniform(d, 500, rng);

  Vector dict = Vector::Zero(d);
  dict[0] = 1.0;
  const LabeledSet by_dict = label_with(Halfspace(dict, 0.0), pts);
  for (Index i = 0; i < by_dict.size(); ++i) CHECK(by_dict.label(i) == by_dict.point(i).get(0));
  CHECK(by_dict.provenance().kind == Provenance::Kind::Clean);

  const LabeledSet by_const =
      label_with(Halfspace(Vector::Zero(d), static_cast<double>(d) + 1.0), pts);
  for (Index i = 0; i < by_const.size(); ++i) CHECK(by_const.label(i) == 1);

  // majority of three agrees with direct enumeration of the 2^3 table
  std::vector<CubePoint> cube;
  for (int m = 0; m < 8; ++m) {
    CubePoint p(3);
    for (Index i = 0; i < 3; ++i) p.set(i, (m >> i) & 1 ? 1 : -1);
    cube.push_back(p);
  }
  const LabeledSet maj = label_with(Halfspace(Vector::Ones(3), 0.0), cube);
  for (Index i = 0; i < 8; ++i) {
    const int s = maj.point(i).get(0) + maj.point(i).get(1) + maj.point(i).get(2);
    CHECK(maj.label(i) == (s > 0 ? 1 : -1));
  }
}

TEST_CASE("apply_noise: rate 0 is the identity") {
  SeededRng rng(4);
  const auto planted = random_regular_halfspace(10, rng);
  const LabeledSet s = label_with(planted, sample_uniform(10, 200, rng));
  const LabeledSet same = apply_noise(s, NoiseSpec::none(), rng, planted);
  for (Index i = 0; i < s.size(); ++i) {
    CHECK(same.label(i) == s.label(i));
    CHECK(same.point(i) == s.point(i));
  }
  CHECK(same.provenance().kind == Provenance::Kind::Clean);
}

TEST_CASE("apply_noise: RandomFlip at rate 1/2 erases the signal") {
  SeededRng rng(5);
  const auto planted = random_regular_halfspace(12, rng);
  const LabeledSet s = label_with(planted, sample_uniform(12, 100000, rng));
  const LabeledSet noisy = apply_noise(s, NoiseSpec::random_flip(0.5), rng, planted);
  CHECK(empirical_error(planted, noisy) == doctest::Approx(0.5).epsilon(0.02));
  CHECK(noisy.provenance().kind == Provenance::Kind::LabelNoise);

  // binomial ±3σ band at a milder rate
  const double rate = 0.1;
  SeededRng rng2(6);
  const LabeledSet noisy2 = apply_noise(s, NoiseSpec::random_flip(rate), rng2, planted);
  const double err = empirical_error(planted, noisy2);
  const double sigma = std::sqrt(rate * (1 - rate) / static_cast<double>(s.size()));
  CHECK(std::abs(err - rate) <= 3.0 * sigma);
}

TEST_CASE("apply_noise: BoundaryFlip flips exactly the smallest margins") {
  SeededRng rng(7);
  const Index d = 8, n = 1000;
  const auto planted = planted_sparse_halfspace(d, 3, rng);
  const LabeledSet s = label_with(planted, sample_uniform(d, n, rng));
  const double rate = 0.05;
  const LabeledSet flipped = apply_noise(s, NoiseSpec::boundary_flip(rate), rng, planted);

  Index flips = 0;
  double max_flipped_margin = 0.0, min_kept_margin = 1e300;
  for (Index i = 0; i < n; ++i) {
    const double m = std::abs(planted.margin(s.point(i)));
    if (flipped.label(i) != s.label(i)) {
      ++flips;
      max_flipped_margin = std::max(max_flipped_margin, m);
    } else {
      min_kept_margin = std::min(min_kept_margin, m);
    }
  }
  CHECK(flips == static_cast<Index>(std::floor(rate * n)));
  CHECK(max_flipped_margin <= min_kept_margin);

  CHECK_THROWS_AS(apply_noise(s, NoiseSpec::boundary_flip(rate), rng), std::invalid_argument);
}

TEST_CASE("apply_noise: corner_cluster injects the all-ones point at the target rate") {
  SeededRng rng(8);
  const Index d = 20, n = 100000;
  const double eta = 0.03;
  const auto planted = random_regular_halfspace(d, rng);
  const LabeledSet s = label_with(planted, sample_uniform(d, n, rng));
  const LabeledSet noisy =
      apply_noise(s, NoiseSpec::contaminate(eta, "corner_cluster"), rng, planted);
  CHECK(noisy.provenance().kind == Provenance::Kind::Contaminated);

  CubePoint ones(d);
  for (Index i = 0; i < d; ++i) ones.set(i, 1);
  Index corners = 0;
  for (Index i = 0; i < n; ++i)
    if (noisy.point(i) == ones) ++corners;
  CHECK(std::abs(static_cast<double>(corners) / n - eta) <= 0.005);
}

TEST_CASE("oblivious contamination keeps event frequencies within the TV budget") {
  SeededRng rng(9);
  const Index d = 15, n = 100000;
  const double eta = 0.04;
  const auto planted = random_regular_halfspace(d, rng);

  const auto freq_label_plus = [](const LabeledSet& s) {
    Index c = 0;
    for (Index i = 0; i < s.size(); ++i)
      if (s.label(i) == 1) ++c;
    return static_cast<double>(c) / static_cast<double>(s.size());
  };

  const LabeledSet clean = label_with(planted, sample_uniform(d, n, rng));
  for (const char* adv : {"corner_cluster", "anti_dictator", "dense_direction"}) {
    const LabeledSet noisy = apply_noise(clean, NoiseSpec::contaminate(eta, adv), rng, planted);
    const double gap = std::abs(freq_label_plus(noisy) - freq_label_plus(clean));
    CHECK(gap <= eta + 0.01);
  }
}

TEST_CASE("anti_dictator and dense_direction draws") {
  SeededRng rng(10);
  const Index d = 16;
  for (int t = 0; t < 50; ++t) {
    const auto a = adversary_draw("anti_dictator", d, rng, std::nullopt);
    CHECK(a.y == -a.x.get(0));
    const auto b = adversary_draw("dense_direction", d, rng, std::nullopt);
    CHECK(b.y == -1);
    const Index lead = static_cast<Index>(std::ceil(std::sqrt(static_cast<double>(d))));
    for (Index i = 0; i < lead; ++i) CHECK(b.x.get(i) == 1);
  }
  CHECK_THROWS_AS(adversary_draw("mystery", d, rng, std::nullopt), std::invalid_argument);
}

TEST_CASE("random_regular_halfspace: unit norm, regular, reproducible") {
  for (const Index d : {2, 10, 100}) {
    SeededRng rng(11);
    const auto h = random_regular_halfspace(d, rng);
    CHECK(std::abs(h.weights().norm() - 1.0) <= 1e-12);
    CHECK(regularity_ratio(h.weights()) <= 2.0 / std::sqrt(static_cast<double>(d)));
    CHECK(std::abs(h.bias()) <= 1.0);

    SeededRng rng2(11);
    const auto h2 = random_regular_halfspace(d, rng2);
    CHECK(h.weights() == h2.weights());
    CHECK(h.bias() == h2.bias());
  }
}

TEST_CASE("planted_sparse_halfspace: integral sparse weights with bounded bias") {
  SeededRng rng(12);
  const Index d = 400, k = 3;
  std::set<std::vector<Index>> supports;
  for (int t = 0; t < 100; ++t) {
    const auto h = planted_sparse_halfspace(d, k, rng);
    std::vector<Index> support;
    for (Index i = 0; i < d; ++i) {
      const double w = h.weights()[i];
      if (w != 0.0) {
        support.push_back(i);
        CHECK(w == std::floor(w));
        CHECK(std::abs(w) <= std::pow(2.0, static_cast<double>(k)));
        CHECK(std::abs(w) >= 1.0);
      }
    }
    CHECK(static_cast<Index>(support.size()) == k);
    CHECK(h.bias() == std::floor(h.bias()));
    CHECK(std::abs(h.bias()) <= static_cast<double>(k) * std::pow(2.0, static_cast<double>(k)));
    supports.insert(std::move(support));
  }
  // birthday-style check: collisions should be far rarer than k²/d
  CHECK(supports.size() >= 98);
}

TEST_CASE("SyntheticOracle is pure given the rng") {
  SeededRng seed_rng(13);
  const auto planted = random_regular_halfspace(9, seed_rng);
  const SyntheticOracle oracle(planted, NoiseSpec::random_flip(0.1));
  SeededRng r1(5), r2(5);
  const LabeledSet a = oracle.draw(64, r1);
  const LabeledSet b = oracle.draw(64, r2);
  for (Index i = 0; i < 64; ++i) {
    CHECK(a.point(i) == b.point(i));
    CHECK(a.label(i) == b.label(i));
  }
}

#include "halfspace/pipeline.hpp"

#include "halfspace/glm.hpp"
#include "halfspace/synth.hpp"

#include <doctest.h>

#include "support.hpp"

#include <algorithm>
#include <cmath>

using namespace halfspace;
using namespace halfspace::pipeline;

namespace {

LearnerConfig desk_config(double eps, std::uint64_t seed) {
  LearnerConfig cfg;
  cfg.epsilon = eps;
  cfg.c_const = 4.0;
  cfg.cap_k = 6;
  cfg.cap_samples = 15000;
  cfg.seed = seed;
  return cfg;
}

Vector dictator_weights(Index d) {
  Vector v = Vector::Zero(d);
  v[0] = 1.0;
  return v;
}

// Wraps an oracle and fails one specific draw size, exercising the per-Δ
// failure isolation in the learner.
class PoisonOracle final : public SampleOracle {
 public:
  PoisonOracle(const SampleOracle& inner, Index poison_n) : inner_(inner), poison_(poison_n) {}
  Index dim() const override { return inner_.dim(); }
  LabeledSet draw(Index n, SeededRng& rng) const override {
    if (n == poison_) throw std::runtime_error("poisoned draw");
    return inner_.draw(n, rng);
  }

 private:
  const SampleOracle& inner_;
  Index poison_;
};

}  // namespace

TEST_CASE("learn_halfspace: realizable dictator") {
  const Index d = 30;
  const Halfspace target(dictator_weights(d), 0.0);
  const synth::SyntheticOracle oracle(target, synth::NoiseSpec::none());
  const auto report = learn_halfspace(desk_config(0.1, 1), oracle);

  CHECK(report.candidates.size() ==
        static_cast<std::size_t>(report.params.k.applied) + 2);
  // selection correctness: the chosen error is the minimum, exactly
  double min_err = 2.0;
  for (const auto& c : report.candidates) min_err = std::min(min_err, c.s3_error);
  CHECK(report.chosen_error() == min_err);

  SeededRng fresh(101);
  const double err =
      halfspace::testing::fresh_disagreement(report.chosen(), target, 100000, fresh);
  CHECK(err <= 0.1);
}

TEST_CASE("learn_halfspace: constant target with a little label noise") {
  const Index d = 40;
  const Halfspace target(Vector::Zero(d), static_cast<double>(d) + 1.0);
  const synth::SyntheticOracle oracle(target, synth::NoiseSpec::random_flip(0.01));
  const auto report = learn_halfspace(desk_config(0.1, 2), oracle);
  SeededRng fresh(102);
  CHECK(halfspace::testing::fresh_disagreement(report.chosen(), target, 100000, fresh) <= 0.05);
}

TEST_CASE("learn_halfspace: sparse target under light flips goes through the LP path") {
  SeededRng rng(3);
  const Index d = 50;
  const auto target = synth::planted_sparse_halfspace(d, 5, rng);
  const synth::SyntheticOracle oracle(target, synth::NoiseSpec::random_flip(0.005));
  const auto report = learn_halfspace(desk_config(0.1, 3), oracle);
  SeededRng fresh(103);
  CHECK(halfspace::testing::fresh_disagreement(report.chosen(), target, 100000, fresh) <= 0.1);
}

TEST_CASE("learn_halfspace: reports are byte-identical across repeated runs") {
  const Index d = 25;
  SeededRng rng(4);
  const auto target = synth::random_regular_halfspace(d, rng);
  const synth::SyntheticOracle oracle(target, synth::NoiseSpec::random_flip(0.01));
  const LearnerConfig cfg = desk_config(0.15, 7);
  const auto a = learn_halfspace(cfg, oracle);
  const auto b = learn_halfspace(cfg, oracle);
  CHECK(a.to_json() == b.to_json());

  const std::string json = a.to_json();
  for (const char* key : {"\"chosen\"", "\"candidates\"", "\"params_applied\"", "\"seed\""})
    CHECK(json.find(key) != std::string::npos);
}

TEST_CASE("learn_halfspace: a failing delta iteration degrades to the constant candidate") {
  const Index d = 20;
  const Halfspace target(dictator_weights(d), 0.0);
  const synth::SyntheticOracle inner(target, synth::NoiseSpec::none());

  LearnerConfig cfg = desk_config(0.1, 5);
  cfg.c_const = 1.5;            // keep the heavy-stage sample formulas small
  cfg.cap_samples = 10000000;   // and unclamped, so each delta draws a distinct size
  const auto rp = cfg.resolve(d);
  const Index poison_n = static_cast<Index>(std::max(
      1.0, std::min(glm::heavy_sample_formula(rp.eps_hv.applied, 2, cfg.c_const),
                    static_cast<double>(cfg.cap_samples))));
  const PoisonOracle oracle(inner, poison_n);

  const auto report = learn_halfspace(cfg, oracle);
  REQUIRE(report.candidates.size() == static_cast<std::size_t>(rp.k.applied) + 2);
  CHECK(report.candidates[2].solver_failed);
  CHECK(report.candidates[2].constant_fallback);
  CHECK(report.any_warning());
  // the run still succeeds through the unaffected candidates
  SeededRng fresh(104);
  CHECK(halfspace::testing::fresh_disagreement(report.chosen(), target, 50000, fresh) <= 0.1);
}

TEST_CASE("contaminated mode: clean data gives the same selection-level outcome") {
  const Index d = 30;
  const Halfspace target(dictator_weights(d), 0.0);
  const synth::SyntheticOracle oracle(target, synth::NoiseSpec::none());
  const LearnerConfig cfg = desk_config(0.1, 6);

  const auto plain = learn_halfspace(cfg, oracle);
  const auto contaminated = learn_halfspace_contaminated(cfg, oracle);
  CHECK(plain.influential == contaminated.influential);
  CHECK(plain.sparse_feasible == contaminated.sparse_feasible);
  CHECK(plain.chosen_error() == contaminated.chosen_error());
}

TEST_CASE("contaminated mode: corner_cluster at a regular target") {
  SeededRng rng(7);
  const Index d = 50;
  const auto reg = synth::random_regular_halfspace(d, rng);
  const Halfspace target(reg.weights(), 0.0);
  const synth::SyntheticOracle oracle(target,
                                      synth::NoiseSpec::contaminate(0.005, "corner_cluster"));
  const auto report = learn_halfspace_contaminated(desk_config(0.2, 8), oracle);
  SeededRng fresh(105);
  CHECK(halfspace::testing::fresh_disagreement(report.chosen(), target, 100000, fresh) <= 0.3);
}

TEST_CASE("contaminated mode: anti_dictator against a sparse target") {
  SeededRng rng(9);
  const Index d = 40;
  const auto target = synth::planted_sparse_halfspace(d, 5, rng);
  const synth::SyntheticOracle oracle(target,
                                      synth::NoiseSpec::contaminate(0.01, "anti_dictator"));
  const auto report = learn_halfspace_contaminated(desk_config(0.1, 10), oracle);
  SeededRng fresh(106);
  CHECK(halfspace::testing::fresh_disagreement(report.chosen(), target, 100000, fresh) <= 0.15);
}

TEST_CASE("opt_grid_search") {
  const Index d = 15;
  const Halfspace target(dictator_weights(d), 0.0);
  const synth::SyntheticOracle oracle(target, synth::NoiseSpec::random_flip(0.02));
  LearnerConfig cfg = desk_config(0.1, 11);
  cfg.cap_samples = 8000;

  // a single-element grid is exactly one learner run
  const double one[] = {0.1};
  const auto single = learn_halfspace(cfg, oracle);
  const auto gridded = opt_grid_search(cfg, oracle, one);
  CHECK(single.to_json() == gridded.to_json());

  const double grid[] = {0.08, 0.1, 0.2};
  const auto multi = opt_grid_search(cfg, oracle, grid);
  CHECK_FALSE(multi.grid_note.empty());
  double best_single = 2.0;
  for (const double eps : grid) {
    LearnerConfig c = cfg;
    c.epsilon = eps;
    SeededRng fresh(107);
    best_single = std::min(best_single,
                           halfspace::testing::fresh_disagreement(
                               learn_halfspace(c, oracle).chosen(), target, 50000, fresh));
  }
  SeededRng fresh(107);
  const double chosen_err =
      halfspace::testing::fresh_disagreement(multi.chosen(), target, 50000, fresh);
  CHECK(chosen_err <= best_single + 0.02);

  CHECK_THROWS_AS(opt_grid_search(cfg, oracle, std::span<const double>{}),
                  std::invalid_argument);
  const double bad[] = {0.2, 0.1};
  CHECK_THROWS_AS(opt_grid_search(cfg, oracle, bad), std::invalid_argument);
}

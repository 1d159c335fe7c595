#include "halfspace/pipeline.hpp"

#include "halfspace/glm.hpp"
#include "halfspace/hinge.hpp"
#include "halfspace/influence.hpp"
#include "halfspace/io.hpp"
#include "halfspace/parallel.hpp"
#include "halfspace/robust.hpp"
#include "halfspace/sparse.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace halfspace::pipeline {

namespace {

// rng split indices: one fixed lane per draw site keeps parallel and serial
// schedules byte-identical
constexpr std::uint64_t kLaneS1 = 1;
constexpr std::uint64_t kLaneS2 = 2;
constexpr std::uint64_t kLaneS3 = 3;
constexpr std::uint64_t kLaneHeavy = 1000;
constexpr std::uint64_t kLaneRegular = 2000;

RunReport run_learner(const LearnerConfig& cfg, const SampleOracle& data, Mode mode) {
  const Index d = data.dim();
  const auto rp = cfg.resolve(d);
  const Index k = static_cast<Index>(rp.k.applied);
  const SeededRng root(cfg.seed);

  RunReport report;
  report.params = rp;
  report.seed = cfg.seed;
  report.mode = mode;

  // Phase 1: influential coordinates from degree-1 correlations.
  SeededRng rng_s1 = root.split(kLaneS1);
  const LabeledSet s1 = data.draw(static_cast<Index>(rp.s1.applied), rng_s1);
  const auto chow = influence::estimate_chow(s1);
  report.influential = influence::top_k_indices(chow, k);

  // Phase 2: structured candidates, one per head size Δ.
  report.candidates.assign(static_cast<std::size_t>(k) + 2,
                           Candidate{Halfspace::constant_plus_one(d)});
  parallel_for_indexed(static_cast<int>(k) + 1, [&](int delta_i) {
    const Index delta = delta_i;
    Candidate& cand = report.candidates[static_cast<std::size_t>(delta_i)];
    cand.delta = delta;
    try {
      const std::span<const Index> head(report.influential.data(),
                                        static_cast<std::size_t>(delta));

      const double n_hv_formula = glm::heavy_sample_formula(rp.eps_hv.applied, delta, cfg.c_const);
      const Index n_hv = static_cast<Index>(std::max(
          1.0, std::min(n_hv_formula, static_cast<double>(cfg.cap_samples))));
      SeededRng rng_hv = root.split(kLaneHeavy + static_cast<std::uint64_t>(delta));
      const LabeledSet heavy_set = data.draw(n_hv, rng_hv);
      glm::RealDataset heavy{heavy_set.restrict_matrix(head), heavy_set.label_vector()};

      glm::GlmOptions gopts;
      gopts.c_const = cfg.c_const;
      gopts.tol = rp.ellipsoid_tol;
      const glm::GlmFit fit =
          glm::find_heavy_coefficients(rp.eps_hv.applied, delta, rp.u_max.applied, heavy, gopts);

      hinge::TailProblem tail(d, std::vector<Index>(head.begin(), head.end()),
                              embed(fit.weights, head, d), fit.bias, rp.eps_reg.applied);

      hinge::RegularFitOptions ropts;
      ropts.c_const = cfg.c_const;
      ropts.cap_samples = cfg.cap_samples;
      SeededRng rng_reg = root.split(kLaneRegular + static_cast<std::uint64_t>(delta));
      const hinge::RegularFit reg =
          mode == Mode::LabelNoise
              ? hinge::find_regular_coefficients(tail, data, rng_reg, ropts)
              : robust::find_regular_contaminated(tail, data, rng_reg, ropts);

      cand.hypothesis = reg.hypothesis;
      cand.head_only_fallback = reg.head_only_fallback;
    } catch (const std::exception&) {
      cand.hypothesis = Halfspace::constant_plus_one(d);
      cand.solver_failed = true;
      cand.constant_fallback = true;
    }
  });

  // Phase 3: sparse candidate by LP consistency on the full head set.
  {
    Candidate& cand = report.candidates.back();
    cand.is_sparse = true;
    SeededRng rng_s2 = root.split(kLaneS2);
    const LabeledSet s2 = data.draw(static_cast<Index>(rp.s2.applied), rng_s2);
    try {
      const auto sp = sparse::fit_sparse(report.influential, s2, rp.lp_slack);
      if (sp) {
        cand.hypothesis = *sp;
        report.sparse_feasible = true;
      } else {
        cand.hypothesis = Halfspace::constant_plus_one(d);
        cand.constant_fallback = true;
      }
    } catch (const std::exception&) {
      cand.hypothesis = Halfspace::constant_plus_one(d);
      cand.solver_failed = true;
      cand.constant_fallback = true;
    }
  }

  // Phase 4: select the empirical-error minimizer on a fresh block.
  SeededRng rng_s3 = root.split(kLaneS3);
  const LabeledSet s3 = data.draw(static_cast<Index>(rp.s3.applied), rng_s3);
  for (auto& cand : report.candidates) cand.s3_error = empirical_error(cand.hypothesis, s3);
  report.chosen_index = 0;
  for (std::size_t i = 1; i < report.candidates.size(); ++i)
    if (report.candidates[i].s3_error <
        report.candidates[static_cast<std::size_t>(report.chosen_index)].s3_error)
      report.chosen_index = static_cast<Index>(i);
  return report;
}

}  // namespace

RunReport learn_halfspace(const LearnerConfig& cfg, const SampleOracle& data) {
  return run_learner(cfg, data, Mode::LabelNoise);
}

RunReport learn_halfspace_contaminated(const LearnerConfig& cfg, const SampleOracle& data) {
  return run_learner(cfg, data, Mode::Contaminated);
}

RunReport opt_grid_search(const LearnerConfig& cfg, const SampleOracle& data,
                          std::span<const double> grid) {
  if (grid.empty()) throw std::invalid_argument("opt_grid_search: empty grid");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("opt_grid_search: grid must ascend");

  std::vector<RunReport> runs;
  runs.reserve(grid.size());
  Index held_out = 1;
  for (const double eps : grid) {
    LearnerConfig c = cfg;
    c.epsilon = eps;
    runs.push_back(learn_halfspace(c, data));
    held_out = std::max(held_out, static_cast<Index>(runs.back().params.s3.applied));
  }
  if (runs.size() == 1) return std::move(runs.front());

  SeededRng rng = SeededRng(cfg.seed).split(kLaneS3 + 7);
  const LabeledSet shared = data.draw(held_out, rng);
  std::size_t best = 0;
  double best_err = 2.0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const double err = empirical_error(runs[i].chosen(), shared);
    if (err < best_err) {
      best_err = err;
      best = i;
    }
  }
  RunReport out = std::move(runs[best]);
  out.grid_note = "selected eps=" + format_double(grid[best]) + " of " +
                  std::to_string(grid.size()) + " grid runs on a shared held-out block";
  return out;
}

bool RunReport::any_warning() const {
  for (const auto& c : candidates)
    if (c.solver_failed || c.head_only_fallback) return true;
  return false;
}

std::string RunReport::to_json() const {
  using nlohmann::json;
  const auto param = [](const ParamValue& p) {
    return json{{"formula", p.formula}, {"applied", p.applied}};
  };

  json j;
  j["seed"] = seed;
  j["mode"] = mode == Mode::LabelNoise ? "label-noise" : "contaminated";
  j["params_applied"] = json{
      {"k", param(params.k)},           {"eta", param(params.eta)},
      {"eps_hv", param(params.eps_hv)}, {"eps_reg", param(params.eps_reg)},
      {"s1", param(params.s1)},         {"s2", param(params.s2)},
      {"s3", param(params.s3)},         {"u_max", param(params.u_max)},
      {"ellipsoid_tol", params.ellipsoid_tol},
      {"lp_slack", params.lp_slack},
  };
  j["influential"] = influential;
  j["sparse_feasible"] = sparse_feasible;

  json cands = json::array();
  for (const auto& c : candidates) {
    json e;
    e["delta"] = c.delta;
    e["sparse"] = c.is_sparse;
    e["s3_error"] = c.s3_error;
    e["solver_failed"] = c.solver_failed;
    e["head_only_fallback"] = c.head_only_fallback;
    e["constant_fallback"] = c.constant_fallback;
    cands.push_back(std::move(e));
  }
  j["candidates"] = std::move(cands);

  const Candidate& ch = candidates[static_cast<std::size_t>(chosen_index)];
  json chosen;
  chosen["index"] = chosen_index;
  chosen["kind"] = ch.constant_fallback ? "constant" : (ch.is_sparse ? "sparse" : "structured");
  chosen["s3_error"] = ch.s3_error;
  chosen["tau"] = ch.hypothesis.bias();
  std::vector<double> w(ch.hypothesis.weights().data(),
                        ch.hypothesis.weights().data() + ch.hypothesis.dim());
  chosen["weights"] = std::move(w);
  j["chosen"] = std::move(chosen);
  if (!grid_note.empty()) j["grid_note"] = grid_note;
  return j.dump(2);
}

}  // namespace halfspace::pipeline

#pragma once

#include "halfspace/core.hpp"

#include <span>
#include <string>
#include <vector>

namespace halfspace::pipeline {

enum class Mode { LabelNoise, Contaminated };

struct Candidate {
  Halfspace hypothesis;
  double s3_error = 1.0;
  Index delta = -1;          // structured candidates carry their Δ; sparse uses -1
  bool is_sparse = false;
  bool solver_failed = false;    // replaced by the constant +1 hypothesis
  bool head_only_fallback = false;
  bool constant_fallback = false;
};

struct RunReport {
  std::vector<Candidate> candidates;  // h_0..h_k then h_sp, always k+2 entries
  Index chosen_index = 0;
  bool sparse_feasible = false;
  std::vector<Index> influential;     // H_k, descending |Î|
  LearnerConfig::Resolved params;
  std::uint64_t seed = 0;
  Mode mode = Mode::LabelNoise;
  std::string grid_note;              // set by opt_grid_search

  const Halfspace& chosen() const { return candidates[static_cast<std::size_t>(chosen_index)].hypothesis; }
  double chosen_error() const { return candidates[static_cast<std::size_t>(chosen_index)].s3_error; }
  bool any_warning() const;

  std::string to_json() const;
};

/// Full label-noise learner: influence phase, Δ-loop of heavy+regular fits,
/// sparse LP, and selection on a held-out block. Solver failures inside one
/// Δ iteration are isolated: the candidate is replaced by constant +1 and
/// flagged, never aborting the run.
RunReport learn_halfspace(const LearnerConfig& cfg, const SampleOracle& data);

/// Contamination variant: identical influence estimator; the regular stage
/// adds spectral outlier removal and the wider band filter.
RunReport learn_halfspace_contaminated(const LearnerConfig& cfg, const SampleOracle& data);

/// Runs the learner once per ε′ in the ascending grid and selects across
/// runs on one shared held-out block sized by the largest run.
RunReport opt_grid_search(const LearnerConfig& cfg, const SampleOracle& data,
                          std::span<const double> grid);

}  // namespace halfspace::pipeline

#pragma once

#include "halfspace/core.hpp"
#include "halfspace/hinge.hpp"

#include <stdexcept>
#include <vector>

namespace halfspace::robust {

struct Unsupported : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct FilterReport {
  Index removed_count = 0;
  double final_top_moment = 0.0;  // λ₁ of (1/m)Σ_kept x xᵀ, m the input size
  Index iterations = 0;           // removal passes
};

struct OutlierResult {
  std::vector<Index> kept_indices;  // ascending
  FilterReport report;
};

/// Iterative spectral filtering: while the top eigenvalue of
/// (1/m)Σ_kept x xᵀ exceeds 8 (m = input size throughout), remove the
/// ⌈0.1%⌉ of current points with the largest squared projection on the top
/// eigenvector (score desc, ties by index). Only r = 1 is supported.
OutlierResult outlier_remove(const std::vector<CubePoint>& pts, int r = 1);

/// Contamination-tolerant tail recovery: outlier removal, then the band
/// filter |φ(x)| ≤ c^{0.1}/√ε, then hinge minimization over the same
/// feasible class as the label-noise variant.
hinge::RegularFit find_regular_contaminated(const hinge::TailProblem& p,
                                            const SampleOracle& data, SeededRng& rng,
                                            const hinge::RegularFitOptions& opts = {});

}  // namespace halfspace::robust

#pragma once

#include "halfspace/core.hpp"

#include <optional>
#include <span>

namespace halfspace::sparse {

/// LP search for a halfspace supported on H consistent with every sample:
/// margins y(Σ_{i∈H} v_i x_i + τ) ≥ 1 over variables (v_H, τ), search ball
/// radius 2^{|H|}·(|H|+1). Returns the embedded full-dimension halfspace
/// (consistency re-verified exactly) or nullopt when the LP is infeasible.
std::optional<Halfspace> fit_sparse(std::span<const Index> H, const LabeledSet& s2,
                                    double lp_slack = 1e-9);

}  // namespace halfspace::sparse

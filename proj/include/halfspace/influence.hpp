#pragma once

#include "halfspace/core.hpp"

#include <span>
#include <vector>

namespace halfspace::influence {

/// Degree-1 correlation estimates Î_i = E_S[y·x_i].
struct ChowEstimate {
  Vector values;
  Index sample_count = 0;
};

/// Exact integer accumulation, so the result is order-independent.
ChowEstimate estimate_chow(const LabeledSet& s);

/// Indices of the k largest |Î_i|, descending; ties broken by smaller index.
std::vector<Index> top_k_indices(const ChowEstimate& c, Index k);

/// Exact Pr over the full cube that flipping coordinate i changes
/// sign(v·x + τ). Enumerates 2^d points; requires d <= 22.
double exact_influence(const Halfspace& h, Index i);

/// Exact Chow coefficients E[sign(v·x+τ)·x_i] for all i; requires d <= 22.
Vector exact_chow(const Halfspace& h);

/// Magnitudes at i and j exchanged, signs kept; i == j returns v unchanged.
Vector swap_vector(const Vector& v, Index i, Index j);

/// (v^π)_i = sign(v_i)·|v_{π(i)}| for a bijection π on [d].
Vector permute_abs(const Vector& v, std::span<const Index> pi);

/// Runs the magnitude-swap procedure: returns a permutation π that moves
/// magnitudes only inside {true top-k indices} ∪ {hat_indices} and maps
/// π(hat_indices[j]) = j-th largest-|v| index for every j.
std::vector<Index> build_swap_permutation(const Vector& v, std::span<const Index> hat_indices);

/// The j-th largest-|v| indices (descending magnitude, ties by smaller index).
std::vector<Index> top_k_by_magnitude(const Vector& v, Index k);

}  // namespace halfspace::influence

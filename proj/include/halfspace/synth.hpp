#pragma once

#include "halfspace/core.hpp"

#include <optional>
#include <string>
#include <vector>

namespace halfspace::synth {

/// Label/feature corruption spec. ObliviousContaminate replaces each sample
/// independently with an adversary draw with probability `rate`, which keeps
/// samples i.i.d. and bounds TV(output law, clean law) by `rate` by
/// construction. BoundaryFlip negates the ⌊rate·n⌋ labels with smallest
/// planted margin |v*·x + τ*| and needs the planted halfspace.
struct NoiseSpec {
  enum class Kind { None, RandomFlip, BoundaryFlip, ObliviousContaminate };
  Kind kind = Kind::None;
  double rate = 0.0;
  std::string adversary_id;  // corner_cluster | anti_dictator | dense_direction

  static NoiseSpec none() { return {}; }
  static NoiseSpec random_flip(double r) { return {Kind::RandomFlip, r, {}}; }
  static NoiseSpec boundary_flip(double r) { return {Kind::BoundaryFlip, r, {}}; }
  static NoiseSpec contaminate(double r, std::string adversary) {
    return {Kind::ObliviousContaminate, r, std::move(adversary)};
  }
};

std::vector<CubePoint> sample_uniform(Index d, Index n, SeededRng& rng);

LabeledSet label_with(const Halfspace& h, const std::vector<CubePoint>& pts);

/// The planted halfspace is required by BoundaryFlip and by corner_cluster.
LabeledSet apply_noise(const LabeledSet& s, const NoiseSpec& spec, SeededRng& rng,
                       const std::optional<Halfspace>& planted = std::nullopt);

/// One adversarial draw for the named oblivious adversary.
LabeledSample adversary_draw(const std::string& adversary_id, Index d, SeededRng& rng,
                             const std::optional<Halfspace>& planted);

/// Unit-norm weights with ‖v‖₄²/‖v‖₂² ≤ 2/√d (Gaussian, normalized,
/// rejection-resampled); bias uniform in [-1, 1].
Halfspace random_regular_halfspace(Index d, SeededRng& rng);

/// Exactly k nonzero integer weights in [-2^k, 2^k]\{0} on uniformly chosen
/// indices; integer bias with |τ| ≤ k·2^k.
Halfspace planted_sparse_halfspace(Index d, Index k, SeededRng& rng);

/// Uniform marginal labeled by a planted halfspace, then corrupted by the
/// given noise spec.
class SyntheticOracle final : public SampleOracle {
 public:
  SyntheticOracle(Halfspace planted, NoiseSpec noise)
      : planted_(std::move(planted)), noise_(std::move(noise)) {}

  Index dim() const override { return planted_.dim(); }
  LabeledSet draw(Index n, SeededRng& rng) const override;
  const Halfspace& planted() const { return planted_; }

 private:
  Halfspace planted_;
  NoiseSpec noise_;
};

}  // namespace halfspace::synth

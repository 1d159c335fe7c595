#pragma once

#include "halfspace/core.hpp"

#include <span>
#include <vector>

namespace halfspace::oracle {

/// Exact Pr_{x~cube}[predict(h,x) != predict(f,x)] by full enumeration; d <= 22.
double exact_error(const Halfspace& h, const Halfspace& f);

/// Exact activation z ↦ E_{x~cube}[sign(z + u·x)] for a unit vector u,
/// precomputed from the sorted multiset of tail sums; dim(u) <= 22.
class SigmaReg {
 public:
  explicit SigmaReg(const Vector& u);
  double operator()(double z) const;
  Index tail_dim() const { return dim_; }

 private:
  Index dim_;
  std::vector<double> sorted_sums_;
};

double exact_sigma_reg(const Vector& u, double z);

/// Minimum empirical error over every halfspace dichotomy realizable on the
/// coordinates in H; |H| <= 4.
double exact_opt_sparse(const LabeledSet& s, std::span<const Index> H);

/// All label patterns over the 2^h corners of {±1}^h realizable by some
/// halfspace (bit p of the mask = label of pattern p). Cached per h.
const std::vector<std::uint32_t>& realizable_dichotomies(int h);

}  // namespace halfspace::oracle

#include "halfspace/sparse.hpp"

#include "halfspace/solvers.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace halfspace::sparse {

std::optional<Halfspace> fit_sparse(std::span<const Index> H, const LabeledSet& s2,
                                    double lp_slack) {
  if (H.empty()) throw std::invalid_argument("fit_sparse: H must be nonempty");
  if (s2.empty()) throw std::invalid_argument("fit_sparse: s2 must be nonempty");
  const Index h = static_cast<Index>(H.size());
  const Index n = s2.size();

  solvers::LinearConstraintSystem sys;
  sys.a.resize(n, h + 1);
  sys.b = Vector::Ones(n);
  const Matrix xh = s2.restrict_matrix(H);
  for (Index r = 0; r < n; ++r) {
    const double y = s2.label(r);
    sys.a.row(r).head(h) = y * xh.row(r);
    sys.a(r, h) = y;
  }

  const double radius = std::pow(2.0, static_cast<double>(h)) * static_cast<double>(h + 1);
  const auto w = solvers::lp_feasible(sys, radius, lp_slack);
  if (!w) return std::nullopt;

  Halfspace out(embed(w->head(h), H, s2.dim()), (*w)[h]);
  for (Index r = 0; r < n; ++r)
    if (out.predict(s2.point(r)) != s2.label(r))
      throw std::runtime_error("fit_sparse: feasible point fails exact consistency check");
  return out;
}

}  // namespace halfspace::sparse

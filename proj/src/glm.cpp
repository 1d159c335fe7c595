#include "halfspace/glm.hpp"

#include "halfspace/solvers.hpp"

#include <cmath>
#include <stdexcept>

namespace halfspace::glm {

namespace {

constexpr double kTwoOverSqrtTwoPi = 0.79788456080286535588;  // √(2/π)
constexpr double kLn2 = 0.69314718055994530942;

double psi(double z) { return std::erf(z / std::sqrt(2.0)); }

double psi_antideriv(double z) {
  return z * std::erf(z / std::sqrt(2.0)) + kTwoOverSqrtTwoPi * (std::exp(-0.5 * z * z) - 1.0);
}

double sigmoid(double z) { return std::tanh(0.5 * z); }

double sigmoid_antideriv(double z) {
  const double a = std::abs(z);
  return a + 2.0 * std::log1p(std::exp(-a)) - 2.0 * kLn2;
}

// Shared shape of the two clipped kinds: base curve on [-(ρ-1), ρ-1], linear
// ramp of slope 1 - base(ρ-1) on the unit edges, sign(z) beyond.
double clipped_eval(double z, double rho, double (*base)(double)) {
  const double a = rho - 1.0;
  const double az = std::abs(z);
  if (az <= a) return base(z);
  if (az > rho) return z > 0.0 ? 1.0 : -1.0;
  const double p = base(a);
  const double ramp = p + (1.0 - p) * (az - a);
  return z > 0.0 ? ramp : -ramp;
}

double clipped_antideriv(double z, double rho, double (*base)(double),
                         double (*base_anti)(double)) {
  const double a = rho - 1.0;
  const double az = std::abs(z);  // the antiderivative of an odd activation is even
  if (az <= a) return base_anti(az);
  const double p = base(a);
  if (az <= rho) {
    const double t = az - a;
    return base_anti(a) + p * t + 0.5 * (1.0 - p) * t * t;
  }
  return base_anti(a) + p + 0.5 * (1.0 - p) + (az - rho);
}

}  // namespace

Activation Activation::psi_clipped(double rho) {
  if (rho < 1.0) throw std::invalid_argument("Activation: rho must be >= 1");
  return {Kind::PsiClipped, rho};
}

Activation Activation::sigmoid_clipped(double rho) {
  if (rho < 1.0) throw std::invalid_argument("Activation: rho must be >= 1");
  return {Kind::SigmoidClipped, rho};
}

double eval_activation(const Activation& a, double z) {
  switch (a.kind) {
    case Activation::Kind::GaussianCdfPsi:
      return psi(z);
    case Activation::Kind::PsiClipped:
      return clipped_eval(z, a.rho, psi);
    case Activation::Kind::Sigmoid:
      return sigmoid(z);
    case Activation::Kind::SigmoidClipped:
      return clipped_eval(z, a.rho, sigmoid);
  }
  return 0.0;
}

double antiderivative(const Activation& a, double z) {
  switch (a.kind) {
    case Activation::Kind::GaussianCdfPsi:
      return psi_antideriv(z);
    case Activation::Kind::PsiClipped:
      return clipped_antideriv(z, a.rho, psi, psi_antideriv);
    case Activation::Kind::Sigmoid:
      return sigmoid_antideriv(z);
    case Activation::Kind::SigmoidClipped:
      return clipped_antideriv(z, a.rho, sigmoid, sigmoid_antideriv);
  }
  return 0.0;
}

std::pair<double, Vector> matching_loss(const Activation& a, const Vector& w, const Vector& x,
                                        double y) {
  if (w.size() != x.size()) throw std::invalid_argument("matching_loss: dimension mismatch");
  const double z = w.dot(x);
  const double value = antiderivative(a, z) - y * z;
  Vector g = (eval_activation(a, z) - y) * x;
  return {value, std::move(g)};
}

double heavy_sample_formula(double eps, Index delta, double c_const) {
  const double dd = static_cast<double>(std::max<Index>(delta, 1));
  const double rho = c_const + c_const * std::log(dd / eps);
  return c_const * (dd * rho * rho / (eps * eps)) *
             std::log(std::max(dd * rho / eps, std::exp(1.0))) +
         c_const;
}

double sigmoid_sample_formula(double eps, Index d, double c_const) {
  const double dd = static_cast<double>(std::max<Index>(d, 1));
  const double rho = c_const * (std::log(dd / eps) + 1.0);
  return c_const * (dd * rho * rho / (eps * eps)) *
             std::log(std::max(dd * rho / eps, std::exp(1.0))) +
         c_const;
}

namespace {

GlmFit fit_matching_loss(const Activation& act, double w_max, const RealDataset& data,
                         double tol, double sample_formula) {
  const Index n = data.size();
  const Index delta = data.dim();
  if (n < 1) throw std::invalid_argument("glm fit: empty dataset");
  if (((data.y.array() != 1.0) && (data.y.array() != -1.0)).any())
    throw std::invalid_argument("glm fit: labels must be ±1");
  const double norm_cap = std::sqrt(static_cast<double>(delta)) * (1.0 + 1e-9);
  for (Index r = 0; r < n; ++r)
    if (data.x.row(r).norm() > norm_cap)
      throw std::invalid_argument("glm fit: sample norm exceeds sqrt(dim)");

  // lift samples to (x, 1)
  Matrix xt(n, delta + 1);
  xt.leftCols(delta) = data.x;
  xt.col(delta).setOnes();

  solvers::ConvexObjective obj;
  obj.dimension = delta + 1;
  obj.lipschitz_bound = 2.0 * std::sqrt(static_cast<double>(delta + 1));
  Vector z(n), av(n);
  obj.eval = [&](const Vector& w) {
    z.noalias() = xt * w;
    double total = 0.0;
    for (Index i = 0; i < n; ++i) {
      total += antiderivative(act, z[i]) - data.y[i] * z[i];
      av[i] = eval_activation(act, z[i]) - data.y[i];
    }
    const double inv = 1.0 / static_cast<double>(n);
    Vector g = (xt.transpose() * av) * inv;
    return solvers::Eval{total * inv, std::move(g)};
  };

  const auto res = solvers::ellipsoid_minimize(obj, w_max, tol);

  GlmFit fit;
  fit.weights = res.point.head(delta);
  fit.bias = res.point[delta];
  fit.surrogate_value = res.value;
  fit.iterations = res.iterations;
  fit.rho = act.rho;
  fit.samples = ParamValue{sample_formula, static_cast<double>(n)};
  fit.convexity_warning = res.convexity_warning;
  return fit;
}

}  // namespace

GlmFit find_heavy_coefficients(double eps, Index delta, double w_max, const RealDataset& data,
                               const GlmOptions& opts) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("find_heavy_coefficients: eps in (0,1)");
  if (w_max < 1.0) throw std::invalid_argument("find_heavy_coefficients: w_max >= 1");
  if (data.dim() != delta) throw std::invalid_argument("find_heavy_coefficients: dim mismatch");
  const double dd = static_cast<double>(std::max<Index>(delta, 1));
  const double rho = opts.c_const + opts.c_const * std::log(dd / eps);
  const Activation act = Activation::psi_clipped(std::max(rho, 1.0));
  const double tol = opts.tol > 0.0 ? opts.tol : eps / 8.0;
  return fit_matching_loss(act, w_max, data, tol, heavy_sample_formula(eps, delta, opts.c_const));
}

GlmFit learn_sigmoid_glm(double eps, double w_max, const RealDataset& data,
                         const GlmOptions& opts) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("learn_sigmoid_glm: eps in (0,1)");
  if (w_max < 1.0) throw std::invalid_argument("learn_sigmoid_glm: w_max >= 1");
  const double dd = static_cast<double>(std::max<Index>(data.dim(), 1));
  const double rho = opts.c_const * (std::log(dd / eps) + 1.0);
  const Activation act = Activation::sigmoid_clipped(std::max(rho, 1.0));
  const double tol = opts.tol > 0.0 ? opts.tol : eps / 8.0;
  return fit_matching_loss(act, w_max, data, tol,
                           sigmoid_sample_formula(eps, data.dim(), opts.c_const));
}

}  // namespace halfspace::glm

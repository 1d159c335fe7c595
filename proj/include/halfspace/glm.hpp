#pragma once

#include "halfspace/core.hpp"

#include <utility>

namespace halfspace::glm {

/// Monotone activations with range [-1,1]. Clipped kinds are 1-Lipschitz and
/// equal sign(z) outside [-ρ, ρ]: they follow the base curve on
/// [-(ρ-1), ρ-1] and interpolate linearly to ±1 on the two unit edges.
struct Activation {
  enum class Kind { GaussianCdfPsi, PsiClipped, Sigmoid, SigmoidClipped };
  Kind kind = Kind::GaussianCdfPsi;
  double rho = 1.0;

  static Activation psi() { return {Kind::GaussianCdfPsi, 1.0}; }
  static Activation psi_clipped(double rho);
  static Activation sigmoid() { return {Kind::Sigmoid, 1.0}; }
  static Activation sigmoid_clipped(double rho);
};

double eval_activation(const Activation& a, double z);

/// Closed-form A(z) = ∫₀^z a(t) dt; continuous, even for the odd kinds.
double antiderivative(const Activation& a, double z);

/// value = A(w·x) − y·(w·x); subgradient = (a(w·x) − y)·x.
std::pair<double, Vector> matching_loss(const Activation& a, const Vector& w, const Vector& x,
                                        double y);

/// Real-feature dataset for the GLM learners: rows of x paired with ±1 labels.
struct RealDataset {
  Matrix x;  // n×Δ
  Vector y;  // entries ±1

  Index size() const { return y.size(); }
  Index dim() const { return x.cols(); }
};

struct GlmFit {
  Vector weights;           // length Δ
  double bias = 0.0;
  double surrogate_value = 0.0;  // mean matching loss at the fit
  Index iterations = 0;
  double rho = 0.0;
  ParamValue samples;       // formula count vs the n actually used
  bool convexity_warning = false;
};

struct GlmOptions {
  double c_const = 4.0;
  double tol = 0.0;  // ellipsoid accuracy; 0 → eps/8
};

/// Nominal sample-count formulas; callers clamp by their cap and record both.
double heavy_sample_formula(double eps, Index delta, double c_const);
double sigmoid_sample_formula(double eps, Index d, double c_const);

/// Fits a clipped-ψ GLM on the lifted samples (x,1) by ellipsoid minimization
/// of the empirical matching loss over ‖w‖₂ ≤ w_max, ρ = C + C·log(Δ/ε).
/// Requires ‖x‖₂ ≤ √Δ per row (Δ = 0 is the bias-only fit).
GlmFit find_heavy_coefficients(double eps, Index delta, double w_max, const RealDataset& data,
                               const GlmOptions& opts = {});

/// Same pipeline with the clipped sigmoid, ρ = C·(log(d/ε)+1).
GlmFit learn_sigmoid_glm(double eps, double w_max, const RealDataset& data,
                         const GlmOptions& opts = {});

}  // namespace halfspace::glm

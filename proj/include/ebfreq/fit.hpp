#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ebfreq/dataset.hpp"
#include "ebfreq/likelihood.hpp"
#include "ebfreq/optimizer.hpp"
#include "ebfreq/prior_model.hpp"

namespace ebfreq {

enum class ModelFamily { windowed, eb1, eb2, spline };

ModelFamily parse_model_family(const std::string& name);
std::string to_string(ModelFamily family);

// Lower bound applied to every Beta parameter during optimization.
inline constexpr double kParameterFloor = 1e-8;

struct FitOptions {
  int n_basis = 8;
  bool symmetric_spline = true;
  // Windowed bins with fewer markers are merged into their nearest neighbour.
  std::size_t min_bin = 50;
  // Window half-width for merging booster frequencies; 0 keeps one bin per frequency.
  double delta = 0.0;
  // Perturbed restarts in addition to the base start (parametric and spline fits).
  int n_starts = 3;
  unsigned threads = 1;
  OptimizerOptions optimizer{};
};

struct FitResult {
  PriorModel model;
  double neg_log_lik = 0.0;
  int iterations = 0;
  bool converged = false;
  double gradient_norm = 0.0;  // unused (0) for windowed fits
  std::size_t n_markers = 0;
  std::string dataset_hash;
};

enum class Transform { softplus, exp };

// theta = floor + softplus(u) or floor + exp(u).
struct ParameterTransform {
  Transform kind = Transform::softplus;
  double floor = 0.0;

  double forward(double u) const;
  double derivative(double u) const;
  double inverse(double theta) const;
};

// A prior family whose a and b are linear in a positive coefficient vector,
// exposed in unconstrained coordinates for the optimizer.
class FitProblem {
 public:
  using ModelBuilder = std::function<PriorModel(std::span<const double> theta)>;

  FitProblem(DesignObjective objective, std::vector<ParameterTransform> transforms, ModelBuilder builder);

  std::size_t size() const { return transforms_.size(); }

  // Negative log-likelihood and its gradient with respect to u.
  double operator()(std::span<const double> u, std::span<double> grad) const;

  // Negative log-likelihood and its gradient with respect to theta.
  double theta_gradient(std::span<const double> u, std::span<double> grad) const;

  const std::vector<ParameterTransform>& transforms() const { return transforms_; }
  std::vector<double> to_theta(std::span<const double> u) const;
  std::vector<double> to_unconstrained(std::span<const double> theta) const;
  PriorModel to_model(std::span<const double> u) const;

 private:
  DesignObjective objective_;
  std::vector<ParameterTransform> transforms_;
  ModelBuilder builder_;
};

// Coefficients: (beta0, beta_1..beta_K).
FitProblem make_eb1_problem(const MarkerDataset& data, unsigned threads = 1);
// Coefficients: (beta0, beta1, beta0 + beta2, beta0 + beta1 + beta3), i.e. the prior
// parameters at the endpoints are the free quantities so they stay positive.
FitProblem make_eb2_problem(const MarkerDataset& data, unsigned threads = 1);
// Coefficients: theta[k][j] row-major, then gamma[k][j] when asymmetric.
FitProblem make_spline_problem(const MarkerDataset& data, int n_basis, bool symmetric, unsigned threads = 1);

struct WindowSpan {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t n_markers = 0;
};

// Per-frequency bins (optionally merged into windows of width 2*delta), then
// bins below min_bin markers merged into their nearest neighbour.
std::vector<WindowSpan> build_windows(const MarkerDataset& data, std::size_t min_bin, double delta);

FitResult fit_windowed(const MarkerDataset& data, const FitOptions& options = {});
FitResult fit_parametric(const MarkerDataset& data, ModelFamily family, const FitOptions& options = {});
FitResult fit_spline(const MarkerDataset& data, const FitOptions& options = {});
FitResult fit_model(const MarkerDataset& data, ModelFamily family, const FitOptions& options = {});

}  // namespace ebfreq

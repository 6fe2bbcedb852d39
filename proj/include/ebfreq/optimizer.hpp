#pragma once

#include <functional>
#include <span>
#include <vector>

namespace ebfreq {

// Returns f(x) and writes the gradient into grad (same size as x).
using ObjectiveFn = std::function<double(std::span<const double> x, std::span<double> grad)>;

struct OptimizerOptions {
  int max_iterations = 500;
  // Convergence needs both a relative objective change and a gradient norm below these.
  double relative_tolerance = 1e-10;
  double gradient_tolerance = 1e-6;
  // Record the objective after every accepted step.
  bool keep_trace = false;
};

struct OptimizerResult {
  std::vector<double> x;
  double value = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  std::vector<double> trace;
};

// BFGS with an Armijo backtracking line search. Accepted steps never increase f.
OptimizerResult minimize_bfgs(const ObjectiveFn& objective, std::vector<double> x0,
                              const OptimizerOptions& options = {});

}  // namespace ebfreq

#include "ebfreq/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ebfreq {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

// Dense inverse-Hessian approximation, row-major.
class InverseHessian {
 public:
  explicit InverseHessian(std::size_t n) : n_(n), h_(n * n, 0.0) { reset(1.0); }

  void reset(double scale) {
    std::fill(h_.begin(), h_.end(), 0.0);
    for (std::size_t i = 0; i < n_; ++i) h_[i * n_ + i] = scale;
  }

  void apply(std::span<const double> v, std::span<double> out) const {
    for (std::size_t i = 0; i < n_; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n_; ++j) s += h_[i * n_ + j] * v[j];
      out[i] = s;
    }
  }

  // Standard BFGS update with step s and gradient change y (requires s.y > 0).
  void update(std::span<const double> s, std::span<const double> y) {
    const double sy = dot(s, y);
    std::vector<double> hy(n_);
    apply(y, hy);
    const double yhy = dot(y, hy);
    const double c1 = (sy + yhy) / (sy * sy);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        h_[i * n_ + j] += c1 * s[i] * s[j] - (hy[i] * s[j] + s[i] * hy[j]) / sy;
      }
    }
  }

 private:
  std::size_t n_;
  std::vector<double> h_;
};

}  // namespace

OptimizerResult minimize_bfgs(const ObjectiveFn& objective, std::vector<double> x0,
                              const OptimizerOptions& options) {
  const std::size_t n = x0.size();
  OptimizerResult result;
  result.x = std::move(x0);

  std::vector<double> grad(n);
  double value = objective(result.x, grad);
  ++result.evaluations;
  double gnorm = norm(grad);
  if (options.keep_trace) result.trace.push_back(value);

  InverseHessian hinv(n);
  hinv.reset(1.0 / std::max(1.0, gnorm));

  std::vector<double> direction(n), x_new(n), grad_new(n), s(n), y(n);
  bool fresh_start = true;

  if (!std::isfinite(value)) {
    result.value = value;
    result.gradient_norm = gnorm;
    return result;
  }
  if (gnorm < options.gradient_tolerance) {
    result.converged = true;
  }

  while (!result.converged && result.iterations < options.max_iterations) {
    hinv.apply(grad, direction);
    for (double& d : direction) d = -d;
    double slope = dot(direction, grad);
    if (!(slope < 0.0)) {
      // Lost descent; fall back to steepest descent.
      hinv.reset(1.0 / std::max(1.0, gnorm));
      hinv.apply(grad, direction);
      for (double& d : direction) d = -d;
      slope = dot(direction, grad);
      fresh_start = true;
    }

    // Backtracking with safeguarded interpolation. Close to the optimum the objective stops
    // resolving changes, so an approximate Wolfe test on the directional derivative is also accepted.
    constexpr double kArmijo = 1e-4;
    constexpr double kCurvature = 0.9;
    const double resolution = 1e-12 * std::max(1.0, std::abs(value));
    double step = 1.0;
    double value_new = std::numeric_limits<double>::infinity();
    bool accepted = false;
    for (int trial = 0; trial < 60; ++trial) {
      for (std::size_t i = 0; i < n; ++i) x_new[i] = result.x[i] + step * direction[i];
      value_new = objective(x_new, grad_new);
      ++result.evaluations;
      if (!std::isfinite(value_new)) {
        step *= 0.1;
        continue;
      }
      const double slope_new = dot(direction, grad_new);
      const bool armijo = value_new <= value + kArmijo * step * slope;
      const bool approx_wolfe = value_new <= value + resolution && slope_new >= kCurvature * slope &&
                                slope_new <= (1.0 - 2.0 * kArmijo) * -slope;
      if (armijo || approx_wolfe) {
        accepted = true;
        break;
      }
      double next = 0.5 * step;
      if (value_new <= value + resolution && slope_new > 0.0) {
        next = step * -slope / (slope_new - slope);
      } else {
        const double denom = 2.0 * (value_new - value - slope * step);
        if (denom > 0.0) next = -slope * step * step / denom;
      }
      step = std::clamp(next, 0.1 * step, 0.5 * step);
    }

    if (!accepted) {
      if (gnorm < options.gradient_tolerance) {
        result.converged = true;
      } else if (!fresh_start) {
        // Stale curvature; retry once from a scaled identity.
        hinv.reset(1.0 / std::max(1.0, gnorm));
        fresh_start = true;
        continue;
      }
      break;
    }

    for (std::size_t i = 0; i < n; ++i) {
      s[i] = x_new[i] - result.x[i];
      y[i] = grad_new[i] - grad[i];
    }
    const double rel_change = std::abs(value - value_new) / std::max(1.0, std::abs(value_new));
    result.x.swap(x_new);
    grad.swap(grad_new);
    value = value_new;
    gnorm = norm(grad);
    ++result.iterations;
    if (options.keep_trace) result.trace.push_back(value);

    const double sy = dot(s, y);
    if (sy > 1e-12 * norm(s) * norm(y)) {
      if (fresh_start) hinv.reset(sy / dot(y, y));
      hinv.update(s, y);
      fresh_start = false;
    }

    if (gnorm < options.gradient_tolerance &&
        (rel_change < options.relative_tolerance || gnorm < 1e-3 * options.gradient_tolerance)) {
      result.converged = true;
    }
  }

  result.value = value;
  result.gradient_norm = gnorm;
  return result;
}

}  // namespace ebfreq

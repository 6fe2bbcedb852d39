#include "ebfreq/fit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "ebfreq/bspline.hpp"
#include "ebfreq/error.hpp"
#include "ebfreq/random.hpp"

namespace ebfreq {

namespace {

// Seeds for the deterministic restarts around the base start.
constexpr std::uint64_t kRestartSeed = 0x5eed0f17ULL;
constexpr double kRestartSpread = 1.0;

constexpr int kMaxRescues = 3;
constexpr double kPinnedDerivative = 1e-3;
constexpr double kRescueValue = 0.5;

// a + b beyond this, or a or b below kBoundaryLow, marks a windowed bin as a boundary fit.
constexpr double kBoundaryHigh = 1e6;
constexpr double kBoundaryLow = 1e-6;

double softplus(double u) { return u > 30.0 ? u + std::log1p(std::exp(-u)) : std::log1p(std::exp(u)); }

double sigmoid(double u) {
  if (u >= 0.0) return 1.0 / (1.0 + std::exp(-u));
  const double e = std::exp(u);
  return e / (1.0 + e);
}

std::vector<double> booster_mean_trials(const MarkerDataset& data) {
  std::vector<double> mean(data.booster_count(), 0.0);
  for (const auto& r : data.records()) {
    for (std::size_t k = 0; k < mean.size(); ++k) mean[k] += static_cast<double>(r.boosters[k].trials());
  }
  for (double& m : mean) m /= static_cast<double>(std::max<std::size_t>(1, data.size()));
  return mean;
}

void require_boosters(const MarkerDataset& data, const char* what) {
  if (data.empty()) throw data_error(std::string(what) + ": dataset is empty");
  if (data.booster_count() == 0) throw data_error(std::string(what) + ": dataset has no booster samples");
}

bool lexicographically_less(const std::vector<double>& a, const std::vector<double>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Runs the base start plus options.n_starts perturbed restarts; keeps the lowest objective,
// breaking ties by the smaller parameter vector.
OptimizerResult multi_start(const FitProblem& problem, const std::vector<double>& base_theta,
                            const FitOptions& options) {
  const std::vector<double> base_u = problem.to_unconstrained(base_theta);
  const ObjectiveFn fn = [&problem](std::span<const double> u, std::span<double> g) { return problem(u, g); };

  OptimizerResult best;
  bool have_best = false;
  for (int start = 0; start <= options.n_starts; ++start) {
    std::vector<double> u0 = base_u;
    if (start > 0) {
      RandomStream rng(kRestartSeed, static_cast<std::uint64_t>(start));
      for (double& u : u0) u += kRestartSpread * (2.0 * rng.uniform() - 1.0);
    }
    OptimizerResult r = minimize_bfgs(fn, std::move(u0), options.optimizer);
    // A coefficient pinned near its floor has a vanishing transform derivative, so the optimizer
    // can stop there although the likelihood still improves as it grows. Restart such coordinates.
    for (int rescue = 0; rescue < kMaxRescues && std::isfinite(r.value); ++rescue) {
      std::vector<double> grad(problem.size());
      problem.theta_gradient(r.x, grad);
      std::vector<double> u = r.x;
      bool moved = false;
      for (std::size_t i = 0; i < u.size(); ++i) {
        const ParameterTransform& t = problem.transforms()[i];
        if (t.derivative(u[i]) < kPinnedDerivative && grad[i] < 0.0) {
          u[i] = t.inverse(t.floor + kRescueValue);
          moved = true;
        }
      }
      if (!moved) break;
      OptimizerResult again = minimize_bfgs(fn, std::move(u), options.optimizer);
      again.iterations += r.iterations;
      again.evaluations += r.evaluations;
      if (!(again.value < r.value)) break;
      r = std::move(again);
    }
    if (!std::isfinite(r.value)) continue;
    const bool better = !have_best || r.value < best.value ||
                        (r.value == best.value && lexicographically_less(r.x, best.x));
    if (better) {
      best = std::move(r);
      have_best = true;
    }
  }
  if (!have_best) throw model_error("fit: no start produced a finite likelihood");
  return best;
}

FitResult finish(const FitProblem& problem, const OptimizerResult& opt, const MarkerDataset& data) {
  FitResult result;
  result.model = problem.to_model(opt.x);
  result.neg_log_lik = neg_log_likelihood(result.model, data);
  result.iterations = opt.iterations;
  result.converged = opt.converged;
  result.gradient_norm = opt.gradient_norm;
  result.n_markers = data.size();
  result.dataset_hash = data.content_hash();
  return result;
}

LinearDesign empty_design(std::size_t n_groups, std::size_t n_params) {
  LinearDesign d;
  d.n_params = n_params;
  d.a_rows.assign(n_groups * n_params, 0.0);
  d.b_rows.assign(n_groups * n_params, 0.0);
  return d;
}

// Method-of-moments Beta(a, b) start for one window.
std::vector<double> moment_start(std::span<const MarkerGroup> groups) {
  double sum = 0.0, sum_sq = 0.0, count = 0.0, trials = 0.0;
  for (const auto& g : groups) {
    for (const auto& [y, c] : g.successes) {
      const double q = static_cast<double>(y) / static_cast<double>(g.trials);
      sum += c * q;
      sum_sq += c * q * q;
      count += c;
      trials += c * static_cast<double>(g.trials);
    }
  }
  const double m = std::clamp(sum / count, 1e-3, 1.0 - 1e-3);
  const double v = std::max(0.0, sum_sq / count - (sum / count) * (sum / count));
  const double n = trials / count;
  const double r = v / (m * (1.0 - m));
  double nu = 1e4;
  if (n * r - 1.0 > 0.0 && n > 1.0) nu = (n - 1.0) / (n * r - 1.0) - 1.0;
  nu = std::clamp(nu, 0.1, 1e4);
  return {m * nu, (1.0 - m) * nu};
}

}  // namespace

ModelFamily parse_model_family(const std::string& name) {
  if (name == "windowed") return ModelFamily::windowed;
  if (name == "eb1") return ModelFamily::eb1;
  if (name == "eb2") return ModelFamily::eb2;
  if (name == "spline" || name == "eb3") return ModelFamily::spline;
  throw domain_error("unknown model family '" + name + "' (expected windowed, eb1, eb2 or spline)");
}

std::string to_string(ModelFamily family) {
  switch (family) {
    case ModelFamily::windowed: return "windowed";
    case ModelFamily::eb1: return "eb1";
    case ModelFamily::eb2: return "eb2";
    case ModelFamily::spline: return "spline";
  }
  return "unknown";
}

double ParameterTransform::forward(double u) const {
  return floor + (kind == Transform::softplus ? softplus(u) : std::exp(u));
}

double ParameterTransform::derivative(double u) const {
  return kind == Transform::softplus ? sigmoid(u) : std::exp(u);
}

double ParameterTransform::inverse(double theta) const {
  const double x = std::max(theta - floor, 1e-12);
  if (kind == Transform::exp) return std::log(x);
  return x > 30.0 ? x + std::log(-std::expm1(-x)) : std::log(std::expm1(x));
}

FitProblem::FitProblem(DesignObjective objective, std::vector<ParameterTransform> transforms,
                       ModelBuilder builder)
    : objective_(std::move(objective)), transforms_(std::move(transforms)), builder_(std::move(builder)) {
  if (transforms_.size() != objective_.n_params()) {
    throw domain_error("FitProblem: one transform per coefficient is required");
  }
}

double FitProblem::operator()(std::span<const double> u, std::span<double> grad) const {
  const std::vector<double> theta = to_theta(u);
  const double value = objective_.evaluate(theta, grad);
  for (std::size_t i = 0; i < u.size(); ++i) grad[i] *= transforms_[i].derivative(u[i]);
  return value;
}

double FitProblem::theta_gradient(std::span<const double> u, std::span<double> grad) const {
  return objective_.evaluate(to_theta(u), grad);
}

std::vector<double> FitProblem::to_theta(std::span<const double> u) const {
  std::vector<double> theta(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) theta[i] = transforms_[i].forward(u[i]);
  return theta;
}

std::vector<double> FitProblem::to_unconstrained(std::span<const double> theta) const {
  std::vector<double> u(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) u[i] = transforms_[i].inverse(theta[i]);
  return u;
}

PriorModel FitProblem::to_model(std::span<const double> u) const { return builder_(to_theta(u)); }

FitProblem make_eb1_problem(const MarkerDataset& data, unsigned threads) {
  require_boosters(data, "EB1 fit");
  const std::size_t k = data.booster_count();
  auto groups = group_markers(data);
  LinearDesign design = empty_design(groups.size(), k + 1);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    double* arow = design.a_rows.data() + g * (k + 1);
    double* brow = design.b_rows.data() + g * (k + 1);
    arow[0] = brow[0] = 1.0;
    for (std::size_t j = 0; j < k; ++j) {
      arow[j + 1] = groups[g].profile[j];
      brow[j + 1] = 1.0 - groups[g].profile[j];
    }
  }
  std::vector<ParameterTransform> transforms(k + 1, ParameterTransform{Transform::softplus, 0.0});
  transforms[0].floor = kParameterFloor;
  return FitProblem(DesignObjective(std::move(groups), std::move(design), threads), std::move(transforms),
                    [](std::span<const double> theta) -> PriorModel {
                      return Eb1Model{theta[0], std::vector<double>(theta.begin() + 1, theta.end())};
                    });
}

FitProblem make_eb2_problem(const MarkerDataset& data, unsigned threads) {
  require_boosters(data, "EB2 fit");
  if (data.booster_count() != 1) {
    throw domain_error("EB2 is defined for exactly one booster sample");
  }
  auto groups = group_markers(data);
  LinearDesign design = empty_design(groups.size(), 4);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    double* arow = design.a_rows.data() + g * 4;
    double* brow = design.b_rows.data() + g * 4;
    const double p = groups[g].profile[0];
    if (p == 0.0) {
      arow[2] = 1.0;  // a(0) = beta0 + beta2
      brow[3] = 1.0;  // b(0) = beta0 + beta1 + beta3
    } else if (p == 1.0) {
      arow[3] = 1.0;
      brow[2] = 1.0;
    } else {
      arow[0] = brow[0] = 1.0;
      arow[1] = p;
      brow[1] = 1.0 - p;
    }
  }
  std::vector<ParameterTransform> transforms{
      {Transform::softplus, kParameterFloor},
      {Transform::softplus, 0.0},
      {Transform::softplus, kParameterFloor},
      {Transform::softplus, kParameterFloor},
  };
  return FitProblem(DesignObjective(std::move(groups), std::move(design), threads), std::move(transforms),
                    [](std::span<const double> theta) -> PriorModel {
                      return Eb2Model{theta[0], theta[1], theta[2] - theta[0], theta[3] - theta[0] - theta[1]};
                    });
}

FitProblem make_spline_problem(const MarkerDataset& data, int n_basis, bool symmetric, unsigned threads) {
  require_boosters(data, "spline fit");
  const CubicBSplineBasis basis(n_basis);
  const std::size_t k = data.booster_count();
  const auto nb = static_cast<std::size_t>(n_basis);
  const std::size_t block = k * nb;
  const std::size_t n_params = symmetric ? block : 2 * block;

  auto groups = group_markers(data);
  LinearDesign design = empty_design(groups.size(), n_params);
  std::vector<double> na(nb), nbv(nb);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    double* arow = design.a_rows.data() + g * n_params;
    double* brow = design.b_rows.data() + g * n_params;
    for (std::size_t kk = 0; kk < k; ++kk) {
      const double p = groups[g].profile[kk];
      basis.evaluate(p, na);
      basis.evaluate(1.0 - p, nbv);
      const std::size_t b_offset = symmetric ? 0 : block;
      for (std::size_t j = 0; j < nb; ++j) {
        arow[kk * nb + j] = na[j];
        brow[b_offset + kk * nb + j] = nbv[j];
      }
    }
  }
  std::vector<ParameterTransform> transforms(n_params, ParameterTransform{Transform::softplus, kParameterFloor});
  return FitProblem(
      DesignObjective(std::move(groups), std::move(design), threads), std::move(transforms),
      [n_basis, k, nb, symmetric](std::span<const double> theta) -> PriorModel {
        SplineModel m;
        m.n_basis = n_basis;
        m.symmetric = symmetric;
        for (std::size_t kk = 0; kk < k; ++kk) {
          m.theta.emplace_back(theta.begin() + static_cast<std::ptrdiff_t>(kk * nb),
                               theta.begin() + static_cast<std::ptrdiff_t>((kk + 1) * nb));
          if (!symmetric) {
            const std::size_t off = k * nb + kk * nb;
            m.gamma.emplace_back(theta.begin() + static_cast<std::ptrdiff_t>(off),
                                 theta.begin() + static_cast<std::ptrdiff_t>(off + nb));
          }
        }
        return m;
      });
}

std::vector<WindowSpan> build_windows(const MarkerDataset& data, std::size_t min_bin, double delta) {
  if (data.booster_count() != 1) {
    throw domain_error("windowed prior is defined for exactly one booster sample");
  }
  if (delta < 0.0) throw domain_error("window half-width must be nonnegative");

  std::map<double, std::size_t> per_frequency;
  for (const auto& r : data.records()) ++per_frequency[r.boosters[0].proportion()];

  std::vector<WindowSpan> bins;
  for (const auto& [p, count] : per_frequency) {
    if (!bins.empty() && delta > 0.0 && p - bins.back().lo < 2.0 * delta) {
      bins.back().hi = p;
      bins.back().n_markers += count;
    } else {
      bins.push_back({p, p, count});
    }
  }

  // Merge the smallest undersized bin into its nearer neighbour until all are large enough.
  while (bins.size() > 1) {
    std::size_t smallest = bins.size();
    for (std::size_t i = 0; i < bins.size(); ++i) {
      if (bins[i].n_markers < min_bin && (smallest == bins.size() || bins[i].n_markers < bins[smallest].n_markers)) {
        smallest = i;
      }
    }
    if (smallest == bins.size()) break;
    std::size_t target;
    if (smallest == 0) {
      target = 1;
    } else if (smallest + 1 == bins.size()) {
      target = smallest - 1;
    } else {
      const double gap_left = bins[smallest].lo - bins[smallest - 1].hi;
      const double gap_right = bins[smallest + 1].lo - bins[smallest].hi;
      target = gap_right < gap_left ? smallest + 1 : smallest - 1;
    }
    const std::size_t lo = std::min(smallest, target);
    bins[lo].hi = bins[lo + 1].hi;
    bins[lo].n_markers += bins[lo + 1].n_markers;
    bins.erase(bins.begin() + static_cast<std::ptrdiff_t>(lo + 1));
  }
  return bins;
}

FitResult fit_windowed(const MarkerDataset& data, const FitOptions& options) {
  if (data.empty()) throw data_error("windowed fit: dataset is empty");
  const auto spans = build_windows(data, options.min_bin, options.delta);
  const auto groups = group_markers(data);

  WindowedModel model;
  model.delta = options.delta;
  int iterations = 0;
  bool all_converged = true;
  std::size_t first = 0;
  for (const auto& span : spans) {
    std::size_t last = first;
    while (last < groups.size() && groups[last].profile[0] <= span.hi) ++last;
    std::vector<MarkerGroup> bin_groups(groups.begin() + static_cast<std::ptrdiff_t>(first),
                                        groups.begin() + static_cast<std::ptrdiff_t>(last));
    first = last;

    const std::vector<double> start = moment_start(bin_groups);
    LinearDesign design = empty_design(bin_groups.size(), 2);
    for (std::size_t g = 0; g < bin_groups.size(); ++g) {
      design.a_rows[g * 2] = 1.0;
      design.b_rows[g * 2 + 1] = 1.0;
    }
    const FitProblem problem(DesignObjective(std::move(bin_groups), std::move(design), 1),
                             std::vector<ParameterTransform>(2, {Transform::exp, kParameterFloor}),
                             [](std::span<const double>) -> PriorModel {
                               return Eb1Model{0.0, {}};  // unused; bins are assembled below
                             });
    const ObjectiveFn fn = [&problem](std::span<const double> u, std::span<double> g) { return problem(u, g); };
    const OptimizerResult opt = minimize_bfgs(fn, problem.to_unconstrained(start), options.optimizer);
    const std::vector<double> theta = problem.to_theta(opt.x);

    WindowBin bin;
    bin.lo = span.lo;
    bin.hi = span.hi;
    bin.params = BetaParams(theta[0], theta[1]);
    bin.n_markers = span.n_markers;
    bin.converged = opt.converged;
    bin.boundary = theta[0] < kBoundaryLow || theta[1] < kBoundaryLow || theta[0] + theta[1] > kBoundaryHigh;
    model.bins.push_back(bin);
    iterations += opt.iterations;
    all_converged = all_converged && opt.converged;
  }

  FitResult result;
  result.model = model;
  result.neg_log_lik = neg_log_likelihood(result.model, data);
  result.iterations = iterations;
  result.converged = all_converged;
  result.n_markers = data.size();
  result.dataset_hash = data.content_hash();
  return result;
}

FitResult fit_parametric(const MarkerDataset& data, ModelFamily family, const FitOptions& options) {
  if (family != ModelFamily::eb1 && family != ModelFamily::eb2) {
    throw domain_error("fit_parametric handles EB1 and EB2 only");
  }
  const std::vector<double> trials = booster_mean_trials(data);
  if (family == ModelFamily::eb1) {
    const FitProblem problem = make_eb1_problem(data, options.threads);
    std::vector<double> base{0.5};
    for (double n : trials) base.push_back(0.5 * n / static_cast<double>(trials.size()));
    return finish(problem, multi_start(problem, base, options), data);
  }
  const FitProblem problem = make_eb2_problem(data, options.threads);
  const double beta1 = 0.5 * trials[0];
  const std::vector<double> base{0.5, beta1, 0.5, 0.5 + beta1};
  return finish(problem, multi_start(problem, base, options), data);
}

FitResult fit_spline(const MarkerDataset& data, const FitOptions& options) {
  const FitResult eb1 = fit_parametric(data, ModelFamily::eb1, options);
  const auto& linear = std::get<Eb1Model>(eb1.model);

  const FitProblem problem = make_spline_problem(data, options.n_basis, options.symmetric_spline, options.threads);
  const CubicBSplineBasis basis(options.n_basis);
  const std::vector<double> xi = basis.greville();
  const std::size_t k = linear.betas.size();

  // Coefficients at the Greville points reproduce the linear EB1 prior exactly.
  std::vector<double> base;
  const int blocks = options.symmetric_spline ? 1 : 2;
  for (int copy = 0; copy < blocks; ++copy) {
    for (std::size_t kk = 0; kk < k; ++kk) {
      for (double x : xi) {
        base.push_back(std::max(linear.beta0 / static_cast<double>(k) + linear.betas[kk] * x,
                                2.0 * kParameterFloor));
      }
    }
  }
  return finish(problem, multi_start(problem, base, options), data);
}

FitResult fit_model(const MarkerDataset& data, ModelFamily family, const FitOptions& options) {
  switch (family) {
    case ModelFamily::windowed: return fit_windowed(data, options);
    case ModelFamily::eb1:
    case ModelFamily::eb2: return fit_parametric(data, family, options);
    case ModelFamily::spline: return fit_spline(data, options);
  }
  throw domain_error("unknown model family");
}

}  // namespace ebfreq

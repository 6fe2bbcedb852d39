#include "ebfreq/prior_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ebfreq/bspline.hpp"
#include "ebfreq/error.hpp"

namespace ebfreq {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr int kAffinityQuadratureIntervals = 1024;

BetaParams checked_params(double a, double b, const char* variant) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    std::ostringstream msg;
    msg << variant << " prior is not positive at this booster profile (a=" << a << ", b=" << b << ")";
    throw model_error(msg.str());
  }
  return BetaParams(a, b);
}

void require_dimension(std::size_t expected, const BoosterProfile& profile) {
  if (profile.size() != expected) {
    throw model_error("booster profile has " + std::to_string(profile.size()) +
                      " frequencies but the model expects " + std::to_string(expected));
  }
}

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

BetaParams eval_windowed(const WindowedModel& m, const BoosterProfile& profile) {
  require_dimension(1, profile);
  const double p = profile[0];
  const auto it = std::lower_bound(m.bins.begin(), m.bins.end(), p,
                                   [](const WindowBin& bin, double value) { return bin.hi < value; });
  if (it == m.bins.end() || p < it->lo) {
    throw model_error("no window covers booster frequency " + std::to_string(p));
  }
  return it->params;
}

BetaParams eval_eb1(const Eb1Model& m, const BoosterProfile& profile) {
  require_dimension(m.betas.size(), profile);
  double a = m.beta0;
  double b = m.beta0;
  for (std::size_t k = 0; k < m.betas.size(); ++k) {
    a += m.betas[k] * profile[k];
    b += m.betas[k] * (1.0 - profile[k]);
  }
  return checked_params(a, b, "EB1");
}

BetaParams eval_eb2(const Eb2Model& m, const BoosterProfile& profile) {
  require_dimension(1, profile);
  const double p = profile[0];
  const double at_zero = p == 0.0 ? 1.0 : 0.0;
  const double at_one = p == 1.0 ? 1.0 : 0.0;
  const double a = m.beta0 + m.beta1 * p + m.beta2 * at_zero + m.beta3 * at_one;
  const double b = m.beta0 + m.beta1 * (1.0 - p) + m.beta2 * at_one + m.beta3 * at_zero;
  return checked_params(a, b, "EB2");
}

BetaParams eval_spline(const SplineModel& m, const BoosterProfile& profile) {
  require_dimension(m.theta.size(), profile);
  const CubicBSplineBasis basis(m.n_basis);
  const auto& gamma = m.symmetric ? m.theta : m.gamma;
  std::vector<double> na(static_cast<std::size_t>(m.n_basis));
  std::vector<double> nb(static_cast<std::size_t>(m.n_basis));
  double a = 0.0;
  double b = 0.0;
  for (std::size_t k = 0; k < m.theta.size(); ++k) {
    basis.evaluate(profile[k], na);
    basis.evaluate(1.0 - profile[k], nb);
    for (std::size_t j = 0; j < na.size(); ++j) {
      a += na[j] * m.theta[k][j];
      b += nb[j] * gamma[k][j];
    }
  }
  return checked_params(a, b, "spline");
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Composite Simpson over [0, 1] of sum_j [N_j(p) theta_j + N_j(1-p) gamma_j].
double spline_booster_integral(const CubicBSplineBasis& basis, const std::vector<double>& theta,
                               const std::vector<double>& gamma) {
  const int n = kAffinityQuadratureIntervals;
  const double h = 1.0 / n;
  std::vector<double> na(theta.size());
  std::vector<double> nb(theta.size());
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double p = i == n ? 1.0 : i * h;
    basis.evaluate(p, na);
    basis.evaluate(1.0 - p, nb);
    double f = 0.0;
    for (std::size_t j = 0; j < theta.size(); ++j) f += na[j] * theta[j] + nb[j] * gamma[j];
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    sum += w * f;
  }
  return sum * h / 3.0;
}

}  // namespace

BoosterProfile::BoosterProfile(std::vector<double> freqs) : freqs_(std::move(freqs)) {
  if (freqs_.empty()) {
    throw domain_error("BoosterProfile: at least one booster frequency is required");
  }
  for (double p : freqs_) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw domain_error("BoosterProfile: frequency " + std::to_string(p) + " outside [0, 1]");
    }
  }
}

BoosterProfile BoosterProfile::complement() const {
  std::vector<double> c(freqs_.size());
  std::transform(freqs_.begin(), freqs_.end(), c.begin(), [](double p) { return 1.0 - p; });
  return BoosterProfile(std::move(c));
}

std::string variant_name(const PriorModel& model) {
  return std::visit(overloaded{
                        [](const WindowedModel&) { return std::string("windowed"); },
                        [](const Eb1Model&) { return std::string("eb1"); },
                        [](const Eb2Model&) { return std::string("eb2"); },
                        [](const SplineModel&) { return std::string("spline"); },
                    },
                    model);
}

std::size_t booster_count(const PriorModel& model) {
  return std::visit(overloaded{
                        [](const WindowedModel&) -> std::size_t { return 1; },
                        [](const Eb1Model& m) -> std::size_t { return m.betas.size(); },
                        [](const Eb2Model&) -> std::size_t { return 1; },
                        [](const SplineModel& m) -> std::size_t { return m.theta.size(); },
                    },
                    model);
}

void validate(const PriorModel& model) {
  std::visit(
      overloaded{
          [](const WindowedModel& m) {
            if (m.bins.empty()) throw model_error("windowed model has no bins");
            for (std::size_t i = 0; i < m.bins.size(); ++i) {
              const auto& bin = m.bins[i];
              if (!(bin.lo <= bin.hi) || bin.lo < 0.0 || bin.hi > 1.0) {
                throw model_error("windowed bin " + std::to_string(i) + " has an invalid interval");
              }
              if (i > 0 && !(m.bins[i - 1].hi < bin.lo)) {
                throw model_error("windowed bins overlap or are out of order at bin " + std::to_string(i));
              }
            }
          },
          [](const Eb1Model& m) {
            if (m.betas.empty()) throw model_error("EB1 model needs at least one booster coefficient");
            if (!std::isfinite(m.beta0) || !all_finite(m.betas)) {
              throw model_error("EB1 coefficients must be finite");
            }
            if (m.beta0 < 0.0 || std::any_of(m.betas.begin(), m.betas.end(), [](double x) { return x < 0.0; })) {
              throw model_error("EB1 coefficients must be nonnegative");
            }
          },
          [](const Eb2Model& m) {
            if (!std::isfinite(m.beta0) || !std::isfinite(m.beta1) || !std::isfinite(m.beta2) ||
                !std::isfinite(m.beta3)) {
              throw model_error("EB2 coefficients must be finite");
            }
            // Interior and both endpoints must give positive a and b.
            if (!(m.beta0 > 0.0 || m.beta1 > 0.0) || !(m.beta0 + m.beta2 > 0.0) ||
                !(m.beta0 + m.beta1 + m.beta3 > 0.0) || m.beta0 < 0.0 || m.beta1 < 0.0) {
              throw model_error("EB2 coefficients give a nonpositive prior parameter");
            }
          },
          [](const SplineModel& m) {
            if (m.n_basis < 4) throw model_error("spline model needs n_basis >= 4");
            if (m.theta.empty()) throw model_error("spline model needs at least one booster");
            const auto check = [&](const std::vector<std::vector<double>>& coef, const char* name) {
              for (const auto& row : coef) {
                if (row.size() != static_cast<std::size_t>(m.n_basis)) {
                  throw model_error(std::string("spline ") + name + " row has the wrong length");
                }
                for (double v : row) {
                  if (!(v > 0.0) || !std::isfinite(v)) {
                    throw model_error(std::string("spline ") + name + " coefficients must be positive");
                  }
                }
              }
            };
            check(m.theta, "theta");
            if (!m.symmetric) {
              if (m.gamma.size() != m.theta.size()) {
                throw model_error("asymmetric spline needs one gamma row per booster");
              }
              check(m.gamma, "gamma");
            }
          },
      },
      model);
}

BetaParams eval_prior(const PriorModel& model, const BoosterProfile& profile) {
  return std::visit(overloaded{
                        [&](const WindowedModel& m) { return eval_windowed(m, profile); },
                        [&](const Eb1Model& m) { return eval_eb1(m, profile); },
                        [&](const Eb2Model& m) { return eval_eb2(m, profile); },
                        [&](const SplineModel& m) { return eval_spline(m, profile); },
                    },
                    model);
}

double affinity(const PriorModel& model) {
  return std::visit(overloaded{
                        [](const WindowedModel& m) {
                          if (m.bins.empty()) throw model_error("affinity: windowed model has no bins");
                          std::vector<double> nus;
                          nus.reserve(m.bins.size());
                          for (const auto& bin : m.bins) nus.push_back(bin.params.nu());
                          return median(std::move(nus));
                        },
                        [](const Eb1Model& m) {
                          double nu = 2.0 * m.beta0;
                          for (double beta : m.betas) nu += beta;
                          return nu;
                        },
                        [](const Eb2Model& m) { return 2.0 * m.beta0 + m.beta1; },
                        [](const SplineModel& m) {
                          const CubicBSplineBasis basis(m.n_basis);
                          const auto& gamma = m.symmetric ? m.theta : m.gamma;
                          double nu = 0.0;
                          for (std::size_t k = 0; k < m.theta.size(); ++k) {
                            nu += spline_booster_integral(basis, m.theta[k], gamma[k]);
                          }
                          return nu;
                        },
                    },
                    model);
}

bool affinity_is_extended(const PriorModel& model) {
  return std::visit(overloaded{
                        [](const WindowedModel&) { return false; },
                        [](const Eb1Model& m) { return m.betas.size() > 1; },
                        [](const Eb2Model&) { return true; },
                        [](const SplineModel& m) { return m.theta.size() > 1; },
                    },
                    model);
}

double local_affinity(const PriorModel& model, const BoosterProfile& profile) {
  return eval_prior(model, profile).nu();
}

}  // namespace ebfreq

#include "ebfreq/beta_binomial.hpp"

#include <cmath>
#include <string>

#include "ebfreq/error.hpp"
#include "ebfreq/special_functions.hpp"

namespace ebfreq {

BetaParams::BetaParams(double a, double b) : a_(a), b_(b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw domain_error("BetaParams: a and b must be positive and finite (a=" + std::to_string(a) +
                       ", b=" + std::to_string(b) + ")");
  }
}

double BetaParams::variance() const {
  const double mu = mean();
  return mu * (1.0 - mu) / (nu() + 1.0);
}

CountPair::CountPair(std::int64_t successes, std::int64_t trials)
    : successes_(successes), trials_(trials) {
  if (trials <= 0) {
    throw domain_error("CountPair: trials must be positive, got " + std::to_string(trials));
  }
  if (successes < 0 || successes > trials) {
    throw domain_error("CountPair: successes " + std::to_string(successes) + " outside [0, " +
                       std::to_string(trials) + "]");
  }
}

double log_betabinom_pmf(std::int64_t n, const BetaParams& params, std::int64_t x) {
  if (n < 0 || x < 0 || x > n) {
    throw domain_error("log_betabinom_pmf: x=" + std::to_string(x) + " outside [0, n=" +
                       std::to_string(n) + "]");
  }
  // B(a+x, b+n-x) / B(a,b) = (a)_x (b)_{n-x} / (a+b)_n with (z)_m the rising factorial.
  return log_choose(n, x) + log_rising(params.a(), x) + log_rising(params.b(), n - x) -
         log_rising(params.nu(), n);
}

BetaParams posterior_update(const BetaParams& prior, const CountPair& obs) {
  return BetaParams(prior.a() + static_cast<double>(obs.successes()),
                    prior.b() + static_cast<double>(obs.failures()));
}

double posterior_mean(const BetaParams& post) { return post.mean(); }

double posterior_variance_proxy(const BetaParams& post) { return post.variance(); }

}  // namespace ebfreq

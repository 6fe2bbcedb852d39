#pragma once

#include <cstdint>

namespace ebfreq {

// Beta(a, b) pseudo-counts. Construction rejects a <= 0 or b <= 0.
class BetaParams {
 public:
  BetaParams(double a, double b);

  double a() const { return a_; }
  double b() const { return b_; }

  // Total pseudo-count a + b (the local affinity when used as a prior).
  double nu() const { return a_ + b_; }
  double mean() const { return a_ / (a_ + b_); }
  double variance() const;

  friend bool operator==(const BetaParams&, const BetaParams&) = default;

 private:
  double a_;
  double b_;
};

// Count of the A allele among a positive number of observed alleles.
class CountPair {
 public:
  CountPair(std::int64_t successes, std::int64_t trials);

  std::int64_t successes() const { return successes_; }
  std::int64_t trials() const { return trials_; }
  std::int64_t failures() const { return trials_ - successes_; }
  double proportion() const { return static_cast<double>(successes_) / static_cast<double>(trials_); }

  friend bool operator==(const CountPair&, const CountPair&) = default;

 private:
  std::int64_t successes_;
  std::int64_t trials_;
};

// ln of the beta-binomial mass B(a+x, b+n-x) / B(a,b) * C(n,x).
double log_betabinom_pmf(std::int64_t n, const BetaParams& params, std::int64_t x);

BetaParams posterior_update(const BetaParams& prior, const CountPair& obs);

double posterior_mean(const BetaParams& post);

// mu (1 - mu) / (nu + 1) of the posterior; the expected squared error of the
// posterior mean when the prior parameters are treated as known.
double posterior_variance_proxy(const BetaParams& post);

}  // namespace ebfreq

#pragma once

// Log-gamma family helpers tuned for beta-binomial likelihoods.

namespace ebfreq {

// Remainder of Stirling's series: lgamma(x) - [(x - 1/2) ln x - x + ln sqrt(2 pi)], x >= 10.
double stirling_remainder(double x);

// ln B(a, b). Avoids the cancellation of lgamma(a) + lgamma(b) - lgamma(a + b)
// when either argument is large.
double log_beta(double a, double b);

double digamma(double x);

// ln Gamma(z + m) - ln Gamma(z) for integer m >= 0 (log rising factorial).
double log_rising(double z, long m);

// psi(z + m) - psi(z) for integer m >= 0.
double digamma_rising(double z, long m);

// ln C(n, k) computed as lgamma(n+1) - lgamma(k+1) - lgamma(n-k+1).
double log_choose(long n, long k);

}  // namespace ebfreq

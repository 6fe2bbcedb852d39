#include "ebfreq/special_functions.hpp"

#include <cmath>
#include <string>

#include "ebfreq/error.hpp"

namespace ebfreq {

namespace {

constexpr double kLnSqrt2Pi = 0.918938533204672741780329736406;

// Beyond this many terms the rising factorials switch from explicit sums to
// the gamma-function identities.
constexpr long kRisingSumLimit = 256;

}  // namespace

double stirling_remainder(double x) {
  if (!(x >= 10.0)) {
    throw domain_error("stirling_remainder: argument must be >= 10, got " + std::to_string(x));
  }
  // Bernoulli-number coefficients B_{2k} / (2k (2k-1)).
  static constexpr double kCoef[] = {
      1.0 / 12.0,          -1.0 / 360.0,        1.0 / 1260.0,     -1.0 / 1680.0,
      1.0 / 1188.0,        -691.0 / 360360.0,   1.0 / 156.0,      -3617.0 / 122400.0,
  };
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double sum = 0.0;
  for (int k = 7; k >= 0; --k) {
    sum = sum * inv2 + kCoef[k];
  }
  return sum * inv;
}

double log_beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw domain_error("log_beta: arguments must be positive and finite (a=" + std::to_string(a) +
                       ", b=" + std::to_string(b) + ")");
  }
  const double p = std::min(a, b);
  const double q = std::max(a, b);
  const double pq = p + q;

  if (p >= 10.0) {
    const double corr = stirling_remainder(p) + stirling_remainder(q) - stirling_remainder(pq);
    return -0.5 * std::log(q) + kLnSqrt2Pi + corr + (p - 0.5) * std::log(p / pq) +
           q * std::log1p(-p / pq);
  }
  if (q >= 10.0) {
    const double corr = stirling_remainder(q) - stirling_remainder(pq);
    return std::lgamma(p) + corr + p - p * std::log(pq) + (q - 0.5) * std::log1p(-p / pq);
  }
  // Both small: the gamma ratio neither overflows nor underflows here.
  return std::log(std::tgamma(p) * (std::tgamma(q) / std::tgamma(pq)));
}

double digamma(double x) {
  if (!std::isfinite(x) || (x <= 0.0 && x == std::floor(x))) {
    throw domain_error("digamma: pole or non-finite argument " + std::to_string(x));
  }
  double result = 0.0;
  if (x < 0.0) {
    // Reflection: psi(1 - x) - psi(x) = pi cot(pi x).
    result -= M_PI / std::tan(M_PI * x);
    x = 1.0 - x;
  }
  while (x < 10.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  const double inv2 = 1.0 / (x * x);
  const double series =
      inv2 * (1.0 / 12.0 -
              inv2 * (1.0 / 120.0 -
                      inv2 * (1.0 / 252.0 -
                              inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0 - inv2 * (691.0 / 32760.0))))));
  return result + std::log(x) - 0.5 / x - series;
}

double log_rising(double z, long m) {
  if (!(z > 0.0) || m < 0) {
    throw domain_error("log_rising: need z > 0 and m >= 0");
  }
  if (m <= kRisingSumLimit) {
    double sum = 0.0;
    for (long i = 0; i < m; ++i) sum += std::log(z + static_cast<double>(i));
    return sum;
  }
  // Gamma(z + m) / Gamma(z) = Gamma(m) / B(z, m).
  return std::lgamma(static_cast<double>(m)) - log_beta(z, static_cast<double>(m));
}

double digamma_rising(double z, long m) {
  if (!(z > 0.0) || m < 0) {
    throw domain_error("digamma_rising: need z > 0 and m >= 0");
  }
  if (m <= kRisingSumLimit) {
    double sum = 0.0;
    for (long i = 0; i < m; ++i) sum += 1.0 / (z + static_cast<double>(i));
    return sum;
  }
  return digamma(z + static_cast<double>(m)) - digamma(z);
}

double log_choose(long n, long k) {
  if (n < 0 || k < 0 || k > n) {
    throw domain_error("log_choose: need 0 <= k <= n");
  }
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

}  // namespace ebfreq

#include <doctest.h>

#include <cmath>
#include <random>

#include "ebfreq/error.hpp"
#include "ebfreq/special_functions.hpp"
#include "oracles/oracle_values.hpp"

using namespace ebfreq;

namespace {

double rel_err(double got, double want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

}  // namespace

TEST_CASE("log_beta closed forms") {
  CHECK(log_beta(1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(log_beta(2.0, 3.0) == doctest::Approx(std::log(1.0 / 12.0)).epsilon(1e-14));
  CHECK(log_beta(0.5, 0.5) == doctest::Approx(std::log(M_PI)).epsilon(1e-14));
}

TEST_CASE("log_beta matches the high-precision oracle to 12 digits") {
  for (const auto& c : oracle::kLogBeta) {
    INFO("a = " << c.a << ", b = " << c.b);
    // Near-zero results are compared absolutely.
    const double err = std::abs(c.value) < 1.0 ? std::abs(log_beta(c.a, c.b) - c.value)
                                               : rel_err(log_beta(c.a, c.b), c.value);
    CHECK(err < 1e-12);
  }
}

TEST_CASE("log_beta is symmetric and rejects nonpositive arguments") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> expo(-6.0, 6.0);
  for (int i = 0; i < 200; ++i) {
    const double a = std::pow(10.0, expo(gen));
    const double b = std::pow(10.0, expo(gen));
    CHECK(log_beta(a, b) == log_beta(b, a));
  }
  CHECK_THROWS_AS(log_beta(0.0, 1.0), domain_error);
  CHECK_THROWS_AS(log_beta(1.0, -2.0), domain_error);
  CHECK_THROWS_AS(log_beta(std::nan(""), 1.0), domain_error);
}

TEST_CASE("digamma matches the oracle") {
  for (const auto& c : oracle::kDigamma) {
    INFO("x = " << c.x);
    CHECK(rel_err(digamma(c.x), c.value) < 1e-12);
  }
}

TEST_CASE("digamma recurrence") {
  for (double x : {0.01, 0.3, 1.7, 4.2, 9.5, 25.0}) {
    CHECK(digamma(x + 1.0) - digamma(x) == doctest::Approx(1.0 / x).epsilon(1e-12));
  }
}

TEST_CASE("log_rising agrees with lgamma differences on both code paths") {
  for (double z : {0.05, 1.0, 11.3, 500.0}) {
    for (long m : {0L, 1L, 7L, 256L, 257L, 3000L}) {
      const double want = std::lgamma(z + static_cast<double>(m)) - std::lgamma(z);
      INFO("z = " << z << ", m = " << m);
      CHECK(log_rising(z, m) == doctest::Approx(want).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("digamma_rising is the derivative of log_rising") {
  for (double z : {0.04, 2.5, 90.0}) {
    for (long m : {3L, 200L, 400L}) {
      const double h = 1e-6 * z;
      const double fd = (log_rising(z + h, m) - log_rising(z - h, m)) / (2.0 * h);
      CHECK(digamma_rising(z, m) == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("log_choose") {
  CHECK(log_choose(5, 2) == doctest::Approx(std::log(10.0)).epsilon(1e-14));
  CHECK(log_choose(90, 0) == 0.0);
  CHECK(log_choose(90, 90) == 0.0);
  CHECK(log_choose(1000, 500) == doctest::Approx(689.46726156785118).epsilon(1e-13));
  CHECK_THROWS_AS(log_choose(3, 4), domain_error);
  CHECK_THROWS_AS(log_choose(3, -1), domain_error);
}

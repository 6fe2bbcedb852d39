#include <doctest.h>

#include <cmath>

#include "ebfreq/error.hpp"
#include "ebfreq/evaluate.hpp"

using namespace ebfreq;

namespace {

EstimateRecord est(const std::string& id, double q) {
  EstimateRecord e;
  e.id = id;
  e.q_eb = e.q_mle = e.q_pooled = q;
  return e;
}

}  // namespace

TEST_CASE("truth mode") {
  std::vector<EstimateRecord> e;
  std::vector<TruthRecord> t;
  for (int i = 0; i < 50; ++i) {
    const double q = 0.02 * i;
    e.push_back(est("m" + std::to_string(i), q));
    t.push_back({"m" + std::to_string(i), {q}, q});
  }
  EvalReport r = mse_vs_truth(e, t);
  CHECK(r.mse_raw == 0.0);
  CHECK(r.mse_corrected == 0.0);
  CHECK(r.correction_term == 0.0);
  CHECK_FALSE(r.validation_mode);
  CHECK(r.profile.size() == kDefaultBins);

  for (auto& x : e) x.q_eb += 0.1;
  r = mse_vs_truth(e, t, Estimator::eb, 10);
  CHECK(r.mse_raw == doctest::Approx(0.01));
  CHECK(r.profile.size() == 10);
  std::size_t counted = 0;
  for (const auto& bin : r.profile) {
    counted += bin.count;
    if (bin.count > 0) CHECK(*bin.mse == doctest::Approx(0.01));
  }
  CHECK(counted == 50);
  CHECK(mse_vs_truth(e, t, Estimator::mle).mse_raw == 0.0);
}

TEST_CASE("truth mode alignment errors") {
  const std::vector<EstimateRecord> e{est("a", 0.1), est("b", 0.2)};
  CHECK_THROWS_AS(mse_vs_truth(e, std::vector<TruthRecord>{{"a", {}, 0.1}}), data_error);
  CHECK_THROWS_AS(mse_vs_truth(e, std::vector<TruthRecord>{{"a", {}, 0.1}, {"c", {}, 0.2}}), data_error);
  CHECK_THROWS_AS(mse_vs_truth(e, std::vector<TruthRecord>{{"a", {}, 0.1}, {"a", {}, 0.2}}), data_error);
}

TEST_CASE("validation mode") {
  const std::vector<EstimateRecord> one{est("a", 0.5)};
  const EvalReport r = mse_vs_validation(one, std::vector<ValidationRecord>{{"a", {1, 2}}});
  CHECK(r.mse_raw == 0.0);
  CHECK(r.correction_term == doctest::Approx(0.25));
  CHECK(r.mse_corrected == doctest::Approx(-0.25));
  CHECK(r.validation_mode);

  const std::vector<EstimateRecord> two{est("a", 0.3), est("b", 0.9)};
  const EvalReport edge =
      mse_vs_validation(two, std::vector<ValidationRecord>{{"a", {0, 24}}, {"b", {24, 24}}});
  CHECK(edge.correction_term == 0.0);
  CHECK(edge.mse_corrected == edge.mse_raw);
  CHECK(edge.mse_raw == doctest::Approx((0.09 + 0.01) / 2));

  CHECK_THROWS_AS(mse_vs_validation(one, std::vector<ValidationRecord>{{"a", {1, 1}}}), data_error);
}

TEST_CASE("correction term is positive whenever a validation frequency is interior") {
  const std::vector<EstimateRecord> e{est("a", 0.3), est("b", 0.9), est("c", 0.1)};
  const EvalReport r =
      mse_vs_validation(e, std::vector<ValidationRecord>{{"a", {0, 24}}, {"b", {24, 24}}, {"c", {3, 10}}});
  CHECK(r.correction_term == doctest::Approx(0.3 * 0.7 / 9.0 / 3.0));
  CHECK(r.mse_corrected == doctest::Approx(r.mse_raw - r.correction_term));
}

TEST_CASE("bias-variance profile") {
  std::vector<TruthRecord> t;
  std::vector<std::vector<EstimateRecord>> reps(4);
  for (int i = 0; i < 40; ++i) {
    const double q = 0.025 * i + 0.01;
    const std::string id = "m" + std::to_string(i);
    t.push_back({id, {q}, q});
    for (int r = 0; r < 4; ++r) reps[r].push_back(est(id, q + 0.01 * (r - 1.5) + (i % 2 ? 0.02 : -0.02)));
  }
  for (const BiasConvention c : {BiasConvention::pooled_bin, BiasConvention::per_marker}) {
    const auto prof = bias_variance_profile(reps, t, Estimator::eb, 5, c);
    REQUIRE(prof.size() == 5);
    for (const auto& bin : prof) {
      REQUIRE(bin.count == 8);
      // Population variance convention: the identity is exact up to rounding.
      CHECK(*bin.mse == doctest::Approx(*bin.bias_sq + *bin.variance).epsilon(1e-12));
    }
    if (c == BiasConvention::per_marker) {
      CHECK(*prof[0].bias_sq == doctest::Approx(4e-4));
      CHECK(*prof[0].variance == doctest::Approx(1.25e-4));
    } else {
      // The +-0.02 offsets cancel within each bin.
      CHECK(*prof[0].bias_sq == doctest::Approx(0.0).epsilon(1e-12));
    }
  }

  const std::vector<std::vector<EstimateRecord>> exact(3, [&] {
    std::vector<EstimateRecord> e;
    for (const auto& x : t) e.push_back(est(x.id, x.q_true));
    return e;
  }());
  for (const auto& bin : bias_variance_profile(exact, t, Estimator::eb, 20)) {
    if (bin.count == 0) {
      CHECK_FALSE(bin.mse.has_value());
      continue;
    }
    CHECK(*bin.mse == 0.0);
    CHECK(*bin.bias_sq == 0.0);
    CHECK(*bin.variance == 0.0);
  }
  CHECK_THROWS_AS(bias_variance_profile({reps[0]}, t), domain_error);
}

TEST_CASE("names") {
  CHECK(to_string(Estimator::pooled) == "pooled");
  CHECK(parse_bias_convention("per-marker") == BiasConvention::per_marker);
  CHECK(to_string(BiasConvention::pooled_bin) == "pooled-bin");
  CHECK_THROWS(parse_bias_convention("other"));
}

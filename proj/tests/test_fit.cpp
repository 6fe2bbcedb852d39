#include <doctest.h>

#include <cmath>

#include "ebfreq/error.hpp"
#include "ebfreq/estimate.hpp"
#include "ebfreq/fit.hpp"
#include "ebfreq/likelihood.hpp"
#include "ebfreq/simulate.hpp"
#include "support.hpp"

using namespace ebfreq;

namespace {

std::vector<testing::Row> beta_binomial_bin(std::size_t n, double a, double b, std::int64_t x, std::int64_t n_y,
                                            std::uint64_t seed) {
  std::vector<testing::Row> rows;
  for (std::size_t i = 0; i < n; ++i) {
    RandomStream rng(seed, i);
    const double q = sample_beta(rng, a, b);
    rows.push_back({sample_binomial(rng, n_y, q), n_y, x, 90});
  }
  return rows;
}

}  // namespace

TEST_CASE("model family names") {
  CHECK(parse_model_family("eb1") == ModelFamily::eb1);
  CHECK(parse_model_family("eb3") == ModelFamily::spline);
  CHECK(to_string(ModelFamily::windowed) == "windowed");
  CHECK_THROWS_AS(parse_model_family("eb4"), domain_error);
}

TEST_CASE("parameter transforms invert") {
  for (const Transform kind : {Transform::softplus, Transform::exp}) {
    const ParameterTransform t{kind, kParameterFloor};
    for (double theta : {1e-6, 0.038, 1.0, 36.88, 5e3}) {
      CHECK(t.forward(t.inverse(theta)) == doctest::Approx(theta).epsilon(1e-12));
    }
    const double u = 0.7;
    CHECK(t.derivative(u) == doctest::Approx((t.forward(u + 1e-6) - t.forward(u - 1e-6)) / 2e-6).epsilon(1e-8));
  }
}

TEST_CASE("windowed: balanced bin has mean one half") {
  std::vector<testing::Row> rows(120, testing::Row{15, 30, 45, 90});
  const FitResult fit = fit_windowed(testing::make_dataset(rows));
  const auto& w = std::get<WindowedModel>(fit.model);
  REQUIRE(w.bins.size() == 1);
  CHECK(w.bins[0].params.mean() == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("windowed: recovers a single bin") {
  const auto data = testing::make_dataset(beta_binomial_bin(10000, 11.30, 22.41, 30, 90, 1));
  const FitResult fit = fit_windowed(data);
  const auto& w = std::get<WindowedModel>(fit.model);
  REQUIRE(w.bins.size() == 1);
  CHECK(w.bins[0].params.a() == doctest::Approx(11.30).epsilon(0.10));
  CHECK(w.bins[0].params.b() == doctest::Approx(22.41).epsilon(0.10));
  CHECK(w.bins[0].converged);
  CHECK_FALSE(w.bins[0].boundary);
  CHECK(fit.neg_log_lik == doctest::Approx(neg_log_likelihood(fit.model, data)));
}

TEST_CASE("windowed: bins are fitted independently") {
  auto rows = beta_binomial_bin(5000, 2.0, 8.0, 20, 40, 2);
  const auto second = beta_binomial_bin(5000, 30.0, 10.0, 70, 40, 3);
  rows.insert(rows.end(), second.begin(), second.end());
  const FitResult fit = fit_windowed(testing::make_dataset(rows));
  const auto& w = std::get<WindowedModel>(fit.model);
  REQUIRE(w.bins.size() == 2);
  CHECK(w.bins[0].params.a() == doctest::Approx(2.0).epsilon(0.12));
  CHECK(w.bins[0].params.b() == doctest::Approx(8.0).epsilon(0.12));
  CHECK(w.bins[1].params.a() == doctest::Approx(30.0).epsilon(0.12));
  CHECK(w.bins[1].params.b() == doctest::Approx(10.0).epsilon(0.12));

  const auto alone = std::get<WindowedModel>(
      fit_windowed(testing::make_dataset(beta_binomial_bin(5000, 2.0, 8.0, 20, 40, 2))).model);
  CHECK(alone.bins[0].params == w.bins[0].params);
}

TEST_CASE("window construction merges small bins and covers every count") {
  std::vector<testing::Row> rows;
  for (int i = 0; i < 100; ++i) rows.push_back({1, 2, 10, 90});
  for (int i = 0; i < 10; ++i) rows.push_back({1, 2, 11, 90});
  for (int i = 0; i < 100; ++i) rows.push_back({1, 2, 30, 90});
  for (int i = 0; i < 5; ++i) rows.push_back({1, 2, 89, 90});
  const auto data = testing::make_dataset(rows);
  const auto spans = build_windows(data, 50, 0.0);
  REQUIRE(spans.size() == 2);
  std::size_t total = 0;
  for (const auto& s : spans) total += s.n_markers;
  CHECK(total == data.size());
  CHECK(spans[0].lo == doctest::Approx(10.0 / 90.0));
  CHECK(spans[0].hi == doctest::Approx(11.0 / 90.0));
  CHECK(spans[1].hi == doctest::Approx(89.0 / 90.0));

  const auto fit = fit_windowed(data);
  const auto est = estimate_all(fit.model, data);
  CHECK(est.size() == data.size());

  CHECK(build_windows(data, 1, 0.0).size() == 4);
  CHECK(build_windows(data, 1, 0.2).size() < 4);
}

TEST_CASE("windowed requires a single booster") {
  const auto data = testing::make_dataset({{1, 2, 3, 10, 1, 5}});
  CHECK_THROWS(fit_windowed(data));
}

TEST_CASE("EB1 refit recovers generating coefficients") {
  const auto data = testing::simulate_observed_prior(55000, 90, 30, 0.198, 10, [](double p) {
    return std::pair{0.038 + 36.88 * p, 0.038 + 36.88 * (1.0 - p)};
  });
  const FitResult fit = fit_parametric(data, ModelFamily::eb1);
  const auto& m = std::get<Eb1Model>(fit.model);
  CHECK(fit.converged);
  CHECK(fit.gradient_norm < 1e-6);
  CHECK(m.betas[0] == doctest::Approx(36.88).epsilon(0.05));
  CHECK(fit.dataset_hash == data.content_hash());
}

TEST_CASE("EB1 on independent populations has small affinity") {
  SimConfig config;
  config.n_markers = 20000;
  config.mode = SimMode::independent;
  const auto sim = simulate_dataset(config);
  const FitResult fit = fit_parametric(sim.data, ModelFamily::eb1);
  const auto& m = std::get<Eb1Model>(fit.model);
  CHECK(m.betas[0] < 0.1 * 90);
  const double prior_only = config.booster_marginal.nu();
  CHECK(affinity(fit.model) > prior_only / 2);
  CHECK(affinity(fit.model) < prior_only * 2);
}

TEST_CASE("EB2 nests EB1 and needs one booster") {
  const auto data = testing::simulate_observed_prior(8000, 90, 30, 0.198, 12, [](double p) {
    return std::pair{0.04 + 30.0 * p, 0.04 + 30.0 * (1.0 - p)};
  });
  const FitResult eb1 = fit_parametric(data, ModelFamily::eb1);
  const FitResult eb2 = fit_parametric(data, ModelFamily::eb2);
  CHECK(eb2.converged);
  CHECK(eb2.neg_log_lik <= eb1.neg_log_lik + 1e-6);
  CHECK_NOTHROW(validate(eb2.model));

  const auto two = testing::make_dataset({{1, 2, 3, 10, 1, 5}});
  CHECK_THROWS(fit_parametric(two, ModelFamily::eb2));
}

TEST_CASE("spline fit is at least as good as EB1") {
  const auto data = testing::simulate_observed_prior(8000, 90, 30, 0.198, 13, [](double p) {
    return std::pair{0.04 + 30.0 * p, 0.04 + 30.0 * (1.0 - p)};
  });
  const FitResult eb1 = fit_parametric(data, ModelFamily::eb1);
  const FitResult spline = fit_spline(data);
  CHECK(spline.converged);
  CHECK(spline.neg_log_lik <= eb1.neg_log_lik * (1.0 + 1e-3));
  const auto& m = std::get<SplineModel>(spline.model);
  CHECK(m.theta.size() == 1);
  CHECK(m.theta[0].size() == 8);

  FitOptions asym;
  asym.symmetric_spline = false;
  asym.n_basis = 5;
  const FitResult free = fit_spline(data, asym);
  CHECK(std::get<SplineModel>(free.model).gamma.size() == 1);
}

TEST_CASE("degenerate data does not crash") {
  std::vector<testing::Row> rows(500, testing::Row{15, 30, 45, 90});
  const auto data = testing::make_dataset(rows);
  for (const ModelFamily f : {ModelFamily::windowed, ModelFamily::eb1, ModelFamily::eb2, ModelFamily::spline}) {
    const FitResult fit = fit_model(data, f);
    bool boundary = affinity(fit.model) > 1e3;
    if (const auto* w = std::get_if<WindowedModel>(&fit.model)) boundary = w->bins[0].boundary;
    CHECK((!fit.converged || boundary));
  }
  CHECK_THROWS_AS(fit_model(MarkerDataset{}, ModelFamily::eb1), data_error);
}

TEST_CASE("fits are deterministic and thread-count independent") {
  const auto data = testing::simulate_observed_prior(6000, 90, 30, 0.198, 14, [](double p) {
    return std::pair{0.04 + 30.0 * p, 0.04 + 30.0 * (1.0 - p)};
  });
  FitOptions threaded;
  threaded.threads = 3;
  for (const ModelFamily f : {ModelFamily::eb1, ModelFamily::eb2, ModelFamily::spline}) {
    const FitResult a = fit_model(data, f);
    const FitResult b = fit_model(data, f);
    const FitResult c = fit_model(data, f, threaded);
    CHECK(a.neg_log_lik == b.neg_log_lik);
    CHECK(a.neg_log_lik == c.neg_log_lik);
    CHECK(affinity(a.model) == affinity(c.model));
  }
}

TEST_CASE("identical populations: EB estimates approach pooling") {
  SimConfig config;
  config.n_markers = 50000;
  config.mode = SimMode::identical;
  config.n_x = {60};
  config.n_y = 60;
  config.seed = 99;
  const auto sim = simulate_dataset(config);
  const FitResult fit = fit_parametric(sim.data, ModelFamily::eb1);
  const auto& m = std::get<Eb1Model>(fit.model);
  CHECK(m.betas[0] == doctest::Approx(60.0).epsilon(0.05));
  CHECK(m.beta0 < 0.7);

  const auto est = estimate_all(fit.model, sim.data);
  double mad = 0.0;
  for (std::size_t i = 0; i < est.size(); ++i) {
    const auto& r = sim.data.records()[i];
    const double shrunk_pool = (static_cast<double>(r.target.successes() + r.boosters[0].successes()) + m.beta0) /
                               (static_cast<double>(r.target.trials() + r.boosters[0].trials()) + 2.0 * m.beta0);
    mad += std::abs(est[i].q_eb - shrunk_pool);
  }
  CHECK(mad / static_cast<double>(est.size()) < 0.01);
}

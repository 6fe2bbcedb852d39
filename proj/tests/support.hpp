#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ebfreq/dataset.hpp"
#include "ebfreq/random.hpp"

namespace testing {

// (y, n_Y, then x, n_X per booster)
using Row = std::vector<std::int64_t>;

inline ebfreq::MarkerDataset make_dataset(const std::vector<Row>& rows) {
  std::vector<ebfreq::MarkerRecord> records;
  std::size_t k = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& r = rows[i];
    std::vector<ebfreq::CountPair> boosters;
    for (std::size_t j = 2; j + 1 < r.size(); j += 2) boosters.emplace_back(r[j], r[j + 1]);
    k = boosters.size();
    records.push_back({"r" + std::to_string(i + 1), ebfreq::CountPair(r[0], r[1]), boosters});
  }
  ebfreq::DatasetMetadata meta;
  for (std::size_t j = 0; j < k; ++j) meta.booster_names.push_back("booster" + std::to_string(j + 1));
  return ebfreq::MarkerDataset(std::move(records), std::move(meta));
}

// Target counts drawn from Beta(a(p), b(p)) where p is the observed booster proportion,
// so the fitted family is exactly the generating one.
template <class PriorFn>
ebfreq::MarkerDataset simulate_observed_prior(std::size_t n_markers, std::int64_t n_x, std::int64_t n_y,
                                              double marginal, std::uint64_t seed, PriorFn prior) {
  std::vector<Row> rows;
  rows.reserve(n_markers);
  for (std::size_t i = 0; i < n_markers; ++i) {
    ebfreq::RandomStream rng(seed, i);
    const double p = ebfreq::sample_beta(rng, marginal, marginal);
    const std::int64_t x = ebfreq::sample_binomial(rng, n_x, p);
    const auto [a, b] = prior(static_cast<double>(x) / static_cast<double>(n_x));
    const double q = ebfreq::sample_beta(rng, a, b);
    rows.push_back({ebfreq::sample_binomial(rng, n_y, q), n_y, x, n_x});
  }
  return make_dataset(rows);
}

inline std::string data_path(const std::string& name) { return std::string(EBFREQ_TEST_DATA_DIR) + "/" + name; }

}  // namespace testing

#include "ebfreq/likelihood.hpp"

#include <cmath>
#include <limits>
#include <map>

#include "ebfreq/error.hpp"
#include "ebfreq/parallel.hpp"
#include "ebfreq/special_functions.hpp"

namespace ebfreq {

namespace {

// Above this trial count the per-group prefix tables are replaced by gamma-function calls.
constexpr std::int64_t kPrefixTableLimit = 4096;

}  // namespace

void CompensatedSum::add(double v) {
  const double t = sum_ + v;
  if (std::abs(sum_) >= std::abs(v)) {
    compensation_ += (sum_ - t) + v;
  } else {
    compensation_ += (v - t) + sum_;
  }
  sum_ = t;
}

double neg_log_likelihood(const PriorModel& model, const MarkerDataset& data) {
  if (data.empty()) return 0.0;
  if (booster_count(model) != data.booster_count()) {
    throw model_error("model conditions on " + std::to_string(booster_count(model)) +
                      " boosters but the dataset has " + std::to_string(data.booster_count()));
  }
  CompensatedSum total;
  for (const auto& r : data.records()) {
    try {
      const BetaParams prior = eval_prior(model, r.profile());
      total.add(-log_betabinom_pmf(r.target.trials(), prior, r.target.successes()));
    } catch (const std::exception& e) {
      throw model_error("marker " + r.id + ": " + e.what());
    }
  }
  return total.value();
}

std::vector<MarkerGroup> group_markers(std::span<const MarkerRecord> records) {
  using Key = std::pair<std::vector<double>, std::int64_t>;
  std::map<Key, std::map<std::int64_t, double>> histograms;
  for (const auto& r : records) {
    std::vector<double> profile;
    profile.reserve(r.boosters.size());
    for (const auto& b : r.boosters) profile.push_back(b.proportion());
    histograms[Key{std::move(profile), r.target.trials()}][r.target.successes()] += 1.0;
  }
  std::vector<MarkerGroup> groups;
  groups.reserve(histograms.size());
  for (auto& [key, hist] : histograms) {
    MarkerGroup g;
    g.profile = key.first;
    g.trials = key.second;
    for (const auto& [y, count] : hist) {
      g.successes.emplace_back(y, count);
      g.log_choose_sum += count * log_choose(g.trials, y);
      g.n_markers += static_cast<std::size_t>(count);
    }
    groups.push_back(std::move(g));
  }
  return groups;
}

std::vector<MarkerGroup> group_markers(const MarkerDataset& data) {
  return group_markers(std::span<const MarkerRecord>(data.records()));
}

GroupTerm group_term(const MarkerGroup& group, double a, double b) {
  const std::int64_t n = group.trials;
  double total = 0.0;
  for (const auto& entry : group.successes) total += entry.second;

  double log_a = 0.0;  // sum of multiplicity * ln (a)_y
  double dig_a = 0.0;  // sum of multiplicity * [psi(a+y) - psi(a)]
  double log_b = 0.0;
  double dig_b = 0.0;
  double log_ab = 0.0;
  double dig_ab = 0.0;

  if (n <= kPrefixTableLimit) {
    // Walk y upward for the a-side and n - y upward (y downward) for the b-side.
    {
      double cum_log = 0.0, cum_inv = 0.0;
      std::int64_t i = 0;
      for (const auto& [y, count] : group.successes) {
        for (; i < y; ++i) {
          const double z = a + static_cast<double>(i);
          cum_log += std::log(z);
          cum_inv += 1.0 / z;
        }
        log_a += count * cum_log;
        dig_a += count * cum_inv;
      }
    }
    {
      double cum_log = 0.0, cum_inv = 0.0;
      std::int64_t i = 0;
      for (auto it = group.successes.rbegin(); it != group.successes.rend(); ++it) {
        const std::int64_t failures = n - it->first;
        for (; i < failures; ++i) {
          const double z = b + static_cast<double>(i);
          cum_log += std::log(z);
          cum_inv += 1.0 / z;
        }
        log_b += it->second * cum_log;
        dig_b += it->second * cum_inv;
      }
    }
    for (std::int64_t i = 0; i < n; ++i) {
      const double z = a + b + static_cast<double>(i);
      log_ab += std::log(z);
      dig_ab += 1.0 / z;
    }
  } else {
    for (const auto& [y, count] : group.successes) {
      log_a += count * log_rising(a, y);
      dig_a += count * digamma_rising(a, y);
      log_b += count * log_rising(b, n - y);
      dig_b += count * digamma_rising(b, n - y);
    }
    log_ab = log_rising(a + b, n);
    dig_ab = digamma_rising(a + b, n);
  }

  GroupTerm term;
  term.neg_log_lik = -(group.log_choose_sum + log_a + log_b - total * log_ab);
  term.d_a = -(dig_a - total * dig_ab);
  term.d_b = -(dig_b - total * dig_ab);
  return term;
}

DesignObjective::DesignObjective(std::vector<MarkerGroup> groups, LinearDesign design, unsigned threads)
    : groups_(std::move(groups)), design_(std::move(design)), threads_(threads) {
  const std::size_t cells = groups_.size() * design_.n_params;
  if (design_.a_rows.size() != cells || design_.b_rows.size() != cells) {
    throw domain_error("DesignObjective: design rows do not match the number of groups");
  }
}

double DesignObjective::evaluate(std::span<const double> theta, std::span<double> grad) const {
  const std::size_t m = design_.n_params;
  const std::size_t n_shards = std::min(kDefaultShards, std::max<std::size_t>(1, groups_.size()));

  struct Partial {
    CompensatedSum value;
    std::vector<double> grad;
    bool valid = true;
  };
  std::vector<Partial> partials(n_shards);

  for_each_shard(groups_.size(), n_shards, threads_, [&](ShardRange range) {
    Partial& part = partials[range.index];
    part.grad.assign(m, 0.0);
    for (std::size_t g = range.begin; g < range.end; ++g) {
      const double* arow = design_.a_rows.data() + g * m;
      const double* brow = design_.b_rows.data() + g * m;
      double a = 0.0, b = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        a += arow[j] * theta[j];
        b += brow[j] * theta[j];
      }
      if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
        part.valid = false;
        return;
      }
      const GroupTerm term = group_term(groups_[g], a, b);
      part.value.add(term.neg_log_lik);
      for (std::size_t j = 0; j < m; ++j) {
        part.grad[j] += term.d_a * arow[j] + term.d_b * brow[j];
      }
    }
  });

  CompensatedSum total;
  std::fill(grad.begin(), grad.end(), 0.0);
  for (const auto& part : partials) {
    if (!part.valid) {
      std::fill(grad.begin(), grad.end(), 0.0);
      return std::numeric_limits<double>::infinity();
    }
    total.add(part.value.value());
    for (std::size_t j = 0; j < m; ++j) grad[j] += part.grad[j];
  }
  return total.value();
}

}  // namespace ebfreq

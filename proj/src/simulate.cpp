#include "ebfreq/simulate.hpp"

#include <cmath>

#include "ebfreq/error.hpp"
#include "ebfreq/parallel.hpp"
#include "ebfreq/random.hpp"

namespace ebfreq {

namespace {

// Stream ids: truth for marker i uses 2i, counts use 2i + 1.
std::uint64_t truth_stream(std::size_t i) { return 2 * static_cast<std::uint64_t>(i); }
std::uint64_t count_stream(std::size_t i) { return 2 * static_cast<std::uint64_t>(i) + 1; }

DatasetMetadata simulated_metadata(std::size_t k, const std::string& source) {
  DatasetMetadata meta;
  meta.source = source;
  meta.target_name = "target";
  for (std::size_t j = 0; j < k; ++j) meta.booster_names.push_back("booster" + std::to_string(j + 1));
  return meta;
}

double beta_or_endpoint(RandomStream& rng, double a, double b) {
  if (!(a > 0.0)) return 0.0;
  if (!(b > 0.0)) return 1.0;
  return sample_beta(rng, a, b);
}

TruthRecord draw_truth(const SimConfig& config, std::size_t i) {
  RandomStream rng(config.seed, truth_stream(i));
  const double ma = config.booster_marginal.a();
  const double mb = config.booster_marginal.b();
  const std::size_t k = config.n_x.size();
  TruthRecord t;
  t.id = config.id_prefix + std::to_string(i + 1);
  t.p_true.resize(k);
  switch (config.mode) {
    case SimMode::conditional: {
      for (auto& p : t.p_true) p = sample_beta(rng, ma, mb);
      const BetaParams prior = eval_prior(config.conditional, BoosterProfile(t.p_true));
      t.q_true = sample_beta(rng, prior.a(), prior.b());
      break;
    }
    case SimMode::identical:
      t.q_true = sample_beta(rng, ma, mb);
      for (auto& p : t.p_true) p = t.q_true;
      break;
    case SimMode::independent:
      t.q_true = sample_beta(rng, ma, mb);
      for (auto& p : t.p_true) p = sample_beta(rng, ma, mb);
      break;
    case SimMode::drift:
      t.q_true = sample_beta(rng, ma, mb);
      for (std::size_t j = 0; j < k; ++j) {
        const double c = config.drift[j];
        t.p_true[j] = beta_or_endpoint(rng, c * t.q_true, c * (1.0 - t.q_true));
      }
      break;
  }
  return t;
}

MarkerRecord draw_counts(const TruthRecord& truth, std::span<const std::int64_t> n_x, std::int64_t n_y,
                         std::uint64_t seed, std::size_t i) {
  RandomStream rng(seed, count_stream(i));
  MarkerRecord r{truth.id, CountPair(sample_binomial(rng, n_y, truth.q_true), n_y), {}};
  r.boosters.reserve(n_x.size());
  for (std::size_t j = 0; j < n_x.size(); ++j) {
    r.boosters.emplace_back(sample_binomial(rng, n_x[j], truth.p_true[j]), n_x[j]);
  }
  return r;
}

}  // namespace

std::string to_string(SimMode mode) {
  switch (mode) {
    case SimMode::conditional: return "conditional";
    case SimMode::identical: return "identical";
    case SimMode::independent: return "independent";
    case SimMode::drift: return "drift";
  }
  return "unknown";
}

SimMode parse_sim_mode(const std::string& name) {
  if (name == "conditional") return SimMode::conditional;
  if (name == "identical") return SimMode::identical;
  if (name == "independent") return SimMode::independent;
  if (name == "drift") return SimMode::drift;
  throw domain_error("unknown simulation mode '" + name + "'");
}

void validate(const SimConfig& config) {
  if (config.n_markers < 1) throw domain_error("simulation needs at least one marker");
  if (config.n_y < 1) throw domain_error("target allele count must be positive");
  if (config.n_x.empty()) throw domain_error("simulation needs at least one booster sample");
  for (auto n : config.n_x) {
    if (n < 1) throw domain_error("booster allele counts must be positive");
  }
  if (config.mode == SimMode::conditional) {
    validate(config.conditional);
    if (booster_count(config.conditional) != config.n_x.size()) {
      throw domain_error("conditional model has " + std::to_string(booster_count(config.conditional)) +
                         " boosters but n_x lists " + std::to_string(config.n_x.size()));
    }
  }
  if (config.mode == SimMode::drift) {
    if (config.drift.size() != config.n_x.size()) {
      throw domain_error("drift mode needs one concentration per booster");
    }
    for (double c : config.drift) {
      if (!(c > 0.0) || !std::isfinite(c)) throw domain_error("drift concentrations must be positive");
    }
  }
}

SimulatedData simulate_dataset(const SimConfig& config, unsigned threads) {
  validate(config);
  std::vector<TruthRecord> truth(config.n_markers);
  for_each_shard(truth.size(), kDefaultShards, threads, [&](ShardRange range) {
    for (std::size_t i = range.begin; i < range.end; ++i) truth[i] = draw_truth(config, i);
  });
  MarkerDataset data = sample_counts(truth, config.n_x, config.n_y, config.seed, threads);
  return {std::move(data), std::move(truth)};
}

MarkerDataset sample_counts(std::span<const TruthRecord> truth, std::span<const std::int64_t> n_x,
                            std::int64_t n_y, std::uint64_t seed, unsigned threads) {
  if (n_y < 1) throw domain_error("target allele count must be positive");
  for (const auto& t : truth) {
    if (t.p_true.size() != n_x.size()) {
      throw data_error("marker " + t.id + ": truth has " + std::to_string(t.p_true.size()) +
                       " booster frequencies, expected " + std::to_string(n_x.size()));
    }
  }
  std::vector<MarkerRecord> records(truth.size(), MarkerRecord{"", CountPair(0, 1), {}});
  for_each_shard(truth.size(), kDefaultShards, threads, [&](ShardRange range) {
    for (std::size_t i = range.begin; i < range.end; ++i) records[i] = draw_counts(truth[i], n_x, n_y, seed, i);
  });
  return MarkerDataset(std::move(records), simulated_metadata(n_x.size(), "simulation"));
}

std::pair<MarkerDataset, MarkerDataset> split_dataset(const MarkerDataset& data, double fraction,
                                                      std::uint64_t seed, bool strip_boosters) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw domain_error("split fraction must lie in (0, 1)");
  }
  std::vector<MarkerRecord> first, second;
  first.reserve(data.size());
  second.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& r = data.records()[i];
    const std::int64_t n = r.target.trials();
    const std::int64_t y = r.target.successes();
    const auto n1 = static_cast<std::int64_t>(std::llround(fraction * static_cast<double>(n)));
    const std::int64_t n2 = n - n1;
    if (n1 < 1 || n2 < 1) {
      throw data_error("marker " + r.id + ": splitting " + std::to_string(n) + " alleles at fraction " +
                       std::to_string(fraction) + " leaves an empty part");
    }
    RandomStream rng(seed, i);
    const std::int64_t y1 = sample_hypergeometric(rng, y, n, n1);
    std::vector<CountPair> boosters = strip_boosters ? std::vector<CountPair>{} : r.boosters;
    first.push_back(MarkerRecord{r.id, CountPair(y1, n1), boosters});
    second.push_back(MarkerRecord{r.id, CountPair(y - y1, n2), std::move(boosters)});
  }
  DatasetMetadata meta = data.metadata();
  if (strip_boosters) meta.booster_names.clear();
  return {MarkerDataset(std::move(first), meta), MarkerDataset(std::move(second), meta)};
}

}  // namespace ebfreq

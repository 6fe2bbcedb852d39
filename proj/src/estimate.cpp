#include "ebfreq/estimate.hpp"

#include <optional>
#include <string>

#include "ebfreq/error.hpp"
#include "ebfreq/parallel.hpp"

namespace ebfreq {

double estimate_mle(const MarkerRecord& record) { return record.target.proportion(); }

double estimate_pooled(const MarkerRecord& record) {
  if (record.boosters.empty()) {
    throw data_error("marker " + record.id + ": pooling needs at least one booster sample");
  }
  std::int64_t successes = record.target.successes();
  std::int64_t trials = record.target.trials();
  for (const auto& b : record.boosters) {
    successes += b.successes();
    trials += b.trials();
  }
  return static_cast<double>(successes) / static_cast<double>(trials);
}

EstimateRecord estimate_eb(const PriorModel& model, const MarkerRecord& record) {
  try {
    const BetaParams prior = eval_prior(model, record.profile());
    const BetaParams post = posterior_update(prior, record.target);
    EstimateRecord e;
    e.id = record.id;
    e.q_eb = posterior_mean(post);
    e.var_eb = posterior_variance_proxy(post);
    e.prior = prior;
    e.q_mle = estimate_mle(record);
    e.q_pooled = estimate_pooled(record);
    e.local_affinity = prior.nu();
    return e;
  } catch (const data_error&) {
    throw;
  } catch (const std::exception& ex) {
    throw data_error("marker " + record.id + ": " + ex.what());
  }
}

std::vector<EstimateRecord> estimate_all(const PriorModel& model, const MarkerDataset& data, unsigned threads) {
  const auto& records = data.records();
  std::vector<std::optional<EstimateRecord>> slots(records.size());
  std::vector<std::string> errors(records.size());
  for_each_shard(records.size(), kDefaultShards, threads, [&](ShardRange range) {
    for (std::size_t i = range.begin; i < range.end; ++i) {
      try {
        slots[i] = estimate_eb(model, records[i]);
      } catch (const std::exception& ex) {
        errors[i] = ex.what();
      }
    }
  });

  std::string message;
  std::size_t n_failed = 0;
  for (const auto& e : errors) {
    if (e.empty()) continue;
    if (n_failed < 10) message += (n_failed == 0 ? "" : "; ") + e;
    ++n_failed;
  }
  if (n_failed > 0) {
    if (n_failed > 10) message += "; ... (" + std::to_string(n_failed) + " markers failed)";
    throw data_error(message);
  }

  std::vector<EstimateRecord> out;
  out.reserve(records.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace ebfreq

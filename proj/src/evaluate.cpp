#include "ebfreq/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "ebfreq/error.hpp"
#include "ebfreq/likelihood.hpp"

namespace ebfreq {

namespace {

void require_bins(int n_bins) {
  if (n_bins < 1) throw domain_error("number of bins must be positive");
}

std::size_t bin_index(double q, int n_bins) {
  const auto idx = static_cast<long>(std::floor(q * n_bins));
  return static_cast<std::size_t>(std::clamp(idx, 0L, static_cast<long>(n_bins) - 1));
}

std::vector<ProfileBin> empty_profile(int n_bins) {
  std::vector<ProfileBin> bins(static_cast<std::size_t>(n_bins));
  for (int i = 0; i < n_bins; ++i) {
    bins[static_cast<std::size_t>(i)].lo = static_cast<double>(i) / n_bins;
    bins[static_cast<std::size_t>(i)].hi = static_cast<double>(i + 1) / n_bins;
  }
  return bins;
}

// For each estimate, the index of the reference record with the same id.
template <class Ref>
std::vector<std::size_t> align(std::span<const EstimateRecord> estimates, std::span<const Ref> reference,
                               const char* what) {
  if (estimates.size() != reference.size()) {
    throw data_error(std::string("estimates have ") + std::to_string(estimates.size()) + " markers but the " +
                     what + " has " + std::to_string(reference.size()));
  }
  std::unordered_map<std::string, std::size_t> index;
  index.reserve(reference.size());
  for (std::size_t i = 0; i < reference.size(); ++i) {
    if (!index.emplace(reference[i].id, i).second) {
      throw data_error("marker " + reference[i].id + ": duplicate id in the " + what);
    }
  }
  std::vector<std::size_t> out;
  out.reserve(estimates.size());
  for (const auto& e : estimates) {
    const auto it = index.find(e.id);
    if (it == index.end()) throw data_error("marker " + e.id + ": not present in the " + what);
    out.push_back(it->second);
  }
  return out;
}

// Errors qhat - reference collected per bin, decomposed with a second pass.
struct BinErrors {
  std::vector<double> errors;
  std::size_t markers = 0;
};

void finish_pooled(std::vector<ProfileBin>& bins, const std::vector<BinErrors>& acc) {
  for (std::size_t b = 0; b < bins.size(); ++b) {
    bins[b].count = acc[b].markers;
    const auto& errors = acc[b].errors;
    if (errors.empty()) continue;
    const double n = static_cast<double>(errors.size());
    CompensatedSum sum, sum_sq;
    for (double e : errors) {
      sum.add(e);
      sum_sq.add(e * e);
    }
    const double bias = sum.value() / n;
    CompensatedSum spread;
    for (double e : errors) spread.add((e - bias) * (e - bias));
    bins[b].bias_sq = bias * bias;
    bins[b].mse = sum_sq.value() / n;
    bins[b].variance = spread.value() / n;
  }
}

}  // namespace

std::string to_string(Estimator estimator) {
  switch (estimator) {
    case Estimator::mle: return "mle";
    case Estimator::pooled: return "pooled";
    case Estimator::eb: return "eb";
  }
  return "unknown";
}

double estimator_value(const EstimateRecord& record, Estimator estimator) {
  switch (estimator) {
    case Estimator::mle: return record.q_mle;
    case Estimator::pooled: return record.q_pooled;
    case Estimator::eb: return record.q_eb;
  }
  return record.q_eb;
}

std::string to_string(BiasConvention convention) {
  return convention == BiasConvention::pooled_bin ? "pooled-bin" : "per-marker";
}

BiasConvention parse_bias_convention(const std::string& name) {
  if (name == "pooled-bin") return BiasConvention::pooled_bin;
  if (name == "per-marker") return BiasConvention::per_marker;
  throw domain_error("unknown bias convention '" + name + "' (expected pooled-bin or per-marker)");
}

EvalReport mse_vs_truth(std::span<const EstimateRecord> estimates, std::span<const TruthRecord> truth,
                        Estimator estimator, int n_bins) {
  require_bins(n_bins);
  const auto idx = align(estimates, truth, "truth table");
  EvalReport report;
  report.estimator = estimator;
  report.n_markers = estimates.size();
  report.profile = empty_profile(n_bins);
  std::vector<BinErrors> acc(report.profile.size());
  CompensatedSum total;
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    const double q = truth[idx[i]].q_true;
    const double e = estimator_value(estimates[i], estimator) - q;
    total.add(e * e);
    auto& a = acc[bin_index(q, n_bins)];
    a.errors.push_back(e);
    ++a.markers;
  }
  finish_pooled(report.profile, acc);
  report.mse_raw = estimates.empty() ? 0.0 : total.value() / static_cast<double>(estimates.size());
  report.mse_corrected = report.mse_raw;
  report.correction_term = 0.0;
  return report;
}

EvalReport mse_vs_validation(std::span<const EstimateRecord> estimates,
                             std::span<const ValidationRecord> validation, Estimator estimator, int n_bins) {
  require_bins(n_bins);
  const auto idx = align(estimates, validation, "validation table");
  EvalReport report;
  report.estimator = estimator;
  report.validation_mode = true;
  report.n_markers = estimates.size();
  report.profile = empty_profile(n_bins);
  std::vector<BinErrors> acc(report.profile.size());
  CompensatedSum raw, correction;
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    const auto& val = validation[idx[i]];
    if (val.counts.trials() < 2) {
      throw data_error("marker " + val.id + ": validation sample needs at least 2 alleles");
    }
    const double qv = val.counts.proportion();
    const double e = estimator_value(estimates[i], estimator) - qv;
    raw.add(e * e);
    correction.add(qv * (1.0 - qv) / static_cast<double>(val.counts.trials() - 1));
    auto& a = acc[bin_index(qv, n_bins)];
    a.errors.push_back(e);
    ++a.markers;
  }
  finish_pooled(report.profile, acc);
  const double n = static_cast<double>(std::max<std::size_t>(1, estimates.size()));
  report.mse_raw = raw.value() / n;
  report.correction_term = correction.value() / n;
  report.mse_corrected = report.mse_raw - report.correction_term;
  return report;
}

std::vector<ProfileBin> bias_variance_profile(const std::vector<std::vector<EstimateRecord>>& replicates,
                                              std::span<const TruthRecord> truth, Estimator estimator,
                                              int n_bins, BiasConvention convention) {
  require_bins(n_bins);
  if (replicates.size() < 2) {
    throw domain_error("bias/variance profile needs at least 2 replicates, got " +
                       std::to_string(replicates.size()));
  }
  // values[i][r]: estimate for truth marker i in replicate r.
  const std::size_t n = truth.size();
  const std::size_t reps = replicates.size();
  std::vector<double> values(n * reps);
  for (std::size_t r = 0; r < reps; ++r) {
    const auto idx = align(std::span<const EstimateRecord>(replicates[r]), truth, "truth table");
    for (std::size_t i = 0; i < idx.size(); ++i) {
      values[idx[i] * reps + r] = estimator_value(replicates[r][i], estimator);
    }
  }

  std::vector<ProfileBin> bins = empty_profile(n_bins);
  if (convention == BiasConvention::pooled_bin) {
    std::vector<BinErrors> acc(bins.size());
    for (std::size_t i = 0; i < n; ++i) {
      auto& a = acc[bin_index(truth[i].q_true, n_bins)];
      for (std::size_t r = 0; r < reps; ++r) {
        a.errors.push_back(values[i * reps + r] - truth[i].q_true);
      }
      ++a.markers;
    }
    finish_pooled(bins, acc);
    return bins;
  }

  struct MarkerAcc {
    CompensatedSum mse, bias_sq, variance;
    std::size_t n = 0;
  };
  std::vector<MarkerAcc> acc(bins.size());
  const double rd = static_cast<double>(reps);
  for (std::size_t i = 0; i < n; ++i) {
    const double q = truth[i].q_true;
    double mean = 0.0;
    for (std::size_t r = 0; r < reps; ++r) mean += values[i * reps + r];
    mean /= rd;
    double var = 0.0;
    double sq = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
      const double d = values[i * reps + r] - mean;
      const double e = values[i * reps + r] - q;
      var += d * d;
      sq += e * e;
    }
    var /= rd;
    sq /= rd;
    const double bias = mean - q;
    auto& a = acc[bin_index(q, n_bins)];
    a.bias_sq.add(bias * bias);
    a.variance.add(var);
    a.mse.add(sq);
    ++a.n;
  }
  for (std::size_t b = 0; b < bins.size(); ++b) {
    bins[b].count = acc[b].n;
    if (acc[b].n == 0) continue;
    const double m = static_cast<double>(acc[b].n);
    bins[b].bias_sq = acc[b].bias_sq.value() / m;
    bins[b].variance = acc[b].variance.value() / m;
    bins[b].mse = acc[b].mse.value() / m;
  }
  return bins;
}

}  // namespace ebfreq

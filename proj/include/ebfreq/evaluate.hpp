#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ebfreq/beta_binomial.hpp"
#include "ebfreq/estimate.hpp"

namespace ebfreq {

enum class Estimator { mle, pooled, eb };

std::string to_string(Estimator estimator);
double estimator_value(const EstimateRecord& record, Estimator estimator);

// Simulation truth for one marker.
struct TruthRecord {
  std::string id;
  std::vector<double> p_true;  // one per booster
  double q_true = 0.0;
};

// Held-out target counts used as an imperfect gold standard.
struct ValidationRecord {
  std::string id;
  CountPair counts;
};

// How bias and variance are split within a frequency bin.
//   pooled_bin: over all (marker, replicate) errors e = qhat - q in the bin,
//               bias^2 = mean(e)^2 and variance = mean((e - mean(e))^2).
//   per_marker: bias^2 = (mean over replicates of qhat - q)^2 and variance = replicate
//               variance, each averaged over markers in the bin.
// Both use divide-by-count variances, under which mse = bias^2 + variance exactly.
enum class BiasConvention { pooled_bin, per_marker };

std::string to_string(BiasConvention convention);
BiasConvention parse_bias_convention(const std::string& name);

struct ProfileBin {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;  // markers (not marker-replicate pairs) in the bin
  std::optional<double> mse;
  std::optional<double> bias_sq;
  std::optional<double> variance;

  double center() const { return 0.5 * (lo + hi); }
};

struct EvalReport {
  Estimator estimator = Estimator::eb;
  bool validation_mode = false;
  std::size_t n_markers = 0;
  double mse_raw = 0.0;
  double mse_corrected = 0.0;   // mse_raw - correction_term
  double correction_term = 0.0; // mean of qval (1 - qval) / (n_val - 1); 0 in truth mode
  // Binned by true q (truth mode) or by validation frequency (validation mode).
  std::vector<ProfileBin> profile;
};

inline constexpr int kDefaultBins = 20;

EvalReport mse_vs_truth(std::span<const EstimateRecord> estimates, std::span<const TruthRecord> truth,
                        Estimator estimator = Estimator::eb, int n_bins = kDefaultBins);

// Corrected MSE against validation counts; every validation sample needs at least 2 alleles.
// The corrected value is not floored at zero.
EvalReport mse_vs_validation(std::span<const EstimateRecord> estimates,
                             std::span<const ValidationRecord> validation, Estimator estimator = Estimator::eb,
                             int n_bins = kDefaultBins);

// Needs at least two replicate estimate tables over the same truth.
std::vector<ProfileBin> bias_variance_profile(const std::vector<std::vector<EstimateRecord>>& replicates,
                                              std::span<const TruthRecord> truth,
                                              Estimator estimator = Estimator::eb, int n_bins = kDefaultBins,
                                              BiasConvention convention = BiasConvention::pooled_bin);

}  // namespace ebfreq

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ebfreq/dataset.hpp"
#include "ebfreq/evaluate.hpp"
#include "ebfreq/prior_model.hpp"

namespace ebfreq {

// How target frequencies q relate to booster frequencies p.
//   conditional: p_k ~ marginal, q | p ~ Beta(a(p), b(p)) from the conditional model
//   identical:   q ~ marginal, every p_k = q
//   independent: q and every p_k drawn independently from the marginal
//   drift:       q ~ marginal, p_k | q ~ Beta(c_k q, c_k (1 - q)); smaller c_k is more divergent
enum class SimMode { conditional, identical, independent, drift };

std::string to_string(SimMode mode);
SimMode parse_sim_mode(const std::string& name);

struct SimConfig {
  std::size_t n_markers = 55000;
  BetaParams booster_marginal{0.198, 0.198};
  // Stand-in for the unpublished conditional coefficients: the CHB -> JPT EB1 fit.
  PriorModel conditional = Eb1Model{0.038, {36.88}};
  std::vector<std::int64_t> n_x{90};
  std::int64_t n_y = 30;
  std::uint64_t seed = 1;
  SimMode mode = SimMode::conditional;
  std::vector<double> drift;  // one concentration per booster, drift mode only
  std::string id_prefix = "m";
};

// Throws domain_error on an inconsistent configuration.
void validate(const SimConfig& config);

struct SimulatedData {
  MarkerDataset data;
  std::vector<TruthRecord> truth;
};

// Deterministic in config.seed; marker i uses its own random streams, so the
// output does not depend on the thread count.
SimulatedData simulate_dataset(const SimConfig& config, unsigned threads = 1);

// Fresh binomial counts for fixed true frequencies (replicates over the same truth).
MarkerDataset sample_counts(std::span<const TruthRecord> truth, std::span<const std::int64_t> n_x,
                            std::int64_t n_y, std::uint64_t seed, unsigned threads = 1);

// Splits every marker's target alleles: round(fraction * n) go to the first part, with
// successes drawn hypergeometrically; the second part gets the remainder. Boosters are
// copied to both parts unless strip_boosters is set.
std::pair<MarkerDataset, MarkerDataset> split_dataset(const MarkerDataset& data, double fraction,
                                                      std::uint64_t seed, bool strip_boosters = false);

}  // namespace ebfreq

#pragma once

#include <string>
#include <vector>

#include "ebfreq/beta_binomial.hpp"
#include "ebfreq/dataset.hpp"
#include "ebfreq/prior_model.hpp"

namespace ebfreq {

struct EstimateRecord {
  std::string id;
  double q_eb = 0.0;      // posterior mean
  double var_eb = 0.0;    // posterior variance proxy
  BetaParams prior{1.0, 1.0};
  double q_mle = 0.0;
  double q_pooled = 0.0;
  double local_affinity = 0.0;
};

// y / n_Y.
double estimate_mle(const MarkerRecord& record);

// (y + sum_k x_k) / (n_Y + sum_k n_k).
double estimate_pooled(const MarkerRecord& record);

EstimateRecord estimate_eb(const PriorModel& model, const MarkerRecord& record);

// Record order is preserved. All failing markers are reported together in one data_error.
std::vector<EstimateRecord> estimate_all(const PriorModel& model, const MarkerDataset& data,
                                         unsigned threads = 1);

}  // namespace ebfreq

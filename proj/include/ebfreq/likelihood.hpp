#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ebfreq/dataset.hpp"
#include "ebfreq/prior_model.hpp"

namespace ebfreq {

// -sum_j ln BetaBinom(n_j, a(p_j), b(p_j))(y_j), summed in record order with
// compensated summation. Errors name the offending marker.
double neg_log_likelihood(const PriorModel& model, const MarkerDataset& data);

// Markers sharing a booster profile and target trial count, with a histogram of target successes.
struct MarkerGroup {
  std::vector<double> profile;
  std::int64_t trials = 0;
  std::vector<std::pair<std::int64_t, double>> successes;  // (y, multiplicity), y ascending
  double log_choose_sum = 0.0;  // sum of multiplicity * ln C(trials, y)
  std::size_t n_markers = 0;
};

std::vector<MarkerGroup> group_markers(const MarkerDataset& data);
std::vector<MarkerGroup> group_markers(std::span<const MarkerRecord> records);

struct GroupTerm {
  double neg_log_lik = 0.0;
  double d_a = 0.0;  // derivative of neg_log_lik with respect to a
  double d_b = 0.0;
};

// Negative log-likelihood of one group under Beta(a, b), with its derivatives.
GroupTerm group_term(const MarkerGroup& group, double a, double b);

// Prior parameters that are linear in a coefficient vector:
// a_g = A_g . theta, b_g = B_g . theta, one row per group.
struct LinearDesign {
  std::size_t n_params = 0;
  std::vector<double> a_rows;  // n_groups x n_params, row-major
  std::vector<double> b_rows;
};

// Negative log-likelihood of grouped data as a function of the coefficient vector.
// Shards over groups are fixed, so the value does not depend on the thread count.
class DesignObjective {
 public:
  DesignObjective(std::vector<MarkerGroup> groups, LinearDesign design, unsigned threads = 1);

  std::size_t n_params() const { return design_.n_params; }
  std::size_t n_groups() const { return groups_.size(); }
  const std::vector<MarkerGroup>& groups() const { return groups_; }

  // Returns +inf if any group's a or b is not positive.
  double evaluate(std::span<const double> theta, std::span<double> grad) const;

 private:
  std::vector<MarkerGroup> groups_;
  LinearDesign design_;
  unsigned threads_;
};

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v);
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace ebfreq

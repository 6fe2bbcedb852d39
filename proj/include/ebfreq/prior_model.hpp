#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <variant>
#include <vector>

#include "ebfreq/beta_binomial.hpp"

namespace ebfreq {

// Observed allele frequencies in the K booster samples for one marker.
class BoosterProfile {
 public:
  explicit BoosterProfile(std::vector<double> freqs);
  BoosterProfile(std::initializer_list<double> freqs) : BoosterProfile(std::vector<double>(freqs)) {}

  std::size_t size() const { return freqs_.size(); }
  double operator[](std::size_t k) const { return freqs_[k]; }
  const std::vector<double>& freqs() const { return freqs_; }

  // Elementwise 1 - p.
  BoosterProfile complement() const;

 private:
  std::vector<double> freqs_;
};

// One window of the windowed prior: booster frequencies in [lo, hi] share a Beta prior.
struct WindowBin {
  double lo = 0.0;
  double hi = 0.0;
  BetaParams params{1.0, 1.0};
  std::size_t n_markers = 0;
  bool converged = true;
  // The MLE ran off to the parameter floor or to very large a + b.
  bool boundary = false;
};

struct WindowedModel {
  std::vector<WindowBin> bins;  // ordered, non-overlapping
  double delta = 0.0;           // 0 means one bin per distinct booster frequency
};

// a = beta0 + sum_k beta_k p_k,  b = beta0 + sum_k beta_k (1 - p_k).
struct Eb1Model {
  double beta0 = 0.0;
  std::vector<double> betas;
};

// EB1 for one booster with extra pseudo-counts at the endpoints p = 0 and p = 1.
struct Eb2Model {
  double beta0 = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
  double beta3 = 0.0;
};

// a = sum_k sum_j N_j(p_k) theta_jk,  b = sum_k sum_j N_j(1 - p_k) gamma_jk.
// With symmetric set, gamma is theta.
struct SplineModel {
  int n_basis = 8;
  bool symmetric = true;
  std::vector<std::vector<double>> theta;  // [K][n_basis]
  std::vector<std::vector<double>> gamma;  // empty when symmetric
};

using PriorModel = std::variant<WindowedModel, Eb1Model, Eb2Model, SplineModel>;

std::string variant_name(const PriorModel& model);

// Number of booster samples the model conditions on.
std::size_t booster_count(const PriorModel& model);

// Structural checks (dimensions, finite coefficients, positivity where it is required).
void validate(const PriorModel& model);

BetaParams eval_prior(const PriorModel& model, const BoosterProfile& profile);

// Effective sample size of the booster information.
double affinity(const PriorModel& model);

// True when the affinity is our extension rather than the standard definition
// (multi-booster EB1 and splines, and EB2).
bool affinity_is_extended(const PriorModel& model);

double local_affinity(const PriorModel& model, const BoosterProfile& profile);

}  // namespace ebfreq

#pragma once

#include <iosfwd>
#include <string>

#include "ebfreq/fit.hpp"
#include "ebfreq/prior_model.hpp"
#include "ebfreq/simulate.hpp"

namespace ebfreq {

// Model documents are JSON objects:
//
//   {
//     "format": "ebfreq-model", "format_version": 1,
//     "variant": "eb1", "boosters": 1,
//     "coefficients": {...},
//     "affinity": {"value": 36.95, "definition": "standard" | "extended"},
//     "fit": {"neg_log_lik", "iterations", "converged", "gradient_norm", "n_markers", "dataset_hash"}
//   }
//
// coefficients by variant:
//   windowed  {"delta", "bins": [{"lo", "hi", "a", "b", "n_markers", "converged", "boundary"}]}
//   eb1       {"beta0", "betas": [...]}
//   eb2       {"beta0", "beta1", "beta2", "beta3"}
//   spline    {"knots": {"kind": "clamped-uniform", "degree": 3, "values": [...]},
//              "n_basis", "symmetric", "theta": [[...] per booster], "gamma": [[...]]}
//
// "affinity" is informational and ignored on reading; "fit" is optional.
//
// Simulation configs:
//
//   {
//     "format": "ebfreq-simconfig", "format_version": 1,
//     "n_markers", "booster_marginal": {"a", "b"},
//     "conditional": {"variant", "coefficients"},
//     "n_x": [...], "n_y", "seed", "mode", "drift": [...], "id_prefix"
//   }
//
// Every key except "format" and "format_version" may be omitted in a config and takes its default.

inline constexpr int kModelFormatVersion = 1;

void write_model(std::ostream& out, const FitResult& fit);
void write_model(std::ostream& out, const PriorModel& model);
void write_model(const std::string& path, const FitResult& fit);

FitResult read_model(std::istream& in, const std::string& source = "<stream>");
FitResult read_model(const std::string& path);

void write_sim_config(std::ostream& out, const SimConfig& config);
SimConfig read_sim_config(std::istream& in, const std::string& source = "<stream>");
SimConfig read_sim_config(const std::string& path);

}  // namespace ebfreq

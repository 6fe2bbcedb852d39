#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ebfreq/dataset.hpp"
#include "ebfreq/estimate.hpp"
#include "ebfreq/evaluate.hpp"

namespace ebfreq {

// Tab-separated text formats. Each file starts with a format line
//   ##format=<name>;version=<n>
// followed by a header row and one marker per line.
//
// counts-tsv    id, <target>.x, <target>.n, then <booster>.x, <booster>.n per booster
// raw-tsv       id, allele1, allele2, then <sample>.c1, <sample>.c2 for target and boosters
// estimates-tsv id, q_mle, q_pooled, q_eb, var_eb, prior_a, prior_b, local_affinity
// truth-tsv     id, p_true.<booster> per booster, q_true
// eval-tsv      '#key=value' summary lines, then the binned profile
//
// Machine files carry 17 significant digits.

inline constexpr int kFormatVersion = 1;

std::string format_number(double value, int significant_digits = 17);

MarkerDataset read_counts_tsv(std::istream& in, const std::string& source = "<stream>");
MarkerDataset read_counts_tsv(const std::string& path);
void write_counts_tsv(std::ostream& out, const MarkerDataset& data);
void write_counts_tsv(const std::string& path, const MarkerDataset& data);

// One bi-allelic marker before orientation.
struct RawMarkerLine {
  std::string id;
  char allele1 = 'A';
  char allele2 = 'C';
  // (count of allele1, count of allele2) for the target, then each booster.
  std::vector<std::array<std::int64_t, 2>> counts;
};

struct RawTable {
  std::vector<std::string> sample_names;  // target first
  std::vector<RawMarkerLine> lines;
};

// The alphabetically lesser nucleotide (A < C < G < T) becomes allele A.
MarkerRecord orient(const RawMarkerLine& line);
RawTable read_raw_tsv(std::istream& in, const std::string& source = "<stream>");
MarkerDataset orient_table(const RawTable& table, const std::string& source);

void write_estimates_tsv(std::ostream& out, const std::vector<EstimateRecord>& estimates);
std::vector<EstimateRecord> read_estimates_tsv(std::istream& in, const std::string& source = "<stream>");

void write_truth_tsv(std::ostream& out, const std::vector<TruthRecord>& truth,
                     const std::vector<std::string>& booster_names);
std::vector<TruthRecord> read_truth_tsv(std::istream& in, const std::string& source = "<stream>");

// Target counts of a counts-tsv file as validation records.
std::vector<ValidationRecord> validation_from(const MarkerDataset& data);

void write_eval_tsv(std::ostream& out, const std::vector<EvalReport>& reports);
void write_profile_tsv(std::ostream& out, const std::vector<ProfileBin>& profile, Estimator estimator,
                       BiasConvention convention, std::size_t replicates);
// Human-readable summary with 4 significant digits.
void write_eval_table(std::ostream& out, const std::vector<EvalReport>& reports);

}  // namespace ebfreq

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ebfreq/beta_binomial.hpp"
#include "ebfreq/prior_model.hpp"

namespace ebfreq {

struct MarkerRecord {
  std::string id;
  CountPair target;
  std::vector<CountPair> boosters;

  // p_k = x_k / n_k for each booster.
  BoosterProfile profile() const;
};

struct DatasetMetadata {
  std::string source;
  std::string target_name = "target";
  std::vector<std::string> booster_names;
  bool oriented = false;  // allele A chosen by the alphabetical rule
};

class MarkerDataset {
 public:
  MarkerDataset() = default;
  // Throws data_error on inconsistent booster counts or duplicate ids.
  MarkerDataset(std::vector<MarkerRecord> records, DatasetMetadata metadata);

  const std::vector<MarkerRecord>& records() const { return records_; }
  const DatasetMetadata& metadata() const { return metadata_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  std::size_t booster_count() const { return metadata_.booster_names.size(); }

  // 64-bit FNV-1a over the counts, rendered as 16 hex digits.
  std::string content_hash() const;

 private:
  std::vector<MarkerRecord> records_;
  DatasetMetadata metadata_;
};

}  // namespace ebfreq

#include "ebfreq/dataset.hpp"

#include <cstdio>
#include <unordered_set>

#include "ebfreq/error.hpp"

namespace ebfreq {

BoosterProfile MarkerRecord::profile() const {
  std::vector<double> freqs;
  freqs.reserve(boosters.size());
  for (const auto& b : boosters) freqs.push_back(b.proportion());
  return BoosterProfile(std::move(freqs));
}

MarkerDataset::MarkerDataset(std::vector<MarkerRecord> records, DatasetMetadata metadata)
    : records_(std::move(records)), metadata_(std::move(metadata)) {
  const std::size_t k = metadata_.booster_names.size();
  std::unordered_set<std::string> seen;
  seen.reserve(records_.size());
  for (const auto& r : records_) {
    if (r.boosters.size() != k) {
      throw data_error("marker " + r.id + ": has " + std::to_string(r.boosters.size()) +
                       " booster counts, dataset declares " + std::to_string(k));
    }
    if (!seen.insert(r.id).second) {
      throw data_error("marker " + r.id + ": duplicate marker id");
    }
  }
}

std::string MarkerDataset::content_hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const auto mix = [&h](const void* data, std::size_t n) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= bytes[i];
      h *= 0x100000001b3ULL;
    }
  };
  const auto mix_int = [&](std::int64_t v) {
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xff);
    mix(buf, 8);
  };
  mix_int(static_cast<std::int64_t>(booster_count()));
  for (const auto& r : records_) {
    mix(r.id.data(), r.id.size());
    mix("\t", 1);
    mix_int(r.target.successes());
    mix_int(r.target.trials());
    for (const auto& b : r.boosters) {
      mix_int(b.successes());
      mix_int(b.trials());
    }
  }
  char out[17];
  std::snprintf(out, sizeof(out), "%016llx", static_cast<unsigned long long>(h));
  return out;
}

}  // namespace ebfreq

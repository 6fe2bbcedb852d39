#include "ebfreq/random.hpp"

#include <cmath>
#include <string>

#include "ebfreq/error.hpp"

namespace ebfreq {

namespace {

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id) {
  std::uint64_t mix = stream_id ^ 0x632be59bd9b4e019ULL;
  std::uint64_t state = seed ^ splitmix64(mix);
  for (auto& word : s_) word = splitmix64(state);
}

std::uint64_t RandomStream::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RandomStream::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

__extension__ using uint128 = unsigned __int128;

std::uint64_t RandomStream::below(std::uint64_t bound) {
  if (bound == 0) throw domain_error("RandomStream::below: bound must be positive");
  uint128 m = static_cast<uint128>(next()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<uint128>(next()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double sample_standard_normal(RandomStream& rng) {
  for (;;) {
    const double u = 2.0 * rng.uniform() - 1.0;
    const double v = 2.0 * rng.uniform() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) {
      return u * std::sqrt(-2.0 * std::log(s) / s);
    }
  }
}

double sample_log_gamma(RandomStream& rng, double shape) {
  if (!(shape > 0.0) || !std::isfinite(shape)) {
    throw domain_error("sample_log_gamma: shape must be positive, got " + std::to_string(shape));
  }
  if (shape < 1.0) {
    const double u = 1.0 - rng.uniform();  // (0, 1]
    return sample_log_gamma(rng, shape + 1.0) + std::log(u) / shape;
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double x = sample_standard_normal(rng);
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = rng.uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return std::log(d) + std::log(v);
    if (u > 0.0 && std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
      return std::log(d) + std::log(v);
    }
  }
}

double sample_beta(RandomStream& rng, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw domain_error("sample_beta: shapes must be positive");
  }
  const double log_ga = sample_log_gamma(rng, a);
  const double log_gb = sample_log_gamma(rng, b);
  return 1.0 / (1.0 + std::exp(log_gb - log_ga));
}

std::int64_t sample_binomial(RandomStream& rng, std::int64_t n, double p) {
  if (n < 0 || !(p >= 0.0 && p <= 1.0)) {
    throw domain_error("sample_binomial: need n >= 0 and p in [0, 1]");
  }
  std::int64_t k = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    if (rng.uniform() < p) ++k;
  }
  return k;
}

std::int64_t sample_hypergeometric(RandomStream& rng, std::int64_t successes, std::int64_t total,
                                   std::int64_t draws) {
  if (total < 0 || successes < 0 || successes > total || draws < 0 || draws > total) {
    throw domain_error("sample_hypergeometric: inconsistent urn");
  }
  std::int64_t remaining = total;
  std::int64_t remaining_successes = successes;
  std::int64_t k = 0;
  for (std::int64_t i = 0; i < draws; ++i) {
    const auto pick = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(remaining)));
    if (pick < remaining_successes) {
      ++k;
      --remaining_successes;
    }
    --remaining;
  }
  return k;
}

}  // namespace ebfreq

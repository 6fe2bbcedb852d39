#pragma once

#include <cstdint>

namespace ebfreq {

// Reproducible random variates. Every algorithm here is fixed so a seed gives the
// same stream on any platform:
//   engine      xoshiro256** seeded through SplitMix64 from (seed, stream id)
//   uniform     top 53 bits of the engine output times 2^-53
//   bounded int Lemire's multiply-and-reject (integers only)
//   normal      Marsaglia polar method
//   gamma       Marsaglia-Tsang for shape >= 1; shape < 1 via Gamma(shape+1) * U^(1/shape),
//               carried in log space
//   beta        two gammas, combined as 1 / (1 + exp(ln G_b - ln G_a))
//   binomial    n Bernoulli trials
//   hypergeom.  sequential draws without replacement using bounded integers

std::uint64_t splitmix64(std::uint64_t& state);

class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next();
  // Uniform on [0, 1).
  double uniform();
  // Uniform integer in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t s_[4];
};

double sample_standard_normal(RandomStream& rng);
// Natural log of a Gamma(shape, 1) variate.
double sample_log_gamma(RandomStream& rng, double shape);
double sample_beta(RandomStream& rng, double a, double b);
std::int64_t sample_binomial(RandomStream& rng, std::int64_t n, double p);
// Successes among `draws` items taken without replacement from `total` items of which
// `successes` are successes.
std::int64_t sample_hypergeometric(RandomStream& rng, std::int64_t successes, std::int64_t total,
                                   std::int64_t draws);

}  // namespace ebfreq

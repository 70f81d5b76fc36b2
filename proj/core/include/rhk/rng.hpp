#pragma once

#include <array>
#include <cstdint>

namespace rhk {

// Philox4x32-10 block function (Salmon et al., SC'11).  Pure function of
// (counter, key); the basis of all randomness in the toolkit.
std::array<std::uint32_t, 4> philox4x32(const std::array<std::uint32_t, 4>& ctr,
                                        const std::array<std::uint32_t, 2>& key);

// Counter-based stream.  A stream is identified by (seed, stream_id); the
// 128-bit Philox counter holds (draw_index, stream_id) and the key holds the
// seed, so streams never overlap and any (seed, replica) pair reproduces the
// same sequence regardless of scheduling.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64();

  // Uniform on the open interval (0, 1).
  double uniform01();

  // Standard normal via inverse CDF (Wichura's AS241), one uniform per draw.
  double normal();

  double exponential(double rate);

  // Geometric on {1, 2, ...} with success probability p: P[k] = p (1-p)^(k-1).
  std::uint64_t geometric_from1(double p);

  std::uint64_t poisson(double mean);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t counter_ = 0;
  std::array<std::uint64_t, 2> buf_{};
  int buf_pos_ = 2;

  void refill();
  std::uint64_t poisson_small(double mean);
  std::uint64_t poisson_ptrs(double mean);
};

// Inverse standard normal CDF (AS241, ~1 ulp of double accuracy).
double inverse_normal_cdf(double p);

// Standard normal CDF.
double normal_cdf(double x);

}  // namespace rhk

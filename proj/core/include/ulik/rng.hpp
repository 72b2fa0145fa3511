#pragma once

#include <array>
#include <cstdint>

namespace ulik {

/// Counter-based random stream (Philox4x32-10).
///
/// A stream is identified by (seed, stream id); the n-th output depends only on
/// that pair and n, so substreams can be handed to worker threads in any order
/// without changing results.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

  /// Child stream keyed by `index`. Deterministic; independent of how many
  /// values were already drawn from the parent.
  RngStream substream(std::uint64_t index) const noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_; }

  std::uint64_t next_u64() noexcept;

  /// Uniform on (0, 1].
  double uniform() noexcept;
  /// Uniform on the open interval (0, 1).
  double uniform_open() noexcept;
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform_open(); }
  /// Standard normal by inversion of the Gaussian CDF.
  double normal() noexcept;
  /// exp(1) as -ln U, U in (0, 1].
  double exponential() noexcept;

 private:
  void refill() noexcept;

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  unsigned buffered_ = 0;
};

/// Philox4x32-10 block function, exposed for known-answer tests.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) noexcept;

/// Inverse of the standard normal CDF (Wichura AS241, ~1e-16 relative).
double normal_quantile(double p) noexcept;

}  // namespace ulik

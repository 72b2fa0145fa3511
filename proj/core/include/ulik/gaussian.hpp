#pragma once

namespace ulik {

/// Mean / variance pair of a Gaussian random variable in the dB domain.
struct GaussianApprox {
  double mean = 0.0;      // dB or dBm
  double variance = 0.0;  // dB^2

  friend bool operator==(const GaussianApprox&, const GaussianApprox&) = default;
};

}  // namespace ulik

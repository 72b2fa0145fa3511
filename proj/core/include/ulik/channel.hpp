#pragma once

#include "ulik/gaussian.hpp"

namespace ulik {

/// Log-distance path loss and shadowing parameters.
struct ChannelParams {
  double a_db = 103.8;          // path loss at 1 km
  double alpha = 20.9;          // dB per decade of distance
  double sigma_shad_sq = 100.0; // per-link shadowing variance, dB^2
  int n_antennas = 1;           // carried for bookkeeping; fading is exp(1) for any count

  /// Throws kInvalidArgument unless alpha > 0, sigma_shad_sq >= 0, A finite.
  void validate() const;

  friend bool operator==(const ChannelParams&, const ChannelParams&) = default;
};

/// Fractional pathloss compensation: P = p0 + eta * (pathloss + shadowing).
struct PowerControl {
  double p0_dbm = -76.0;
  double eta = 0.8;

  /// Throws kInvalidArgument unless 0 < eta <= 1 and p0 finite.
  void validate() const;

  friend bool operator==(const PowerControl&, const PowerControl&) = default;
};

/// A + alpha * log10(d); throws kNonpositiveDistance for d <= 0.
double path_loss(const ChannelParams& params, double d_km);

double tx_power_dbm(const PowerControl& pc, double l_bb, double s_bb);

/// Interference (dBm) at the victim BS from a UE at distance d_bb from its own
/// BS and d_b1 from the victim BS, with shadowing s_bb, s_b1 (dB) and linear
/// fading gain h_b1.
double interference_db(const PowerControl& pc, const ChannelParams& params, double d_bb,
                       double d_b1, double s_bb, double s_b1, double h_b1);

/// Distribution of eta * S_bb - S_b1: N(0, (1 + eta^2) sigma_shad_sq).
GaussianApprox combined_shadow_stats(const ChannelParams& params, const PowerControl& pc);

}  // namespace ulik

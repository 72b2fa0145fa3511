#include "ulik/channel.hpp"

#include <cmath>

#include "ulik/error.hpp"

namespace ulik {

void ChannelParams::validate() const {
  if (!std::isfinite(a_db)) throw Error(Errc::kInvalidArgument, "A_db must be finite");
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw Error(Errc::kInvalidArgument, "alpha must be positive");
  if (!(sigma_shad_sq >= 0.0) || !std::isfinite(sigma_shad_sq))
    throw Error(Errc::kInvalidArgument, "sigma_shad_sq must be non-negative");
  if (n_antennas < 1) throw Error(Errc::kInvalidArgument, "n_antennas must be at least 1");
}

void PowerControl::validate() const {
  if (!std::isfinite(p0_dbm)) throw Error(Errc::kInvalidArgument, "p0_dbm must be finite");
  if (!(eta > 0.0 && eta <= 1.0)) throw Error(Errc::kInvalidArgument, "eta must lie in (0, 1]");
}

double path_loss(const ChannelParams& params, double d_km) {
  if (!(d_km > 0.0)) throw Error(Errc::kNonpositiveDistance, "distance must be positive");
  return params.a_db + params.alpha * std::log10(d_km);
}

double tx_power_dbm(const PowerControl& pc, double l_bb, double s_bb) {
  return pc.p0_dbm + pc.eta * (l_bb + s_bb);
}

double interference_db(const PowerControl& pc, const ChannelParams& params, double d_bb,
                       double d_b1, double s_bb, double s_b1, double h_b1) {
  if (!(h_b1 > 0.0)) throw Error(Errc::kNonpositiveFading, "fading gain must be positive");
  const double l_bb = path_loss(params, d_bb);
  const double l_b1 = path_loss(params, d_b1);
  return tx_power_dbm(pc, l_bb, s_bb) - l_b1 - s_b1 + 10.0 * std::log10(h_b1);
}

GaussianApprox combined_shadow_stats(const ChannelParams& params, const PowerControl& pc) {
  return {0.0, (1.0 + pc.eta * pc.eta) * params.sigma_shad_sq};
}

}  // namespace ulik

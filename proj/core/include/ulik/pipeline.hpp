#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ulik/gaussian_approx.hpp"
#include "ulik/lognormal_sum.hpp"
#include "ulik/scenario.hpp"

namespace ulik {

struct AnalysisOptions {
  std::size_t samples = 1'000'000;  // integration points per cell
  int m0 = 12;
  double s1 = 1.0;
  double s2 = 0.1;
  double tau_threshold = kDefaultTauThreshold;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  DesignScale scale = DesignScale::kRelativeToFit;
};

struct CellAnalysis {
  std::int64_t cell_id = 0;
  RegionMoments moments;
  TauCertificate tau;
  GaussianApprox q;  // interference of this cell, dBm
};

struct AnalysisResult {
  GaussianApprox shadow;     // combined shadowing S
  SurrogateResult surrogate; // G = S + 10 log10 H
  std::vector<CellAnalysis> cells;  // one per interferer, declaration order
  LognormalFit fit;          // aggregate interference, dBm
  AnalysisOptions options;
};

/// Region moments, tau and Q_b for every interferer, then the lognormal fit of
/// the aggregate. Cell b integrates with RngStream(seed).substream(id_b).
/// Module errors are rethrown with the cell id prepended.
AnalysisResult analyze(const NetworkScenario& scenario, const AnalysisOptions& options = {});

}  // namespace ulik

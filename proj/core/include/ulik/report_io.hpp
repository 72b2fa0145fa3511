#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ulik/distribution.hpp"
#include "ulik/pipeline.hpp"

namespace ulik {

/// Shortest "%.17g" rendering; round-trips every double.
std::string format_double(double v);

/// report.csv: cell_id,mu_l,var_l,abs3_l,tau,passes,mu_qb,var_qb
void write_report_csv(const std::filesystem::path& path, const AnalysisResult& result);

/// fit.csv: scenario_id,s1,s2,m0,mu_q,var_q,residual1,residual2,iterations,converged
void write_fit_csv(const std::filesystem::path& path, const std::string& scenario_id,
                   const AnalysisResult& result);

/// cdf.csv: value_dbm followed by analytic_cdf and/or empirical_cdf, whichever
/// the first point carries.
void write_cdf_csv(const std::filesystem::path& path, const std::vector<CdfPoint>& curve);

struct ReportRow {
  std::int64_t cell_id = 0;
  double mu_l = 0.0;
  double var_l = 0.0;
  double abs3_l = 0.0;
  double tau = 0.0;
  bool passes = false;
  double mu_qb = 0.0;
  double var_qb = 0.0;
};

struct FitRow {
  std::string scenario_id;
  double s1 = 0.0;
  double s2 = 0.0;
  int m0 = 0;
  double mu_q = 0.0;
  double var_q = 0.0;
  double residual1 = 0.0;
  double residual2 = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Readers for the files above; throw kIoError on missing files or malformed rows.
std::vector<ReportRow> read_report_csv(const std::filesystem::path& path);
FitRow read_fit_csv(const std::filesystem::path& path);
std::vector<CdfPoint> read_cdf_csv(const std::filesystem::path& path);

}  // namespace ulik

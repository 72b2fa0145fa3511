#include "ulik/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ulik/error.hpp"

namespace ulik {
namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::kIoError, "cannot open " + path.string() + " for writing");
  return out;
}

void close_out(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error(Errc::kIoError, "failed writing " + path.string());
}

const char* boolean(bool b) { return b ? "true" : "false"; }

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name, const std::filesystem::path& path) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw Error(Errc::kIoError, path.string() + ": missing column " + name);
  }
};

Table read_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIoError, "cannot open " + path.string());
  Table t;
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::kIoError, path.string() + " is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  t.header = split(line);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split(line);
    if (fields.size() != t.header.size())
      throw Error(Errc::kIoError, path.string() + ": row has " + std::to_string(fields.size()) +
                                      " fields, header has " + std::to_string(t.header.size()));
    t.rows.push_back(std::move(fields));
  }
  return t;
}

double to_double(const std::string& s, const std::filesystem::path& path) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(Errc::kIoError, path.string() + ": not a number: '" + s + "'");
}

std::int64_t to_int(const std::string& s, const std::filesystem::path& path) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(Errc::kIoError, path.string() + ": not an integer: '" + s + "'");
}

bool to_bool(const std::string& s, const std::filesystem::path& path) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw Error(Errc::kIoError, path.string() + ": not a boolean: '" + s + "'");
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_report_csv(const std::filesystem::path& path, const AnalysisResult& result) {
  std::ofstream out = open_out(path);
  out << "cell_id,mu_l,var_l,abs3_l,tau,passes,mu_qb,var_qb\n";
  for (const CellAnalysis& c : result.cells) {
    out << c.cell_id << ',' << format_double(c.moments.mu_l) << ','
        << format_double(c.moments.var_l) << ',' << format_double(c.moments.abs3_l) << ','
        << format_double(c.tau.tau) << ',' << boolean(c.tau.passes) << ','
        << format_double(c.q.mean) << ',' << format_double(c.q.variance) << '\n';
  }
  close_out(out, path);
}

void write_fit_csv(const std::filesystem::path& path, const std::string& scenario_id,
                   const AnalysisResult& result) {
  if (scenario_id.find_first_of(",\n\r") != std::string::npos)
    throw Error(Errc::kInvalidArgument, "scenario id must not contain commas or newlines");
  const LognormalFit& f = result.fit;
  std::ofstream out = open_out(path);
  out << "scenario_id,s1,s2,m0,mu_q,var_q,residual1,residual2,iterations,converged\n";
  out << scenario_id << ',' << format_double(result.options.s1) << ','
      << format_double(result.options.s2) << ',' << result.options.m0 << ','
      << format_double(f.mu_q) << ',' << format_double(f.var_q) << ','
      << format_double(f.residuals[0]) << ',' << format_double(f.residuals[1]) << ','
      << f.iterations << ',' << boolean(f.converged) << '\n';
  close_out(out, path);
}

void write_cdf_csv(const std::filesystem::path& path, const std::vector<CdfPoint>& curve) {
  const bool analytic = !curve.empty() && curve.front().analytic.has_value();
  const bool empirical = !curve.empty() && curve.front().empirical.has_value();
  std::ofstream out = open_out(path);
  out << "value_dbm";
  if (analytic) out << ",analytic_cdf";
  if (empirical) out << ",empirical_cdf";
  out << '\n';
  for (const CdfPoint& p : curve) {
    out << format_double(p.value_dbm);
    if (analytic) out << ',' << format_double(p.analytic.value());
    if (empirical) out << ',' << format_double(p.empirical.value());
    out << '\n';
  }
  close_out(out, path);
}

std::vector<ReportRow> read_report_csv(const std::filesystem::path& path) {
  const Table t = read_table(path);
  const std::size_t id = t.column("cell_id", path), mu_l = t.column("mu_l", path),
                    var_l = t.column("var_l", path), abs3 = t.column("abs3_l", path),
                    tau = t.column("tau", path), passes = t.column("passes", path),
                    mu_q = t.column("mu_qb", path), var_q = t.column("var_qb", path);
  std::vector<ReportRow> rows;
  for (const auto& r : t.rows) {
    rows.push_back({to_int(r[id], path), to_double(r[mu_l], path), to_double(r[var_l], path),
                    to_double(r[abs3], path), to_double(r[tau], path), to_bool(r[passes], path),
                    to_double(r[mu_q], path), to_double(r[var_q], path)});
  }
  return rows;
}

FitRow read_fit_csv(const std::filesystem::path& path) {
  const Table t = read_table(path);
  if (t.rows.size() != 1) throw Error(Errc::kIoError, path.string() + ": expected one fit row");
  const auto& r = t.rows.front();
  FitRow f;
  f.scenario_id = r[t.column("scenario_id", path)];
  f.s1 = to_double(r[t.column("s1", path)], path);
  f.s2 = to_double(r[t.column("s2", path)], path);
  f.m0 = static_cast<int>(to_int(r[t.column("m0", path)], path));
  f.mu_q = to_double(r[t.column("mu_q", path)], path);
  f.var_q = to_double(r[t.column("var_q", path)], path);
  f.residual1 = to_double(r[t.column("residual1", path)], path);
  f.residual2 = to_double(r[t.column("residual2", path)], path);
  f.iterations = static_cast<int>(to_int(r[t.column("iterations", path)], path));
  f.converged = to_bool(r[t.column("converged", path)], path);
  return f;
}

std::vector<CdfPoint> read_cdf_csv(const std::filesystem::path& path) {
  const Table t = read_table(path);
  const std::size_t value = t.column("value_dbm", path);
  std::optional<std::size_t> analytic;
  std::optional<std::size_t> empirical;
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (t.header[i] == "analytic_cdf") analytic = i;
    if (t.header[i] == "empirical_cdf") empirical = i;
  }
  std::vector<CdfPoint> curve;
  for (const auto& r : t.rows) {
    CdfPoint p;
    p.value_dbm = to_double(r[value], path);
    if (analytic) p.analytic = to_double(r[*analytic], path);
    if (empirical) p.empirical = to_double(r[*empirical], path);
    curve.push_back(p);
  }
  return curve;
}

}  // namespace ulik

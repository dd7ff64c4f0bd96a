#pragma once

// CSV tables shared by the CLI and the figure data export. Output is
// byte-stable: shortest round-trip number formatting, '.' decimals, LF line
// endings, one provenance comment line, then a mandatory header row.

#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "qmaint/chain_model.hpp"
#include "qmaint/critical.hpp"
#include "qmaint/oracle.hpp"
#include "qmaint/solver.hpp"

namespace qmaint {

// Shortest representation that parses back to the same double.
[[nodiscard]] std::string format_number(double v);

struct Provenance {
  std::string preset = "none";
  std::string config_hash;

  // "# qmaint <version> preset=<name> config_hash=<hex>"
  [[nodiscard]] std::string line() const;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row);
};

void write_csv(std::ostream& out, const Provenance& p, const Table& t);
[[nodiscard]] std::string to_csv(const Provenance& p, const Table& t);
// Writes to a temporary file first and renames it into place.
void write_csv_file(const std::filesystem::path& path, const Provenance& p, const Table& t);

// d,value,method,N,pair; Undefined points are left out.
[[nodiscard]] Table curve_table(const std::vector<CriticalCurve>& curves);
// d,e_i,em_crit,dominant_strategy
[[nodiscard]] Table surface_table(const SuperioritySurface& s);
// replication,X_n,X_n_bad
[[nodiscard]] Table simulation_table(const SimResult& r);
// d,field,a,b,N
[[nodiscard]] Table regime_table(const std::vector<double>& d_grid, const RegimeBounds& r,
                                 double stages);

struct StrategyRow {
  Strategy strategy = Strategy::Zero;
  CostBreakdown costs;
  bool degenerate = false;
};
// One row per pure strategy, with the cheapest flagged.
[[nodiscard]] std::vector<StrategyRow> compare_strategies(const Chain& chain);
// strategy,C_fix,C_var,C_wry,C_tot,X_n,X_n_bad,theta_C,c_u,cheapest
[[nodiscard]] Table compare_table(const std::vector<StrategyRow>& rows);
// Aligned plain-text rendering of the same rows.
[[nodiscard]] std::string compare_text(const std::vector<StrategyRow>& rows);

}  // namespace qmaint

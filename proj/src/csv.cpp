#include "qmaint/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "qmaint/errors.hpp"

namespace qmaint {

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string Provenance::line() const {
  return "# qmaint " QMAINT_VERSION " preset=" + preset + " config_hash=" + config_hash;
}

void Table::add(std::vector<std::string> row) {
  if (row.size() != header.size()) throw std::logic_error("CSV row width differs from header");
  rows.push_back(std::move(row));
}

void write_csv(std::ostream& out, const Provenance& p, const Table& t) {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (k) out << ',';
      out << cells[k];
    }
    out << '\n';
  };
  out << p.line() << '\n';
  line(t.header);
  for (const auto& r : t.rows) line(r);
}

std::string to_csv(const Provenance& p, const Table& t) {
  std::ostringstream out;
  write_csv(out, p, t);
  return out.str();
}

void write_csv_file(const std::filesystem::path& path, const Provenance& p, const Table& t) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    write_csv(out, p, t);
  }
  std::filesystem::rename(tmp, path);
}

Table curve_table(const std::vector<CriticalCurve>& curves) {
  Table t{{"d", "value", "method", "N", "pair"}, {}};
  for (const auto& c : curves) {
    for (const auto& pt : c.points) {
      if (pt.status == PointStatus::Undefined) continue;
      t.add({format_number(pt.d), format_number(pt.value), std::string(csv_label(c.method)),
             format_number(c.stages), std::string(to_string(c.pair))});
    }
  }
  return t;
}

Table surface_table(const SuperioritySurface& s) {
  Table t{{"d", "e_i", "em_crit", "dominant_strategy"}, {}};
  for (const auto& c : s.cells) {
    t.add({format_number(c.d), format_number(c.e_i), format_number(c.em_crit),
           std::string(to_string(c.dominant))});
  }
  return t;
}

Table simulation_table(const SimResult& r) {
  Table t{{"replication", "X_n", "X_n_bad"}, {}};
  for (std::size_t k = 0; k < r.per_replication.size(); ++k) {
    t.add({std::to_string(k), std::to_string(r.per_replication[k].sold),
           std::to_string(r.per_replication[k].defective)});
  }
  return t;
}

Table regime_table(const std::vector<double>& d_grid, const RegimeBounds& r, double stages) {
  Table t{{"d", "field", "a", "b", "N"}, {}};
  for (double d : d_grid) {
    t.add({format_number(d), std::string(to_string(field_of(d, r))), format_number(r.a),
           format_number(r.b), format_number(stages)});
  }
  return t;
}

std::vector<StrategyRow> compare_strategies(const Chain& chain) {
  std::vector<StrategyRow> rows;
  for (Strategy s : kPureStrategies) {
    StrategyRow row;
    row.strategy = s;
    try {
      row.costs = cost_breakdown(chain, s);
    } catch (const DegenerateChain&) {
      row.degenerate = true;
      row.costs.unit_cost = std::numeric_limits<double>::infinity();
    }
    rows.push_back(row);
  }
  return rows;
}

namespace {

std::size_t cheapest_index(const std::vector<StrategyRow>& rows) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    if (rows[k].costs.unit_cost < rows[best].costs.unit_cost) best = k;
  }
  return best;
}

}  // namespace

Table compare_table(const std::vector<StrategyRow>& rows) {
  Table t{{"strategy", "C_fix", "C_var", "C_wry", "C_tot", "X_n", "X_n_bad", "theta_C", "c_u",
           "cheapest"},
          {}};
  const std::size_t best = cheapest_index(rows);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& c = rows[k].costs;
    t.add({std::string(to_string(rows[k].strategy)), format_number(c.fixed_cost),
           format_number(c.variable_cost), format_number(c.warranty_cost),
           format_number(c.total_cost), format_number(c.sold_volume),
           format_number(c.defective_volume), format_number(c.survival),
           format_number(c.unit_cost), k == best ? "1" : "0"});
  }
  return t;
}

std::string compare_text(const std::vector<StrategyRow>& rows) {
  std::ostringstream out;
  out << std::left << std::setw(12) << "strategy" << std::right << std::setw(16) << "C_tot"
      << std::setw(16) << "X_n" << std::setw(14) << "X_n_bad" << std::setw(12) << "c_u" << '\n';
  const std::size_t best = cheapest_index(rows);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& c = rows[k].costs;
    out << std::left << std::setw(12) << to_string(rows[k].strategy) << std::right;
    if (rows[k].degenerate) {
      out << std::setw(58) << "degenerate (all output scrapped)";
    } else {
      out << std::fixed << std::setprecision(1) << std::setw(16) << c.total_cost << std::setw(16)
          << c.sold_volume << std::setw(14) << c.defective_volume << std::setprecision(4)
          << std::setw(12) << c.unit_cost;
    }
    out << (k == best ? "  <- cheapest" : "") << '\n';
  }
  return out.str();
}

}  // namespace qmaint

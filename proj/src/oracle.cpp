#include "qmaint/oracle.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "qmaint/errors.hpp"

namespace qmaint {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

struct StageRates {
  double hit = 0.0;      // d_mk
  double removal = 0.0;  // e_ik
};

std::vector<StageRates> stage_rates(const Chain& masked) {
  std::vector<StageRates> out;
  out.reserve(masked.size());
  for (const auto& st : masked.stages()) {
    out.push_back({(1.0 - st.effectiveness.monitoring) * st.defect_rate,
                   st.effectiveness.inspection});
  }
  return out;
}

// Per-stage integer tallies of one replication: units leaving stage k, the
// defective ones among them, and the units removed there.
struct Tally {
  std::vector<std::uint64_t> sold, defective, removed;
  explicit Tally(std::size_t n) : sold(n, 0), defective(n, 0), removed(n, 0) {}
};

// Walks one unit through the chain; returns false if inspection removed it.
bool run_unit(const std::vector<StageRates>& rates, std::uint64_t seed, std::uint64_t rep,
              std::uint64_t unit, bool& bad, std::uint64_t* sold, std::uint64_t* defective,
              std::uint64_t* removed) {
  bad = false;
  for (std::size_t k = 0; k < rates.size(); ++k) {
    const auto counter = 2 * static_cast<std::uint64_t>(k);
    if (counter_uniform(seed, rep, unit, counter) < rates[k].hit) {
      bad = true;
      if (counter_uniform(seed, rep, unit, counter + 1) < rates[k].removal) {
        if (removed) ++removed[k];
        return false;
      }
    }
    if (sold) {
      ++sold[k];
      if (bad) ++defective[k];
    }
  }
  return true;
}

std::uint64_t whole_units(double x0) {
  if (!(x0 >= 1.0) || x0 != std::floor(x0) || x0 > 9007199254740992.0) {
    throw std::invalid_argument("simulation needs a whole-number X0 between 1 and 2^53, got " +
                                std::to_string(x0));
  }
  return static_cast<std::uint64_t>(x0);
}

void check_budget(double x0, const SimSettings& settings) {
  if (x0 * static_cast<double>(settings.replications) > settings.unit_budget) {
    throw Overflow("X0 * replications = " +
                   std::to_string(x0 * static_cast<double>(settings.replications)) +
                   " exceeds the unit budget " + std::to_string(settings.unit_budget));
  }
}

SimResult summarize(const Chain& masked, const std::vector<StageRates>& rates,
                    const SimSettings& settings, std::vector<ReplicationCounts> counts,
                    const std::vector<Tally>& tallies) {
  SimResult r;
  r.replications = settings.replications;
  r.seed = settings.seed;
  const double reps = static_cast<double>(settings.replications);
  double sum_sold = 0.0, sum_bad = 0.0;
  for (const auto& c : counts) {
    sum_sold += static_cast<double>(c.sold);
    sum_bad += static_cast<double>(c.defective);
  }
  r.sold_mean = sum_sold / reps;
  r.defective_mean = sum_bad / reps;
  if (settings.replications > 1) {
    double ss_sold = 0.0, ss_bad = 0.0;
    for (const auto& c : counts) {
      ss_sold += std::pow(static_cast<double>(c.sold) - r.sold_mean, 2);
      ss_bad += std::pow(static_cast<double>(c.defective) - r.defective_mean, 2);
    }
    r.sold_stderr = std::sqrt(ss_sold / (reps - 1.0) / reps);
    r.defective_stderr = std::sqrt(ss_bad / (reps - 1.0) / reps);
  }
  r.per_replication = std::move(counts);
  if (settings.record_trace) {
    r.trace.resize(masked.size());
    for (std::size_t k = 0; k < masked.size(); ++k) {
      std::uint64_t sold = 0, bad = 0, removed = 0;
      for (const auto& t : tallies) {
        sold += t.sold[k];
        bad += t.defective[k];
        removed += t.removed[k];
      }
      r.trace[k] = {static_cast<double>(sold) / reps, static_cast<double>(bad) / reps,
                    static_cast<double>(removed) / reps, rates[k].hit};
    }
  }
  return r;
}

}  // namespace

double counter_uniform(std::uint64_t seed, std::uint64_t replication, std::uint64_t unit,
                       std::uint64_t counter) {
  std::uint64_t x = mix(seed + kGolden);
  x = mix(x ^ (replication * kGolden + 1));
  x = mix(x ^ (unit * kGolden + 2));
  x = mix(x ^ (counter * kGolden + 3));
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

Volumes recursive_volumes(const Chain& chain, Strategy s) {
  const Chain masked = chain.masked(s);
  Volumes v;
  double sold = chain.initial_volume();
  double bad = 0.0;
  for (const auto& st : masked.stages()) {
    const double hit = (1.0 - st.effectiveness.monitoring) * st.defect_rate;
    const double removed = st.effectiveness.inspection * hit * sold;
    // Old defects survive unless hit again; a re-hit unit counts once, in
    // the stage's own defect share, and can be removed there.
    const double next_bad = bad * (1.0 - hit) + sold * (1.0 - st.effectiveness.inspection) * hit;
    sold -= removed;
    bad = next_bad;
    v.trace.push_back({sold, bad, removed, hit});
  }
  v.sold = sold;
  v.defective = bad;
  return v;
}

void SimSettings::validate() const {
  if (replications < 1) throw std::invalid_argument("replications must be >= 1");
  if (!(unit_budget > 0.0)) throw std::invalid_argument("unit budget must be positive");
}

SimResult simulate(const Chain& chain, Strategy s, const SimSettings& settings) {
  settings.validate();
  const std::uint64_t units = whole_units(chain.initial_volume());
  check_budget(chain.initial_volume(), settings);
  const Chain masked = chain.masked(s);
  const auto rates = stage_rates(masked);
  const std::size_t n = rates.size();

  std::vector<ReplicationCounts> counts(settings.replications);
  std::vector<Tally> tallies;
  if (settings.record_trace) tallies.assign(settings.replications, Tally(n));

  for (std::uint64_t rep = 0; rep < settings.replications; ++rep) {
    std::uint64_t sold = 0, bad_sold = 0;
    std::uint64_t* ts = settings.record_trace ? tallies[rep].sold.data() : nullptr;
    std::uint64_t* td = settings.record_trace ? tallies[rep].defective.data() : nullptr;
    std::uint64_t* tr = settings.record_trace ? tallies[rep].removed.data() : nullptr;
    const auto total = static_cast<std::int64_t>(units);
    if (settings.record_trace) {
#pragma omp parallel for schedule(static) reduction(+ : sold, bad_sold, ts[:n], td[:n], tr[:n])
      for (std::int64_t u = 0; u < total; ++u) {
        bool bad = false;
        if (run_unit(rates, settings.seed, rep, static_cast<std::uint64_t>(u), bad, ts, td, tr)) {
          ++sold;
          if (bad) ++bad_sold;
        }
      }
    } else {
#pragma omp parallel for schedule(static) reduction(+ : sold, bad_sold)
      for (std::int64_t u = 0; u < total; ++u) {
        bool bad = false;
        if (run_unit(rates, settings.seed, rep, static_cast<std::uint64_t>(u), bad, nullptr,
                     nullptr, nullptr)) {
          ++sold;
          if (bad) ++bad_sold;
        }
      }
    }
    counts[rep] = {sold, bad_sold};
  }
  return summarize(masked, rates, settings, std::move(counts), tallies);
}

namespace serial {

SimResult simulate(const Chain& chain, Strategy s, const SimSettings& settings) {
  settings.validate();
  const std::uint64_t units = whole_units(chain.initial_volume());
  check_budget(chain.initial_volume(), settings);
  const Chain masked = chain.masked(s);
  const auto rates = stage_rates(masked);

  std::vector<ReplicationCounts> counts(settings.replications);
  std::vector<Tally> tallies;
  if (settings.record_trace) tallies.assign(settings.replications, Tally(rates.size()));
  for (std::uint64_t rep = 0; rep < settings.replications; ++rep) {
    std::uint64_t* ts = settings.record_trace ? tallies[rep].sold.data() : nullptr;
    std::uint64_t* td = settings.record_trace ? tallies[rep].defective.data() : nullptr;
    std::uint64_t* tr = settings.record_trace ? tallies[rep].removed.data() : nullptr;
    for (std::uint64_t u = 0; u < units; ++u) {
      bool bad = false;
      if (run_unit(rates, settings.seed, rep, u, bad, ts, td, tr)) {
        ++counts[rep].sold;
        if (bad) ++counts[rep].defective;
      }
    }
  }
  return summarize(masked, rates, settings, std::move(counts), tallies);
}

}  // namespace serial

EmpiricalCosts empirical_costs(const Chain& chain, Strategy s, const SimResult& r) {
  const Chain masked = chain.masked(s);
  if (r.trace.size() != masked.size()) {
    throw std::invalid_argument("empirical costs need a recorded per-stage trace");
  }
  EmpiricalCosts out;
  double in_flow = chain.initial_volume();
  for (std::size_t k = 0; k < masked.size(); ++k) {
    out.variable_cost += masked.stages()[k].variable.total() * in_flow;
    in_flow = r.trace[k].sold;
  }
  if (r.sold_mean > 0.0) {
    out.warranty_cost = chain.kappa() * out.variable_cost / r.sold_mean * r.defective_mean;
  }
  return out;
}

}  // namespace qmaint

#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qmaint/errors.hpp"
#include "qmaint/homogenization.hpp"
#include "qmaint/oracle.hpp"

namespace qmaint::testing {

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Chain random_chain(Rng& rng, std::size_t n) {
  std::vector<StageParams> stages(n);
  for (auto& s : stages) {
    s.defect_rate = uniform(rng, 0.0, 0.3);
    s.effectiveness = {uniform(rng, 0.0, 1.0), uniform(rng, 0.0, 1.0)};
    s.variable = {uniform(rng, 1.0, 50.0), uniform(rng, 0.0, 5.0), uniform(rng, 0.0, 5.0)};
    s.fixed = {uniform(rng, 0.0, 1e5), uniform(rng, 0.0, 3e4), uniform(rng, 0.0, 3e4)};
  }
  const double x0 = std::pow(10.0, uniform(rng, 3.0, 7.0));
  return Chain(std::move(stages), x0, Reputation{uniform(rng, 0.0, 1.0), uniform(rng, 0.0, 2.0)});
}

Flow expected_flow(const Chain& chain, Strategy s) {
  const bool monitor = s == Strategy::Monitoring || s == Strategy::General;
  const bool inspect = s == Strategy::Inspection || s == Strategy::General;
  double good = chain.initial_volume();
  double bad = 0.0;
  double fixed = 0.0;
  double variable = 0.0;
  for (const auto& st : chain.stages()) {
    const double e_m = monitor ? st.effectiveness.monitoring : 0.0;
    const double e_i = inspect ? st.effectiveness.inspection : 0.0;
    fixed += st.fixed.production + (monitor ? st.fixed.monitoring : 0.0) +
             (inspect ? st.fixed.inspection : 0.0);
    const double v = st.variable.production + (monitor ? st.variable.monitoring : 0.0) +
                     (inspect ? st.variable.inspection : 0.0);
    variable += v * (good + bad);
    const double hit = (1.0 - e_m) * st.defect_rate;
    const double good_hit = good * hit;
    good -= good_hit;
    bad = bad * (1.0 - hit * e_i) + good_hit * (1.0 - e_i);
  }
  Flow f;
  f.sold = good + bad;
  f.bad_sold = bad;
  const double warranty = chain.kappa() * variable / f.sold * bad;
  f.unit_cost = (fixed + variable + warranty) / f.sold;
  return f;
}

double relative_error(double got, double want) {
  if (got == want) return 0.0;
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

Aggregates ref50_aggregates() {
  Aggregates a;
  a.C = 50 * 5e4;
  a.M = a.I = 50 * 1e4;
  a.c = 50 * 10.0;
  a.m = a.i = 50 * 1.0;
  a.initial_volume = 1e6;
  a.kappa = 1.0;
  return a;
}

Aggregates perturbed_aggregates(Rng& rng) {
  Aggregates a = ref50_aggregates();
  for (double* v : {&a.C, &a.M, &a.I, &a.c, &a.m, &a.i, &a.kappa}) *v *= uniform(rng, 0.5, 1.5);
  return a;
}

Chain uniform_chain(const Aggregates& a, std::size_t n, double d, double e_m, double e_i) {
  const double k = static_cast<double>(n);
  StageParams s;
  s.defect_rate = d;
  s.effectiveness = {e_m, e_i};
  s.variable = {a.c / k, a.m / k, a.i / k};
  s.fixed = {a.C / k, a.M / k, a.I / k};
  return Chain::uniform(n, s, a.initial_volume, reputation_for_kappa(a.kappa));
}

namespace {

void note(Deviation& dev, double err, const std::string& what) {
  ++dev.cases;
  if (dev.worst.empty() || err > dev.max) {
    dev.max = err;
    dev.worst = what;
  }
}

}  // namespace

Deviation homogenization_deviation(std::uint64_t seed, int chains) {
  Rng rng(seed);
  Deviation dev;
  for (int t = 0; t < chains; ++t) {
    const auto n = static_cast<std::size_t>(uniform(rng, 1.0, 21.0));
    const Chain chain = random_chain(rng, n);
    const double nd = static_cast<double>(n);
    for (Strategy s : kPureStrategies) {
      double source = 0.0;
      try {
        source = cost_breakdown(chain, s).unit_cost;
      } catch (const DegenerateChain&) {
        continue;
      }
      for (double stages : {1.0, nd, 2.0 * nd}) {
        const double h = homogenized_unit_cost(homogenize(chain, s, stages), s);
        std::ostringstream os;
        os << "chain " << t << " (n=" << n << "), " << to_string(s) << ", N=" << stages;
        note(dev, relative_error(h, source), os.str());
      }
    }
  }
  return dev;
}

Deviation oracle_deviation(std::uint64_t seed, int chains) {
  Rng rng(seed);
  Deviation dev;
  for (int t = 0; t < chains; ++t) {
    const auto n = static_cast<std::size_t>(uniform(rng, 1.0, 21.0));
    const Chain chain = random_chain(rng, n);
    for (Strategy s : {Strategy::Zero, Strategy::Inspection, Strategy::Monitoring,
                       Strategy::General}) {
      const Volumes v = recursive_volumes(chain, s);
      std::ostringstream os;
      os << "chain " << t << " (n=" << n << "), " << to_string(s);
      note(dev, relative_error(v.sold, sold_volume(chain, s)), os.str() + ", X_n");
      note(dev, relative_error(v.defective, defective_sold_volume(chain, s)),
           os.str() + ", X_n bad");
    }
  }
  return dev;
}

}  // namespace qmaint::testing

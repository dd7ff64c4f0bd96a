#pragma once

// Bracketed root finding: bisection safeguarding secant steps, plus a coarse
// sign-change scan to locate every crossing on an interval.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "qmaint/errors.hpp"

namespace qmaint {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

struct SolveSettings {
  double tolerance = 1e-5;  // on the varied parameter
  int max_iterations = 200;
  Interval bracket{0.0, 1.0};
  int scan_samples = 64;  // coarse samples when looking for several roots

  // Throws std::invalid_argument.
  void validate() const;
};

// One sign change of f, located between two scan samples.
struct Bracket {
  double lo, hi;
  double f_lo, f_hi;
};

struct ScanResult {
  std::vector<Bracket> brackets;
  std::vector<double> exact_roots;  // samples where f is exactly zero
  bool identically_zero = false;
};

// Sample points for a scan of [lo, hi]: log-spaced when lo > 0 and the
// interval spans more than two decades, linear otherwise.
[[nodiscard]] std::vector<double> scan_points(Interval range, int samples);

// Samples f at `xs` (ascending) and records every strict sign change.
template <class F>
ScanResult scan_sign_changes(F&& f, const std::vector<double>& xs) {
  ScanResult out;
  std::vector<double> fs(xs.size());
  bool all_zero = true;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    fs[k] = f(xs[k]);
    all_zero = all_zero && fs[k] == 0.0;
  }
  if (all_zero) {
    out.identically_zero = true;
    return out;
  }
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (fs[k] == 0.0) out.exact_roots.push_back(xs[k]);
    if (k + 1 < xs.size() &&
        ((fs[k] < 0.0 && fs[k + 1] > 0.0) || (fs[k] > 0.0 && fs[k + 1] < 0.0))) {
      out.brackets.push_back({xs[k], xs[k + 1], fs[k], fs[k + 1]});
    }
  }
  return out;
}

template <class F>
ScanResult scan_sign_changes(F&& f, Interval range, int samples) {
  return scan_sign_changes(f, scan_points(range, samples));
}

// Refines a sign change of f on [lo, hi]. Secant steps are taken while they
// land inside the bracket and at least halve it; otherwise the step is a
// bisection. Stops once the bracket is narrower than tolerance * 1e-3, which
// keeps the cost difference at the root well below the cost scale.
// Throws NoConvergence after settings.max_iterations.
template <class F>
double solve_bracketed(F&& f, Bracket b, const SolveSettings& settings) {
  double a = b.lo, fa = b.f_lo;
  double c = b.hi, fc = b.f_hi;
  if (fa == 0.0) return a;
  if (fc == 0.0) return c;
  const double stop_width = settings.tolerance * 1e-3;
  bool force_bisect = false;
  for (int it = 0; it < settings.max_iterations; ++it) {
    const double width = c - a;
    const double ulp_width =
        4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(c));
    if (width <= stop_width || width <= ulp_width) {
      return std::abs(fa) < std::abs(fc) ? a : c;
    }
    double x = 0.5 * (a + c);
    if (!force_bisect && std::isfinite(fa) && std::isfinite(fc)) {
      const double secant = c - fc * (c - a) / (fc - fa);
      if (secant > a && secant < c) x = secant;
    }
    const double fx = f(x);
    if (fx == 0.0) return x;
    if ((fx < 0.0) == (fa < 0.0)) {
      a = x;
      fa = fx;
    } else {
      c = x;
      fc = fx;
    }
    force_bisect = (c - a) > 0.5 * width;
  }
  throw NoConvergence("bracketed solve did not converge within " +
                      std::to_string(settings.max_iterations) + " iterations");
}

}  // namespace qmaint

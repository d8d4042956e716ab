#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <span>
#include <stdexcept>
#include <vector>

namespace gmx {

/* Deterministic adaptive quadrature on a 7-point Gauss / 15-point Kronrod
 * pair.  Intervals are bisected until the per-interval error estimate
 * |K15 - G7| fits within the interval's share of the absolute tolerance.
 * Known kinks of the integrand are split out beforehand so every piece
 * handed to the kernel is smooth. */

struct QuadratureOptions {
  double abs_tol = 1e-10;
  int max_depth = 48;
  long max_intervals = 400000;
};

namespace detail {

/* nonnegative abscissae of the 15-point Kronrod rule, ascending;
 * even indices are the embedded Gauss-7 nodes */
inline constexpr double kXgk[8] = {
    0.0,
    0.2077849550078984676007,
    0.4058451513773971669066,
    0.5860872354676911302941,
    0.7415311855993944398639,
    0.8648644233597690727897,
    0.9491079123427585245262,
    0.9914553711208126392069,
};
inline constexpr double kWgk[8] = {
    0.2094821410847278280130,
    0.2044329400752988924142,
    0.1903505780647854099133,
    0.1690047266392679028266,
    0.1406532597155259187452,
    0.1047900103222501838399,
    0.0630920926299785532907,
    0.0229353220105292249637,
};
inline constexpr double kWg[4] = {
    0.4179591836734693877551,
    0.3818300505051189449504,
    0.2797053914892766679015,
    0.1294849661688696932706,
};

struct PanelResult {
  double value;
  double err;
};

template <class F>
PanelResult gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double k15 = kWgk[0] * fc;
  double g7 = kWg[0] * fc;
  for (int i = 1; i < 8; ++i) {
    const double dx = kXgk[i] * h;
    const double fs = f(c - dx) + f(c + dx);
    k15 += kWgk[i] * fs;
    if ((i & 1) == 0) g7 += kWg[i >> 1] * fs;
  }
  return {k15 * h, std::abs(k15 - g7) * h};
}

template <class F>
struct AdaptiveState {
  F& f;
  const QuadratureOptions& opt;
  double total_width;
  long intervals = 0;
  double value = 0.0;
  double err = 0.0;

  void run(double a, double b, int depth) {
    if (++intervals > opt.max_intervals)
      throw std::runtime_error("quadrature interval budget exhausted");
    const PanelResult p = gk15(f, a, b);
    const double share = opt.abs_tol * ((b - a) / total_width);
    if (p.err <= share || depth >= opt.max_depth) {
      value += p.value;
      err += p.err;
      return;
    }
    const double mid = 0.5 * (a + b);
    run(a, mid, depth + 1);
    run(mid, b, depth + 1);
  }
};

}  // namespace detail

/* Integrate f over [a, b] to abs_tol, splitting first at the interior
 * kinks.  Throws std::runtime_error with the achieved error when the
 * estimate cannot be brought under tolerance. */
template <class F>
double integrate(F&& f, double a, double b, std::span<const double> kinks = {},
                 const QuadratureOptions& opt = {}) {
  if (!(a < b)) {
    if (a == b) return 0.0;
    throw std::invalid_argument("quadrature: empty or reversed interval");
  }
  std::vector<double> cuts{a};
  for (double k : kinks)
    if (k > a && k < b) cuts.push_back(k);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  detail::AdaptiveState<std::remove_reference_t<F>> state{f, opt, b - a};
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    state.run(cuts[i], cuts[i + 1], 0);

  if (state.err > opt.abs_tol) {
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "quadrature did not converge: achieved %.3e, requested %.3e",
                  state.err, opt.abs_tol);
    throw std::runtime_error(msg);
  }
  return state.value;
}

}  // namespace gmx

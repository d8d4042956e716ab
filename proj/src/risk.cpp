#include "gmx/risk.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "gmx/quadrature.hpp"

#if defined(GMX_HAVE_OPENMP)
#include <omp.h>
#endif

namespace gmx {

namespace {

constexpr double kLfSlack = 1e-6;     // support-maximum slack
constexpr double kProminence = 1e-9;  // peak floor over quadrature noise
constexpr double kBoundaryZone = 0.10;  // maxima this close to m count as the boundary rise

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

struct IntegrationDomain {
  double lo, hi;
  std::vector<double> kinks;
};

IntegrationDomain domain_for(double theta, const Likelihood& like,
                             std::span<const double> rule_kinks) {
  IntegrationDomain dom;
  if (like.kind == Likelihood::Kind::normal_unit) {
    dom.lo = theta - 10.0;
    dom.hi = theta + 10.0;
  } else {
    const double b = std::sqrt(like.mu / 2.0);
    dom.lo = theta - 40.0 * b;
    dom.hi = theta + 40.0 * b;
    dom.kinks.push_back(theta);  // density kink
  }
  dom.kinks.insert(dom.kinks.end(), rule_kinks.begin(), rule_kinks.end());
  return dom;
}

double density(double d, double theta, const Likelihood& like) {
  if (like.kind == Likelihood::Kind::normal_unit) return normal_pdf(d - theta);
  const double b = std::sqrt(like.mu / 2.0);
  return std::exp(-std::abs(d - theta) / b) / (2.0 * b);
}

template <class Rule>
double risk_integral(double theta, const Rule& rule,
                     std::span<const double> rule_kinks, const Likelihood& like) {
  const IntegrationDomain dom = domain_for(theta, like, rule_kinks);
  auto f = [&](double d) {
    const double e = rule(d) - theta;
    return e * e * density(d, theta, like);
  };
  return integrate(f, dom.lo, dom.hi, dom.kinks);
}

template <class Rule>
BiasVariance bias_variance_integral(double theta, const Rule& rule,
                                    std::span<const double> rule_kinks,
                                    const Likelihood& like) {
  const IntegrationDomain dom = domain_for(theta, like, rule_kinks);
  auto f1 = [&](double d) { return rule(d) * density(d, theta, like); };
  auto f2 = [&](double d) {
    const double v = rule(d);
    return v * v * density(d, theta, like);
  };
  const double mean = integrate(f1, dom.lo, dom.hi, dom.kinks);
  const double second = integrate(f2, dom.lo, dom.hi, dom.kinks);
  const double bias = theta - mean;
  return {bias * bias, std::max(0.0, second - mean * mean)};
}

/* golden-section maximization; returns (argmax, max) */
std::pair<double, double> golden_max(const std::function<double(double)>& f,
                                     double a, double b, int iters = 80) {
  constexpr double invphi = 0.6180339887498949;
  constexpr double invphi2 = 1.0 - invphi;
  double c = a + invphi2 * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters && b - a > 1e-15; ++i) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = a + invphi2 * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? std::make_pair(c, fc) : std::make_pair(d, fd);
}

void check_prior(double eps, double m) {
  if (!(eps >= 0.0 && eps <= 1.0))
    throw std::invalid_argument("risk: epsilon must lie in [0,1]");
  if (!(m > 0.0) || !std::isfinite(m))
    throw std::invalid_argument("risk: m must be positive and finite");
}

ShrinkageRule own_rule(double eps, double m, Model model, double mu) {
  return model == Model::one ? ShrinkageRule::model1(eps, m)
                             : ShrinkageRule::model2(eps, m, mu);
}

}  // namespace

Likelihood Likelihood::double_exp(double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu))
    throw std::invalid_argument("likelihood: mu must be positive and finite");
  return {Kind::double_exp, mu};
}

double ShrinkageRule::operator()(double d) const {
  if (model == Model::one) return rule_model1(d, ModelIParams{epsilon, m});
  return rule_model2(d, ModelIIParams{epsilon, m, mu});
}

ShrinkageRule ShrinkageRule::model1(double epsilon, double m) {
  check_prior(epsilon, m);
  return {Model::one, epsilon, m, 1.0};
}

ShrinkageRule ShrinkageRule::model2(double epsilon, double m, double mu) {
  check_prior(epsilon, m);
  if (!(mu > 0.0) || !std::isfinite(mu))
    throw std::invalid_argument("risk: mu must be positive and finite");
  return {Model::two, epsilon, m, mu};
}

std::vector<double> ShrinkageRule::kinks() const {
  if (model == Model::one) return {};
  return {-m, 0.0, m};
}

Likelihood ShrinkageRule::likelihood() const {
  return model == Model::one ? Likelihood::normal_unit()
                             : Likelihood::double_exp(mu);
}

double frequentist_risk(double theta, const ShrinkageRule& rule,
                        const Likelihood& like) {
  return risk_integral(theta, rule, rule.kinks(), like);
}

double frequentist_risk(double theta, const std::function<double(double)>& rule,
                        std::span<const double> rule_kinks, const Likelihood& like) {
  return risk_integral(theta, rule, rule_kinks, like);
}

BiasVariance bias_variance(double theta, const ShrinkageRule& rule,
                           const Likelihood& like) {
  return bias_variance_integral(theta, rule, rule.kinks(), like);
}

BiasVariance bias_variance(double theta, const std::function<double(double)>& rule,
                           std::span<const double> rule_kinks, const Likelihood& like) {
  return bias_variance_integral(theta, rule, rule_kinks, like);
}

double bayes_risk(double eps, double m, const ShrinkageRule& rule,
                  const Likelihood& like) {
  check_prior(eps, m);
  const double r0 = frequentist_risk(0.0, rule, like);
  const double rneg = frequentist_risk(-m, rule, like);
  const double rpos = frequentist_risk(m, rule, like);
  return eps * r0 + 0.5 * (1.0 - eps) * (rneg + rpos);
}

std::vector<double> risk_grid(std::span<const double> thetas,
                              const ShrinkageRule& rule, const Likelihood& like,
                              Exec exec) {
  std::vector<double> out(thetas.size());
  const std::vector<double> rk = rule.kinks();
#if defined(GMX_HAVE_OPENMP)
  if (exec == Exec::parallel) {
    const long n = long(thetas.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i)
      out[std::size_t(i)] = risk_integral(thetas[std::size_t(i)], rule, rk, like);
    return out;
  }
#else
  (void)exec;
#endif
  for (std::size_t i = 0; i < thetas.size(); ++i)
    out[i] = risk_integral(thetas[i], rule, rk, like);
  return out;
}

double sup_risk(const ShrinkageRule& rule, const Likelihood& like, double lo,
                double hi, double* argmax) {
  constexpr int kGrid = 513;
  std::vector<double> thetas(kGrid);
  for (int i = 0; i < kGrid; ++i)
    thetas[std::size_t(i)] = lo + (hi - lo) * double(i) / double(kGrid - 1);
  const std::vector<double> r = risk_grid(thetas, rule, like);

  std::size_t best = 0;
  for (std::size_t i = 1; i < r.size(); ++i)
    if (r[i] > r[best]) best = i;

  const double a = thetas[best == 0 ? 0 : best - 1];
  const double b = thetas[best + 1 < thetas.size() ? best + 1 : best];
  auto f = [&](double t) { return frequentist_risk(t, rule, like); };
  const auto [x, fx] = golden_max(f, a, b);

  if (fx >= r[best]) {
    if (argmax) *argmax = x;
    return fx;
  }
  if (argmax) *argmax = thetas[best];
  return r[best];
}

bool is_least_favorable(double eps, double m, Model model, double mu) {
  check_prior(eps, m);
  const ShrinkageRule rule = own_rule(eps, m, model, mu);
  const Likelihood like = rule.likelihood();
  const double at_bound = frequentist_risk(m, rule, like);
  const double worst = sup_risk(rule, like, 0.0, m);
  return worst <= at_bound + kLfSlack;
}

double mstar(double eps, Model model, double mu) {
  if (!(eps >= 0.0 && eps <= 0.99))
    throw std::invalid_argument("mstar: epsilon must lie in [0, 0.99]");
  double lo = 0.1, hi = 6.0;
  if (!is_least_favorable(eps, lo, model, mu))
    throw std::runtime_error("mstar: prior not least favorable at the lower bracket m=0.1");
  if (is_least_favorable(eps, hi, model, mu))
    throw std::runtime_error("mstar: least favorable at m=6, outside the search bracket");
  while (hi - lo > 1e-4) {
    const double mid = 0.5 * (lo + hi);
    if (is_least_favorable(eps, mid, model, mu))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::string to_string(RiskShape s) {
  switch (s) {
    case RiskShape::w: return "W";
    case RiskShape::vvv: return "VVV";
    case RiskShape::v: return "V";
  }
  return "?";
}

RiskShape risk_shape(double eps, double m, Model model, double mu) {
  check_prior(eps, m);
  const ShrinkageRule rule = own_rule(eps, m, model, mu);
  const Likelihood like = rule.likelihood();

  constexpr int kGrid = 2049;
  std::vector<double> thetas(kGrid);
  for (int i = 0; i < kGrid; ++i)
    thetas[std::size_t(i)] = m * double(i) / double(kGrid - 1);
  const std::vector<double> r = risk_grid(thetas, rule, like);

  /* a drop away from zero over a few grid steps marks a center peak */
  bool center_peak = false;
  for (int k : {1, 2, 4, 8})
    center_peak = center_peak || r[0] - r[std::size_t(k)] > kProminence;

  auto f = [&](double t) { return frequentist_risk(t, rule, like); };
  bool interior_peak = false;
  for (std::size_t i = 1; i + 1 < r.size() && !interior_peak; ++i) {
    if (!(r[i] >= r[i - 1] && r[i] >= r[i + 1])) continue;
    double left_min = r[0], right_min = r[i];
    for (std::size_t a = 0; a <= i; ++a) left_min = std::min(left_min, r[a]);
    for (std::size_t a = i; a < r.size(); ++a) right_min = std::min(right_min, r[a]);
    const double flank = std::max(left_min, right_min);
    if (r[i] - flank <= 0.5 * kProminence) continue;  // rounding-level plateau
    const auto [pos, val] = golden_max(f, thetas[i - 1], thetas[i + 1]);
    if (pos > (1.0 - kBoundaryZone) * m) continue;  // part of the boundary rise
    if (val - flank > kProminence) interior_peak = true;
  }

  if (interior_peak) return RiskShape::vvv;
  return center_peak ? RiskShape::w : RiskShape::v;
}

RiskProfile risk_profile(double eps, double m, Model model, int grid_size,
                         double mu) {
  check_prior(eps, m);
  if (grid_size < 2)
    throw std::invalid_argument("risk_profile: grid_size must be at least 2");
  const ShrinkageRule rule = own_rule(eps, m, model, mu);
  const Likelihood like = rule.likelihood();
  const std::vector<double> rk = rule.kinks();

  RiskProfile prof;
  prof.thetas.resize(std::size_t(grid_size));
  prof.risk.resize(std::size_t(grid_size));
  prof.bias_sq.resize(std::size_t(grid_size));
  prof.variance.resize(std::size_t(grid_size));
  for (int i = 0; i < grid_size; ++i)
    prof.thetas[std::size_t(i)] =
        -m + 2.0 * m * double(i) / double(grid_size - 1);

#if defined(GMX_HAVE_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
  for (long i = 0; i < long(grid_size); ++i) {
    const std::size_t u = std::size_t(i);
    const double theta = prof.thetas[u];
    prof.risk[u] = risk_integral(theta, rule, rk, like);
    const BiasVariance bv = bias_variance_integral(theta, rule, rk, like);
    prof.bias_sq[u] = bv.bias_sq;
    prof.variance[u] = bv.variance;
  }
  prof.shape = risk_shape(eps, m, model, mu);
  return prof;
}

}  // namespace gmx

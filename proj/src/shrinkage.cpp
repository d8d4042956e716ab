#include "gmx/shrinkage.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gmx {

namespace {

void check_common(double d, double epsilon, double m) {
  if (!std::isfinite(d)) throw std::invalid_argument("shrinkage: d must be finite");
  if (!(epsilon >= 0.0 && epsilon <= 1.0))
    throw std::invalid_argument("shrinkage: epsilon must lie in [0,1]");
  if (!(m > 0.0) || !std::isfinite(m))
    throw std::invalid_argument("shrinkage: m must be positive and finite");
}

}  // namespace

double rule_model1(double d, const ModelIParams& p) {
  check_common(d, p.epsilon, p.m);
  if (p.epsilon == 1.0) return 0.0;

  /* m*sinh(md) / (cosh(md) + rho*exp(m^2/2)), rho = eps/(1-eps), evaluated
   * through exp(-2|md|) so neither cosh nor the prior weight overflows */
  const double a = std::abs(p.m * d);
  const double sgn = d < 0.0 ? -1.0 : 1.0;
  const double rho = p.epsilon / (1.0 - p.epsilon);
  const double em2a = std::exp(-2.0 * a);
  const double x = 0.5 * p.m * p.m - a;
  double ratio;
  if (rho == 0.0) {
    ratio = (1.0 - em2a) / (1.0 + em2a);  // m*tanh(md)
  } else if (x >= 0.0) {
    const double t = std::exp(-x);
    ratio = (1.0 - em2a) * t / ((1.0 + em2a) * t + 2.0 * rho);
  } else {
    ratio = (1.0 - em2a) / (1.0 + em2a + 2.0 * rho * std::exp(x));
  }
  return p.m * sgn * ratio;
}

double rule_model2(double d, const ModelIIParams& p) {
  check_common(d, p.epsilon, p.m);
  if (!(p.mu > 0.0) || !std::isfinite(p.mu))
    throw std::invalid_argument("shrinkage: mu must be positive and finite");
  if (p.epsilon == 1.0) return 0.0;

  const double lam = std::sqrt(2.0 / p.mu);
  /* the rule is exactly constant beyond the spread, so clamping keeps the
   * exponent differences finite for arbitrarily large observations */
  const double dd = std::clamp(d, -p.m, p.m);
  const double ea = -lam * std::abs(dd - p.m);
  const double eb = -lam * std::abs(dd);
  const double ec = -lam * std::abs(dd + p.m);
  const double top = std::max(ea, std::max(eb, ec));
  const double wa = std::exp(ea - top);
  const double wb = std::exp(eb - top);
  const double wc = std::exp(ec - top);
  const double rho2 = 2.0 * p.epsilon / (1.0 - p.epsilon);
  return p.m * (wa - wc) / (wa + rho2 * wb + wc);
}

double soft_threshold(double d, double threshold) {
  if (!(threshold >= 0.0))
    throw std::invalid_argument("soft_threshold: threshold must be nonnegative");
  if (d > threshold) return d - threshold;
  if (d < -threshold) return d + threshold;
  return 0.0;
}

WaveletDecomposition apply_policy(const WaveletDecomposition& decomp,
                                  const LevelPolicy& policy) {
  if (policy.coarsest != decomp.coarsest)
    throw std::invalid_argument("apply_policy: coarsest level mismatch");
  if (policy.rules.size() != decomp.details.size())
    throw std::invalid_argument("apply_policy: a detail level is not covered");
  if (!(policy.sigma_hat > 0.0) || !std::isfinite(policy.sigma_hat))
    throw std::invalid_argument("apply_policy: sigma_hat must be positive");

  WaveletDecomposition out = decomp;
  for (std::size_t i = 0; i < out.details.size(); ++i) {
    const LevelRule& r = policy.rules[i];
    if (r.model == 1) {
      const ModelIParams p{r.epsilon, r.m / policy.sigma_hat};
      for (double& d : out.details[i])
        d = policy.sigma_hat * rule_model1(d / policy.sigma_hat, p);
    } else if (r.model == 2) {
      const ModelIIParams p{r.epsilon, r.m, r.mu};
      for (double& d : out.details[i]) d = rule_model2(d, p);
    } else {
      throw std::invalid_argument("apply_policy: rule model must be 1 or 2");
    }
  }
  return out;
}

}  // namespace gmx

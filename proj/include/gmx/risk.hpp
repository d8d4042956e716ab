#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "gmx/shrinkage.hpp"

namespace gmx {

enum class Model { one = 1, two = 2 };

struct Likelihood {
  enum class Kind { normal_unit, double_exp } kind;
  double mu = 1.0;  // double_exp only: d | theta ~ DE(theta, sqrt(mu/2))

  static Likelihood normal_unit() { return {Kind::normal_unit, 1.0}; }
  static Likelihood double_exp(double mu);
};

/* Value-semantic shrinkage rule; the model tag picks which parameters are
 * live.  Used so risk routines can be written once for both models. */
struct ShrinkageRule {
  Model model;
  double epsilon;
  double m;
  double mu = 1.0;

  double operator()(double d) const;
  static ShrinkageRule model1(double epsilon, double m);
  static ShrinkageRule model2(double epsilon, double m, double mu);
  /* points where the rule is not smooth, for quadrature splitting */
  std::vector<double> kinks() const;
  Likelihood likelihood() const;
};

/* E[(delta(d) - theta)^2] under d | theta, by adaptive quadrature. */
double frequentist_risk(double theta, const ShrinkageRule& rule,
                        const Likelihood& like);

/* generic-rule overload; rule_kinks lists the nondifferentiable points */
double frequentist_risk(double theta, const std::function<double(double)>& rule,
                        std::span<const double> rule_kinks, const Likelihood& like);

struct BiasVariance {
  double bias_sq;
  double variance;
};

BiasVariance bias_variance(double theta, const ShrinkageRule& rule,
                           const Likelihood& like);
BiasVariance bias_variance(double theta, const std::function<double(double)>& rule,
                           std::span<const double> rule_kinks, const Likelihood& like);

/* Bayes risk of the rule against the three-point prior
 * eps*delta_0 + (1-eps)/2*(delta_{-m} + delta_{m}). */
double bayes_risk(double eps, double m, const ShrinkageRule& rule,
                  const Likelihood& like);

enum class Exec { serial, parallel };

/* Risk at each theta; parallel and serial paths give bitwise equal output. */
std::vector<double> risk_grid(std::span<const double> thetas,
                              const ShrinkageRule& rule, const Likelihood& like,
                              Exec exec = Exec::parallel);

/* Supremum of the risk over [lo, hi]: dense grid then golden-section
 * refinement around the best point.  argmax receives the maximizer. */
double sup_risk(const ShrinkageRule& rule, const Likelihood& like, double lo,
                double hi, double* argmax = nullptr);

/* The three-point prior at (eps, m) is least favorable iff the model's own
 * rule has its worst-case risk on the prior support, up to 1e-6 slack. */
bool is_least_favorable(double eps, double m, Model model, double mu = 1.0);

/* Largest m in (0.1, 6] keeping the prior least favorable, to 1e-4. */
double mstar(double eps, Model model, double mu = 1.0);

enum class RiskShape { w, vvv, v };
std::string to_string(RiskShape s);

/* Classify the risk curve on [0, m]: interior local maxima mean extra
 * peaks (VVV); otherwise a peak at zero means W and a monotone rise to the
 * boundary means V. */
RiskShape risk_shape(double eps, double m, Model model, double mu = 1.0);

struct RiskProfile {
  std::vector<double> thetas;
  std::vector<double> risk;
  std::vector<double> bias_sq;
  std::vector<double> variance;
  RiskShape shape;
};

/* Symmetric grid of grid_size points over [-m, m] with the decomposition
 * at every point and the shape label attached. */
RiskProfile risk_profile(double eps, double m, Model model, int grid_size,
                         double mu = 1.0);

}  // namespace gmx

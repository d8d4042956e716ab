#pragma once

#include <vector>

#include "gmx/wavelet.hpp"

namespace gmx {

struct ModelIParams {
  double epsilon;  // prior mass at zero, in [0,1]
  double m;        // parameter bound in standardized units, > 0
};

struct ModelIIParams {
  double epsilon;
  double m;   // bound in raw coefficient units
  double mu;  // prior mean of the noise variance, > 0
};

/* Posterior-mean shrinkage under the three-point prior with a unit-variance
 * normal likelihood; d is a standardized coefficient. */
double rule_model1(double d, const ModelIParams& p);

/* Same prior with the noise variance integrated out against an exponential
 * prior of mean mu; the marginal is double-exponential and d stays in raw
 * units.  Constant for |d| >= m. */
double rule_model2(double d, const ModelIIParams& p);

double soft_threshold(double d, double threshold);

/* One rule per detail level; model selects which parameter set is live. */
struct LevelRule {
  int model;       // 1 or 2
  double epsilon;
  double m;        // raw-coefficient bound for both models
  double mu = 1.0; // model 2 only
};

struct LevelPolicy {
  int coarsest = 0;        // must match the decomposition
  double sigma_hat = 1.0;  // standardization scale for model 1
  std::vector<LevelRule> rules;  // rules[i] covers level coarsest+i
};

/* Shrink every detail coefficient by its level's rule; scaling coefficients
 * pass through untouched.  Model 1 works on d/sigma_hat and scales back. */
WaveletDecomposition apply_policy(const WaveletDecomposition& decomp,
                                  const LevelPolicy& policy);

}  // namespace gmx

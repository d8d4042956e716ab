#pragma once

#include <span>

namespace gmx {

struct ElicitationConfig {
  double l = 6.0;  // offset in the level weight, > 0
  double k = 2.5;  // decay exponent, > 0
};

/* MAD/0.6745 noise scale from the finest-level detail coefficients.
 * Median of an even count is the mean of the two central order statistics.
 * Returns 0 for a constant input; callers decide how to handle that. */
double estimate_sigma(std::span<const double> finest_details);

/* Level-dependent parameter bound sigma_hat * max|y| * sqrt(2)^(J-j).
 * Grows geometrically toward coarse levels. */
double level_bound(double sigma_hat, double max_abs_y, int J, int j);

/* Level-dependent prior mass at zero, 1 - 1/(j - J0 + l)^k; increases
 * toward fine levels and tends to 1. */
double level_epsilon(int j, int J0, const ElicitationConfig& cfg);

/* Moment-matched mean of the noise-variance prior. */
double elicit_mu(double sigma_hat);

}  // namespace gmx

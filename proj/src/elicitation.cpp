#include "gmx/elicitation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace gmx {

namespace {

double median_inplace(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

double estimate_sigma(std::span<const double> finest_details) {
  if (finest_details.empty())
    throw std::invalid_argument("estimate_sigma: empty coefficient sequence");
  std::vector<double> work(finest_details.begin(), finest_details.end());
  for (double v : work)
    if (!std::isfinite(v))
      throw std::invalid_argument("estimate_sigma: non-finite coefficient");
  const double med = median_inplace(work);
  for (double& v : work) v = std::abs(v - med);
  return median_inplace(work) / 0.6745;
}

double level_bound(double sigma_hat, double max_abs_y, int J, int j) {
  if (!(sigma_hat >= 0.0) || !(max_abs_y >= 0.0))
    throw std::invalid_argument("level_bound: negative inputs");
  if (j < 0 || j >= J)
    throw std::invalid_argument("level_bound: level must satisfy 0 <= j < J");
  return sigma_hat * max_abs_y * std::pow(std::sqrt(2.0), double(J - j));
}

double level_epsilon(int j, int J0, const ElicitationConfig& cfg) {
  if (!(cfg.l > 0.0) || !(cfg.k > 0.0))
    throw std::invalid_argument("level_epsilon: l and k must be positive");
  if (j < J0)
    throw std::invalid_argument("level_epsilon: level below the coarsest");
  return 1.0 - 1.0 / std::pow(double(j - J0) + cfg.l, cfg.k);
}

double elicit_mu(double sigma_hat) {
  if (!(sigma_hat >= 0.0))
    throw std::invalid_argument("elicit_mu: negative scale");
  return sigma_hat * sigma_hat;
}

}  // namespace gmx

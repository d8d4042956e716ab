#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gmx {

/* Standard test battery sampled on t_i = i/n, i = 1..n.  Definitions are
 * the usual ones from the wavelet-regression simulation literature and are
 * recorded in README.md; they are the ground truth the tests pin down. */
std::vector<double> generate(std::string_view name, std::size_t n);

const std::vector<std::string>& signal_names();

/* Scale about the mean so that sd(samples)/sigma = snr (population sd).
 * The mean is preserved. */
std::vector<double> rescale_to_snr(std::span<const double> samples, double snr,
                                   double sigma);

struct NoiseSpec {
  double sigma;
  std::uint64_t seed;
};

/* Add i.i.d. N(0, sigma^2) noise from the seeded generator; identical
 * spec gives bit-identical output. */
std::vector<double> add_noise(std::span<const double> samples, const NoiseSpec& spec);

}  // namespace gmx

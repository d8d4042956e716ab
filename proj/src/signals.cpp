#include "gmx/signals.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gmx/rng.hpp"

namespace gmx {

namespace {

using std::numbers::pi;

constexpr double kKnots[11] = {0.10, 0.13, 0.15, 0.23, 0.25, 0.40,
                               0.44, 0.65, 0.76, 0.78, 0.81};
constexpr double kBlockHeights[11] = {4.0, -5.0, 3.0,  -4.0, 5.0, -4.2,
                                      2.1, 4.3,  -3.1, 2.1,  -4.2};
constexpr double kBumpHeights[11] = {4.0, 5.0, 3.0, 4.0, 5.0, 4.2,
                                     2.1, 4.3, 3.1, 5.1, 4.2};
constexpr double kBumpWidths[11] = {0.005, 0.005, 0.006, 0.01, 0.01, 0.03,
                                    0.01,  0.01,  0.005, 0.008, 0.005};

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

double step_fn(double t) { return 0.2 + 0.6 * (t > 1.0 / 3.0 && t <= 0.75 ? 1.0 : 0.0); }

double wave_fn(double t) {
  return 0.5 + 0.2 * std::cos(4.0 * pi * t) + 0.1 * std::cos(24.0 * pi * t);
}

double blip_fn(double t) {
  if (t <= 0.8)
    return 0.32 + 0.6 * t + 0.3 * std::exp(-100.0 * (t - 0.3) * (t - 0.3));
  return -0.28 + 0.6 * t + 0.3 * std::exp(-100.0 * (t - 1.3) * (t - 1.3));
}

double blocks_fn(double t) {
  double v = 0.0;
  for (int j = 0; j < 11; ++j) v += kBlockHeights[j] * 0.5 * (1.0 + sgn(t - kKnots[j]));
  return v;
}

double bumps_fn(double t) {
  double v = 0.0;
  for (int j = 0; j < 11; ++j) {
    const double u = std::abs(t - kKnots[j]) / kBumpWidths[j];
    v += kBumpHeights[j] * std::pow(1.0 + u, -4.0);
  }
  return v;
}

double heavisine_fn(double t) {
  return 4.0 * std::sin(4.0 * pi * t) - sgn(t - 0.3) - sgn(0.72 - t);
}

double doppler_fn(double t) {
  return std::sqrt(t * (1.0 - t)) * std::sin(2.0 * pi * 1.05 / (t + 0.05));
}

double angles_fn(double t) {
  if (t <= 0.15) return 2.0 * t + 0.5;
  if (t <= 0.20) return -12.0 * (t - 0.15) + 0.8;
  if (t <= 0.50) return 0.2;
  if (t <= 0.60) return 6.0 * (t - 0.5) + 0.2;
  if (t <= 0.65) return -10.0 * (t - 0.6) + 0.8;
  if (t <= 0.85) return -0.5 * t + 0.625;
  return 2.0 * t - 1.5;
}

double parabolas_fn(double t) {
  auto r = [](double u) { return u > 0.0 ? u * u : 0.0; };
  return 0.8 - 30.0 * r(t - 0.1) + 60.0 * r(t - 0.2) - 30.0 * r(t - 0.3) +
         500.0 * r(t - 0.35) - 1000.0 * r(t - 0.37) + 1000.0 * r(t - 0.41) -
         500.0 * r(t - 0.43) + 7.5 * r(t - 0.5) - 15.0 * r(t - 0.7) +
         7.5 * r(t - 0.9);
}

double tshsine_fn(double t) {
  auto g = [](double u) { return (1.0 - std::cos(pi * u)) / 2.0; };
  return 0.3 * std::sin(3.0 * pi * g(g(g(t)))) + 0.5;
}

bool is_pow2(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

}  // namespace

const std::vector<std::string>& signal_names() {
  static const std::vector<std::string> names = {
      "step",  "wave",     "blip",    "blocks",    "bumps",
      "heavisine", "doppler", "angles", "parabolas", "time_shifted_sine"};
  return names;
}

std::vector<double> generate(std::string_view name, std::size_t n) {
  if (!is_pow2(n))
    throw std::invalid_argument("generate: n must be a power of two >= 2");
  double (*f)(double) = nullptr;
  if (name == "step") f = step_fn;
  else if (name == "wave") f = wave_fn;
  else if (name == "blip") f = blip_fn;
  else if (name == "blocks") f = blocks_fn;
  else if (name == "bumps") f = bumps_fn;
  else if (name == "heavisine") f = heavisine_fn;
  else if (name == "doppler") f = doppler_fn;
  else if (name == "angles") f = angles_fn;
  else if (name == "parabolas") f = parabolas_fn;
  else if (name == "time_shifted_sine") f = tshsine_fn;
  else throw std::invalid_argument("generate: unknown signal name '" + std::string(name) + "'");

  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = f(double(i + 1) / double(n));
  return out;
}

std::vector<double> rescale_to_snr(std::span<const double> samples, double snr,
                                   double sigma) {
  if (samples.size() < 2)
    throw std::invalid_argument("rescale_to_snr: need at least two samples");
  if (!(snr > 0.0) || !(sigma > 0.0))
    throw std::invalid_argument("rescale_to_snr: snr and sigma must be positive");
  double mean = 0.0;
  for (double v : samples) mean += v;
  mean /= double(samples.size());
  double var = 0.0;
  for (double v : samples) var += (v - mean) * (v - mean);
  var /= double(samples.size());
  if (var == 0.0)
    throw std::invalid_argument("rescale_to_snr: constant signal has no scale");
  const double gain = snr * sigma / std::sqrt(var);
  std::vector<double> out(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i)
    out[i] = mean + gain * (samples[i] - mean);
  return out;
}

std::vector<double> add_noise(std::span<const double> samples, const NoiseSpec& spec) {
  if (!(spec.sigma >= 0.0))
    throw std::invalid_argument("add_noise: sigma must be nonnegative");
  std::vector<double> out(samples.begin(), samples.end());
  if (spec.sigma == 0.0) return out;
  GaussianStream z(spec.seed);
  for (double& v : out) v += spec.sigma * z();
  return out;
}

}  // namespace gmx

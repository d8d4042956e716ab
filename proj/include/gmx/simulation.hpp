#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gmx/elicitation.hpp"
#include "gmx/risk.hpp"
#include "gmx/wavelet.hpp"

namespace gmx {

enum class DenoiseRule { model1, model2, visu_soft, noisy_identity };

std::string to_string(DenoiseRule r);
DenoiseRule denoise_rule_from(std::string_view name);

/* Overrides surfaced by the CLI; normally everything is elicited. */
struct DenoiseOverrides {
  std::optional<double> sigma;    // replaces the MAD estimate
  std::optional<double> m_bound;  // replaces the level bound at every level
};

struct DenoiseDiagnostics {
  double sigma_hat = 0.0;
  bool sigma_floored = false;
  std::vector<int> levels;
  std::vector<double> m_bounds;
  std::vector<double> epsilons;
};

/* Full pipeline: transform, elicit the level policy, shrink, reconstruct. */
std::vector<double> denoise(std::span<const double> y, DenoiseRule rule,
                            const FilterBank& bank, const ElicitationConfig& cfg,
                            int coarsest, const DenoiseOverrides& ovr = {},
                            DenoiseDiagnostics* diag = nullptr);

/* Universal-threshold baseline: soft threshold every detail level at
 * sigma_hat * sqrt(2 log n). */
std::vector<double> visu_shrink(std::span<const double> y, const FilterBank& bank,
                                int coarsest);

/* Mean squared error averaged over replications: (1/(nN)) sum of squares. */
double amse(std::span<const double> truth,
            const std::vector<std::vector<double>>& estimates);

struct SimulationConfig {
  std::vector<std::string> signals;
  std::size_t n = 1024;
  std::vector<double> snr;
  int replications = 20;
  std::vector<DenoiseRule> rules;
  ElicitationConfig elicitation;
  int coarsest = 3;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> bank_overrides;
  std::string rng;  // generator identity the config was written for
};

SimulationConfig load_config(const std::string& path);

/* haar for blocks, daub6 for bumps, sym8 elsewhere */
const std::string& default_bank_for(const std::string& signal);

struct CellSummary {
  std::string signal;
  double snr;
  DenoiseRule rule;
  std::vector<double> mses;  // one per replication, in replication order
  double amse;
  double q25, median, q75;
};

struct SimulationReport {
  std::vector<CellSummary> cells;
};

SimulationReport run_simulation(const SimulationConfig& cfg,
                                Exec exec = Exec::parallel);

void write_report_csv(const std::string& path, const SimulationReport& report);
void write_summary_csv(const std::string& path, const SimulationReport& report);

/* linear-interpolation quantile of a sorted copy, q in [0,1] */
double quantile(std::span<const double> values, double q);

}  // namespace gmx

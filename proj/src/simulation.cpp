#include "gmx/simulation.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "gmx/csv.hpp"
#include "gmx/rng.hpp"
#include "gmx/shrinkage.hpp"
#include "gmx/signals.hpp"

namespace gmx {

std::string to_string(DenoiseRule r) {
  switch (r) {
    case DenoiseRule::model1: return "ModelI";
    case DenoiseRule::model2: return "ModelII";
    case DenoiseRule::visu_soft: return "VisuSoft";
    case DenoiseRule::noisy_identity: return "NoisyIdentity";
  }
  return "?";
}

DenoiseRule denoise_rule_from(std::string_view name) {
  if (name == "ModelI" || name == "model1") return DenoiseRule::model1;
  if (name == "ModelII" || name == "model2") return DenoiseRule::model2;
  if (name == "VisuSoft" || name == "visu_soft") return DenoiseRule::visu_soft;
  if (name == "NoisyIdentity" || name == "noisy_identity")
    return DenoiseRule::noisy_identity;
  throw std::invalid_argument("unknown rule name '" + std::string(name) + "'");
}

namespace {

double max_abs(std::span<const double> y) {
  double v = 0.0;
  for (double x : y) v = std::max(v, std::abs(x));
  return v;
}

double effective_sigma(std::span<const double> finest, std::span<const double> y,
                       const DenoiseOverrides& ovr, bool& floored) {
  floored = false;
  if (ovr.sigma) {
    if (!(*ovr.sigma > 0.0))
      throw std::invalid_argument("denoise: sigma override must be positive");
    return *ovr.sigma;
  }
  double s = estimate_sigma(finest);
  if (s == 0.0) {
    s = 1e-12 * std::max(1.0, max_abs(y));
    floored = true;
  }
  return s;
}

}  // namespace

std::vector<double> denoise(std::span<const double> y, DenoiseRule rule,
                            const FilterBank& bank, const ElicitationConfig& cfg,
                            int coarsest, const DenoiseOverrides& ovr,
                            DenoiseDiagnostics* diag) {
  if (rule == DenoiseRule::noisy_identity)
    return std::vector<double>(y.begin(), y.end());
  if (rule == DenoiseRule::visu_soft) return visu_shrink(y, bank, coarsest);

  const WaveletDecomposition decomp = dwt(y, bank, coarsest);
  const double ymax = max_abs(y);
  if (ymax == 0.0) return std::vector<double>(y.begin(), y.end());

  bool floored = false;
  const double sigma = effective_sigma(decomp.details.back(), y, ovr, floored);
  const double mu = elicit_mu(sigma);

  LevelPolicy policy;
  policy.coarsest = coarsest;
  policy.sigma_hat = sigma;
  if (diag) {
    diag->sigma_hat = sigma;
    diag->sigma_floored = floored;
    diag->levels.clear();
    diag->m_bounds.clear();
    diag->epsilons.clear();
  }
  for (int j = coarsest; j < decomp.levels; ++j) {
    const double m_j =
        ovr.m_bound ? *ovr.m_bound : level_bound(sigma, ymax, decomp.levels, j);
    const double eps_j = level_epsilon(j, coarsest, cfg);
    if (rule == DenoiseRule::model1)
      policy.rules.push_back(LevelRule{1, eps_j, m_j, 1.0});
    else
      policy.rules.push_back(LevelRule{2, eps_j, m_j, mu});
    if (diag) {
      diag->levels.push_back(j);
      diag->m_bounds.push_back(m_j);
      diag->epsilons.push_back(eps_j);
    }
  }
  return idwt(apply_policy(decomp, policy), bank);
}

std::vector<double> visu_shrink(std::span<const double> y, const FilterBank& bank,
                                int coarsest) {
  WaveletDecomposition decomp = dwt(y, bank, coarsest);
  const double sigma = estimate_sigma(decomp.details.back());
  const double lambda = sigma * std::sqrt(2.0 * std::log(double(y.size())));
  for (std::vector<double>& level : decomp.details)
    for (double& d : level) d = soft_threshold(d, lambda);
  return idwt(decomp, bank);
}

double amse(std::span<const double> truth,
            const std::vector<std::vector<double>>& estimates) {
  if (estimates.empty()) throw std::invalid_argument("amse: no estimates");
  double total = 0.0;
  for (const std::vector<double>& est : estimates) {
    if (est.size() != truth.size())
      throw std::invalid_argument("amse: estimate length mismatch");
    for (std::size_t i = 0; i < truth.size(); ++i) {
      const double e = est[i] - truth[i];
      total += e * e;
    }
  }
  return total / (double(truth.size()) * double(estimates.size()));
}

double quantile(std::span<const double> values, double q) {
  if (values.empty()) throw std::invalid_argument("quantile: empty input");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("quantile: q outside [0,1]");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double h = q * double(sorted.size() - 1);
  const std::size_t lo = std::size_t(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - double(lo)) * (sorted[lo + 1] - sorted[lo]);
}

const std::string& default_bank_for(const std::string& signal) {
  static const std::string haar = "haar", daub6 = "daub6", sym8 = "sym8";
  if (signal == "blocks") return haar;
  if (signal == "bumps") return daub6;
  return sym8;
}

SimulationConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config parse error: " + std::string(e.what()));
  }

  SimulationConfig cfg;
  try {
    cfg.signals = j.at("signals").get<std::vector<std::string>>();
    cfg.snr = j.at("snr").get<std::vector<double>>();
    for (const auto& r : j.at("rules"))
      cfg.rules.push_back(denoise_rule_from(r.get<std::string>()));
    cfg.n = j.value("n", std::size_t{1024});
    cfg.replications = j.value("replications", 20);
    cfg.elicitation.l = j.value("l", 6.0);
    cfg.elicitation.k = j.value("k", 2.5);
    cfg.coarsest = j.value("j0", 3);
    if (j.contains("bank_overrides"))
      cfg.bank_overrides =
          j.at("bank_overrides").get<std::map<std::string, std::string>>();
    cfg.rng = j.value("rng", std::string(kRngAlgorithm));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config field error: " + std::string(e.what()));
  }

  if (j.contains("seed")) {
    cfg.seed = j.at("seed").get<std::uint64_t>();
  } else if (const char* env = std::getenv("GMX_SEED")) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(env, env + std::string_view(env).size(), v);
    if (res.ec != std::errc() || *res.ptr != '\0')
      throw std::invalid_argument("GMX_SEED is not an unsigned integer");
    cfg.seed = v;
  } else {
    throw std::invalid_argument("config has no 'seed' and GMX_SEED is unset");
  }

  if (cfg.rng != kRngAlgorithm)
    throw std::invalid_argument("config expects generator '" + cfg.rng +
                                "' but this build provides '" + kRngAlgorithm + "'");
  return cfg;
}

namespace {

void validate(const SimulationConfig& cfg) {
  if (cfg.signals.empty()) throw std::invalid_argument("config: signals[] is empty");
  if (cfg.snr.empty()) throw std::invalid_argument("config: snr[] is empty");
  if (cfg.rules.empty()) throw std::invalid_argument("config: rules[] is empty");
  if (cfg.replications < 1)
    throw std::invalid_argument("config: replications must be >= 1");
  if (cfg.n < 2 || (cfg.n & (cfg.n - 1)) != 0)
    throw std::invalid_argument("config: n must be a power of two");
  for (double v : cfg.snr)
    if (!(v > 0.0)) throw std::invalid_argument("config: snr values must be positive");
}

const FilterBank& bank_for(const SimulationConfig& cfg, const std::string& signal) {
  const auto it = cfg.bank_overrides.find(signal);
  const std::string& name = it != cfg.bank_overrides.end() ? it->second
                                                           : default_bank_for(signal);
  const auto& banks = standard_filters();
  const auto bit = banks.find(name);
  if (bit == banks.end())
    throw std::invalid_argument("unknown wavelet bank '" + name + "' for signal '" +
                                signal + "'");
  return bit->second;
}

std::uint64_t replication_seed(const SimulationConfig& cfg, const std::string& signal,
                               double snr, int rep) {
  std::uint64_t h = mix64(cfg.seed);
  h = combine_seed(h, hash_string(signal));
  h = combine_seed(h, std::bit_cast<std::uint64_t>(snr));
  h = combine_seed(h, std::uint64_t(rep));
  return h;
}

}  // namespace

SimulationReport run_simulation(const SimulationConfig& cfg, Exec exec) {
  validate(cfg);

  struct Task {
    std::size_t signal_idx, snr_idx;
    int rep;
  };
  std::vector<Task> tasks;
  for (std::size_t s = 0; s < cfg.signals.size(); ++s)
    for (std::size_t v = 0; v < cfg.snr.size(); ++v)
      for (int r = 0; r < cfg.replications; ++r) tasks.push_back({s, v, r});

  /* target curves and banks are shared across replications of a cell */
  std::vector<std::vector<double>> targets(cfg.signals.size() * cfg.snr.size());
  std::vector<const FilterBank*> banks(cfg.signals.size());
  for (std::size_t s = 0; s < cfg.signals.size(); ++s) {
    banks[s] = &bank_for(cfg, cfg.signals[s]);
    const std::vector<double> clean = generate(cfg.signals[s], cfg.n);
    for (std::size_t v = 0; v < cfg.snr.size(); ++v)
      targets[s * cfg.snr.size() + v] = rescale_to_snr(clean, cfg.snr[v], 1.0);
  }

  /* mse[task][rule], filled independently per task */
  std::vector<std::vector<double>> mse(tasks.size(),
                                       std::vector<double>(cfg.rules.size()));
  std::exception_ptr failure;

  auto run_task = [&](std::size_t t) {
    const Task& task = tasks[t];
    const std::vector<double>& truth = targets[task.signal_idx * cfg.snr.size() + task.snr_idx];
    const std::uint64_t seed = replication_seed(cfg, cfg.signals[task.signal_idx],
                                                cfg.snr[task.snr_idx], task.rep);
    const std::vector<double> noisy = add_noise(truth, NoiseSpec{1.0, seed});
    for (std::size_t r = 0; r < cfg.rules.size(); ++r) {
      const std::vector<double> est = denoise(noisy, cfg.rules[r],
                                              *banks[task.signal_idx],
                                              cfg.elicitation, cfg.coarsest);
      double acc = 0.0;
      for (std::size_t i = 0; i < truth.size(); ++i) {
        const double e = est[i] - truth[i];
        acc += e * e;
      }
      mse[t][r] = acc / double(truth.size());
    }
  };

#if defined(GMX_HAVE_OPENMP)
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long t = 0; t < long(tasks.size()); ++t) {
      try {
        run_task(std::size_t(t));
      } catch (...) {
#pragma omp critical
        if (!failure) failure = std::current_exception();
      }
    }
  } else
#else
  (void)exec;
#endif
  {
    for (std::size_t t = 0; t < tasks.size(); ++t) run_task(t);
  }
  if (failure) std::rethrow_exception(failure);

  SimulationReport report;
  for (std::size_t s = 0; s < cfg.signals.size(); ++s) {
    for (std::size_t v = 0; v < cfg.snr.size(); ++v) {
      for (std::size_t r = 0; r < cfg.rules.size(); ++r) {
        CellSummary cell;
        cell.signal = cfg.signals[s];
        cell.snr = cfg.snr[v];
        cell.rule = cfg.rules[r];
        cell.mses.reserve(std::size_t(cfg.replications));
        for (int rep = 0; rep < cfg.replications; ++rep) {
          const std::size_t t =
              (s * cfg.snr.size() + v) * std::size_t(cfg.replications) +
              std::size_t(rep);
          cell.mses.push_back(mse[t][r]);
        }
        double total = 0.0;
        for (double x : cell.mses) total += x;
        cell.amse = total / double(cell.mses.size());
        cell.q25 = quantile(cell.mses, 0.25);
        cell.median = quantile(cell.mses, 0.5);
        cell.q75 = quantile(cell.mses, 0.75);
        report.cells.push_back(std::move(cell));
      }
    }
  }
  return report;
}

void write_report_csv(const std::string& path, const SimulationReport& report) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  out << "signal,snr,rule,replication,mse\n";
  for (const CellSummary& cell : report.cells)
    for (std::size_t rep = 0; rep < cell.mses.size(); ++rep)
      out << cell.signal << ',' << format_double(cell.snr) << ','
          << to_string(cell.rule) << ',' << rep << ','
          << format_double(cell.mses[rep]) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_summary_csv(const std::string& path, const SimulationReport& report) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  out << "signal,snr,rule,amse,q25,median,q75\n";
  for (const CellSummary& cell : report.cells)
    out << cell.signal << ',' << format_double(cell.snr) << ','
        << to_string(cell.rule) << ',' << format_double(cell.amse) << ','
        << format_double(cell.q25) << ',' << format_double(cell.median) << ','
        << format_double(cell.q75) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace gmx

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gmx/csv.hpp"
#include "gmx/elicitation.hpp"
#include "gmx/risk.hpp"
#include "gmx/rng.hpp"
#include "gmx/signals.hpp"
#include "gmx/simulation.hpp"
#include "gmx/wavelet.hpp"

#if defined(GMX_HAVE_OPENMP)
#include <omp.h>
#endif

namespace {

constexpr int kExitInput = 1;
constexpr int kExitNumerical = 2;

std::uint64_t seed_fallback(std::optional<std::uint64_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("GMX_SEED")) {
    std::string_view sv(env);
    std::uint64_t v = 0;
    const auto res = std::from_chars(sv.data(), sv.data() + sv.size(), v);
    if (res.ec == std::errc() && res.ptr == sv.data() + sv.size()) return v;
    throw std::invalid_argument("GMX_SEED is not an unsigned integer");
  }
  return 0;
}

const gmx::FilterBank& bank_by_name(const std::string& name) {
  const auto& banks = gmx::standard_filters();
  const auto it = banks.find(name);
  if (it == banks.end()) {
    std::string known;
    for (const auto& [k, v] : banks) known += (known.empty() ? "" : ", ") + k;
    throw std::invalid_argument("unknown wavelet '" + name + "' (available: " + known + ")");
  }
  return it->second;
}

int run_denoise(const std::string& input, const std::string& output, int model,
                const std::string& wavelet, int j0, double l, double k,
                std::optional<double> sigma, std::optional<double> m_bound) {
  const std::vector<double> y = gmx::read_value_column(input);
  const gmx::FilterBank& bank = bank_by_name(wavelet);
  gmx::DenoiseOverrides ovr;
  ovr.sigma = sigma;
  ovr.m_bound = m_bound;
  gmx::DenoiseDiagnostics diag;
  const gmx::DenoiseRule rule =
      model == 1 ? gmx::DenoiseRule::model1 : gmx::DenoiseRule::model2;
  const std::vector<double> est =
      gmx::denoise(y, rule, bank, gmx::ElicitationConfig{l, k}, j0, ovr, &diag);
  gmx::write_signal_csv(output, est);

  std::fprintf(stderr, "sigma_hat = %.6g%s\n", diag.sigma_hat,
               diag.sigma_floored ? "  (floored: finest level was constant)" : "");
  std::fprintf(stderr, "%-6s %-14s %s\n", "level", "m(j)", "eps0(j)");
  for (std::size_t i = 0; i < diag.levels.size(); ++i)
    std::fprintf(stderr, "%-6d %-14.6g %.6g\n", diag.levels[i], diag.m_bounds[i],
                 diag.epsilons[i]);
  return 0;
}

int run_mstar(const std::string& output, std::vector<double> eps_list,
              const std::string& model, double mu) {
  if (eps_list.empty())
    eps_list = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99};
  const bool want1 = model == "1" || model == "both";
  const bool want2 = model == "2" || model == "both";
  if (!want1 && !want2)
    throw std::invalid_argument("--model must be 1, 2, or both");
  for (double eps : eps_list)
    if (!(eps >= 0.0 && eps <= 0.99))
      throw std::invalid_argument("--eps-list values must lie in [0, 0.99], got " +
                                  gmx::format_double(eps));

  std::ofstream out(output);
  if (!out) throw std::invalid_argument("cannot open output file: " + output);
  out << "eps";
  if (want1) out << ",mstar_model1";
  if (want2) out << ",mstar_model2";
  out << '\n';

  bool any_failed = false;
  for (double eps : eps_list) {
    out << gmx::format_double(eps);
    for (int which = 1; which <= 2; ++which) {
      if ((which == 1 && !want1) || (which == 2 && !want2)) continue;
      try {
        const double ms = gmx::mstar(
            eps, which == 1 ? gmx::Model::one : gmx::Model::two, mu);
        out << ',' << gmx::format_double(ms);
      } catch (const std::exception& e) {
        any_failed = true;
        out << ",nan";
        std::fprintf(stderr, "mstar failed at eps=%g model %d: %s\n", eps, which,
                     e.what());
      }
    }
    out << '\n';
    out.flush();
  }
  if (!out) throw std::runtime_error("write failed: " + output);
  return any_failed ? kExitNumerical : 0;
}

int run_risk(const std::string& output, double eps, double m, int model, double mu,
             int grid) {
  const gmx::RiskProfile prof = gmx::risk_profile(
      eps, m, model == 1 ? gmx::Model::one : gmx::Model::two, grid, mu);
  std::ofstream out(output);
  if (!out) throw std::invalid_argument("cannot open output file: " + output);
  out << "theta,risk,bias_sq,variance\n";
  for (std::size_t i = 0; i < prof.thetas.size(); ++i)
    out << gmx::format_double(prof.thetas[i]) << ','
        << gmx::format_double(prof.risk[i]) << ','
        << gmx::format_double(prof.bias_sq[i]) << ','
        << gmx::format_double(prof.variance[i]) << '\n';
  if (!out) throw std::runtime_error("write failed: " + output);
  std::printf("%s\n", gmx::to_string(prof.shape).c_str());
  return 0;
}

int run_simulate(const std::string& config_path, const std::string& outdir) {
  const gmx::SimulationConfig cfg = gmx::load_config(config_path);
  const gmx::SimulationReport report = gmx::run_simulation(cfg);
  std::filesystem::create_directories(outdir);
  gmx::write_report_csv(outdir + "/report.csv", report);
  gmx::write_summary_csv(outdir + "/summary.csv", report);

  std::printf("%-18s %-8s %-14s %-12s %-12s %-12s %s\n", "signal", "snr", "rule",
              "amse", "q25", "median", "q75");
  for (const gmx::CellSummary& cell : report.cells)
    std::printf("%-18s %-8g %-14s %-12.6g %-12.6g %-12.6g %.6g\n",
                cell.signal.c_str(), cell.snr, gmx::to_string(cell.rule).c_str(),
                cell.amse, cell.q25, cell.median, cell.q75);
  return 0;
}

int run_signal(const std::string& output, const std::string& name, std::size_t n,
               std::optional<double> snr, double sigma,
               std::optional<std::uint64_t> seed) {
  std::vector<double> s = gmx::generate(name, n);
  if (snr) {
    s = gmx::rescale_to_snr(s, *snr, sigma);
    s = gmx::add_noise(s, gmx::NoiseSpec{sigma, seed_fallback(seed)});
  }
  gmx::write_signal_csv(output, s);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wavelet denoising with minimax shrinkage rules under three-point priors"};
  app.require_subcommand(1);
  int jobs = 0;

  app.add_option("--jobs", jobs, "cap worker threads (0 = hardware default)");

  auto* cd = app.add_subcommand("denoise", "denoise a CSV signal");
  std::string d_in, d_out, d_wavelet = "sym8";
  int d_model = 1, d_j0 = 3;
  double d_l = 6.0, d_k = 2.5;
  std::optional<double> d_sigma, d_mbound;
  cd->add_option("input", d_in, "input CSV (value or t,value rows)")->required();
  cd->add_option("output", d_out, "output CSV")->required();
  cd->add_option("--model", d_model, "shrinkage rule family")
      ->check(CLI::IsMember({1, 2}))
      ->capture_default_str();
  cd->add_option("--wavelet", d_wavelet, "filter bank name")->capture_default_str();
  cd->add_option("--j0", d_j0, "coarsest retained level")->capture_default_str();
  cd->add_option("--l", d_l, "level weight offset")->capture_default_str();
  cd->add_option("--k", d_k, "level weight exponent")->capture_default_str();
  cd->add_option("--sigma", d_sigma, "noise scale override (skips estimation)");
  cd->add_option("--m-bound", d_mbound, "parameter bound override applied at every level");

  auto* cm = app.add_subcommand("mstar", "tabulate the largest least-favorable bound");
  std::string m_out, m_model = "both";
  std::vector<double> m_eps;
  double m_mu = 1.0;
  cm->add_option("output", m_out, "output CSV")->required();
  cm->add_option("--eps-list", m_eps, "epsilon values (default: the standard twelve)")
      ->delimiter(',');
  cm->add_option("--model", m_model, "1, 2, or both")->capture_default_str();
  cm->add_option("--mu", m_mu, "noise-variance prior mean for model 2")
      ->capture_default_str();

  auto* cr = app.add_subcommand("risk", "risk profile of a rule on [-m, m]");
  std::string r_out;
  double r_eps = 0.5, r_m = 1.0, r_mu = 1.0;
  int r_model = 1, r_grid = 201;
  cr->add_option("output", r_out, "output CSV")->required();
  cr->add_option("--eps", r_eps, "prior mass at zero")->required();
  cr->add_option("--m", r_m, "parameter bound")->required();
  cr->add_option("--model", r_model, "rule family")
      ->check(CLI::IsMember({1, 2}))
      ->capture_default_str();
  cr->add_option("--mu", r_mu, "noise-variance prior mean for model 2")
      ->capture_default_str();
  cr->add_option("--grid", r_grid, "grid size")->capture_default_str();

  auto* cs = app.add_subcommand("simulate", "run the replication harness");
  std::string s_config, s_outdir;
  cs->add_option("config", s_config, "JSON config path")->required();
  cs->add_option("outdir", s_outdir, "output directory")->required();

  auto* cg = app.add_subcommand("signal", "generate a test signal");
  std::string g_out, g_name;
  std::size_t g_n = 1024;
  std::optional<double> g_snr;
  double g_sigma = 1.0;
  std::optional<std::uint64_t> g_seed;
  cg->add_option("output", g_out, "output CSV")->required();
  cg->add_option("--name", g_name, "signal name")->required();
  cg->add_option("--n", g_n, "sample count (power of two)")->capture_default_str();
  cg->add_option("--snr", g_snr, "rescale to this SNR and add noise");
  cg->add_option("--sigma", g_sigma, "noise scale")->capture_default_str();
  cg->add_option("--seed", g_seed, "noise seed (falls back to GMX_SEED, then 0)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help lands here too and must stay a success; real parse errors are
    // input errors and share their exit code
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

#if defined(GMX_HAVE_OPENMP)
  if (jobs > 0) omp_set_num_threads(jobs);
#else
  (void)jobs;
#endif

  try {
    if (*cd)
      return run_denoise(d_in, d_out, d_model, d_wavelet, d_j0, d_l, d_k, d_sigma,
                         d_mbound);
    if (*cm) return run_mstar(m_out, m_eps, m_model, m_mu);
    if (*cr) return run_risk(r_out, r_eps, r_m, r_model, r_mu, r_grid);
    if (*cs) return run_simulate(s_config, s_outdir);
    if (*cg) return run_signal(g_out, g_name, g_n, g_snr, g_sigma, g_seed);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInput;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  }
  return 0;
}

#include "gmx/wavelet.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace gmx {

namespace {

bool is_pow2(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

int log2_exact(std::size_t n) {
  int j = 0;
  while ((std::size_t{1} << j) < n) ++j;
  return j;
}

/* minimum-phase Daubechies and least-asymmetric (symmlet) lowpass filters,
 * from spectral factorization of the maxflat half-band polynomial */
const double kHaar[2] = {
    0.707106781186547524401, 0.707106781186547524401};

const double kDaub6[6] = {
    0.0352262918857095366027, -0.0854412738820266616928,
    -0.135011020010254588696, 0.459877502118491570095,
    0.806891509311092576494, 0.332670552950082615999};

const double kDaub8[8] = {
    -0.0105974017850690321049, 0.0328830116668851997354,
    0.0308413818355607636272, -0.18703481171909308408,
    -0.0279837694168598542114, 0.630880767929858907882,
    0.71484657055291564709, 0.230377813308896500863};

const double kDaub16[16] = {
    -0.000117476784124769533731, 0.00067544940645056936637,
    -0.000391740373376947046298, -0.00487035299345157431042,
    0.00874609404740577671638, 0.0139810279173982816487,
    -0.0440882539307947515068, -0.0173693010018075461696,
    0.128747426620478458857, 0.000472484573913282770361,
    -0.284015542961546926516, -0.0158291052563493056674,
    0.585354683654206712771, 0.675630736297289806808,
    0.312871590914299970659, 0.054415842243104009955};

const double kSym8[8] = {
    -0.0757657147895022132277, -0.0296355276460024917644,
    0.49761866763277498998, 0.803738751805132080879,
    0.297857795605306051403, -0.0992195435766335325852,
    -0.0126039672620313037539, 0.0322231006040514678716};

const double kSym16[16] = {
    -0.00338241595100500259546, -0.000542132331800010689348,
    0.0316950878115259914314, 0.00760748732497660819192,
    -0.143294238351272662844, -0.061273359067811077843,
    0.48135965125905339159, 0.777185751699628028624,
    0.36444189483617893676, -0.0519458381078818007357,
    -0.027219029917103486322, 0.0491371796737302867869,
    0.00380875201389448946307, -0.0149522583370621991185,
    -0.000302920514724133081264, 0.00188995033276768918427};

void check_orthonormal(const std::string& name, const std::vector<double>& h) {
  const std::size_t L = h.size();
  if (L < 2 || L % 2 != 0)
    throw std::invalid_argument("filter bank " + name + ": even length >= 2 required");
  double s = 0.0;
  for (double v : h) {
    if (!std::isfinite(v))
      throw std::invalid_argument("filter bank " + name + ": non-finite coefficient");
    s += v;
  }
  if (std::abs(s - std::numbers::sqrt2) > 1e-12)
    throw std::invalid_argument("filter bank " + name + ": sum(h) != sqrt(2)");
  for (std::size_t shift = 0; 2 * shift < L; ++shift) {
    double dot = 0.0;
    for (std::size_t i = 0; i + 2 * shift < L; ++i) dot += h[i] * h[i + 2 * shift];
    const double want = shift == 0 ? 1.0 : 0.0;
    if (std::abs(dot - want) > 1e-12)
      throw std::invalid_argument("filter bank " + name +
                                  ": double-shift orthonormality violated");
  }
}

}  // namespace

FilterBank make_bank(std::string name, std::vector<double> lowpass) {
  check_orthonormal(name, lowpass);
  const std::size_t L = lowpass.size();
  std::vector<double> highpass(L);
  for (std::size_t k = 0; k < L; ++k) {
    const double v = lowpass[L - 1 - k];
    highpass[k] = (k % 2 == 0) ? v : -v;
  }
  return FilterBank{std::move(name), std::move(lowpass), std::move(highpass)};
}

const std::map<std::string, FilterBank, std::less<>>& standard_filters() {
  static const std::map<std::string, FilterBank, std::less<>> banks = [] {
    std::map<std::string, FilterBank, std::less<>> m;
    auto add = [&m](const char* name, const double* h, std::size_t n) {
      m.emplace(name, make_bank(name, std::vector<double>(h, h + n)));
    };
    add("haar", kHaar, 2);
    add("daub6", kDaub6, 6);
    add("daub8", kDaub8, 8);
    add("daub16", kDaub16, 16);
    add("sym8", kSym8, 8);
    add("sym16", kSym16, 16);
    return m;
  }();
  return banks;
}

WaveletDecomposition dwt(std::span<const double> signal, const FilterBank& bank,
                         int coarsest) {
  const std::size_t n = signal.size();
  if (!is_pow2(n))
    throw std::invalid_argument("dwt: signal length must be a power of two >= 2");
  const int levels = log2_exact(n);
  if (coarsest < 0 || coarsest >= levels)
    throw std::invalid_argument("dwt: coarsest level out of range");

  WaveletDecomposition out;
  out.coarsest = coarsest;
  out.levels = levels;
  out.details.resize(std::size_t(levels - coarsest));

  const std::vector<double>& h = bank.lowpass;
  const std::vector<double>& g = bank.highpass;
  const std::size_t L = h.size();

  std::vector<double> approx(signal.begin(), signal.end());
  for (int j = levels - 1; j >= coarsest; --j) {
    const std::size_t nj = approx.size();
    const std::size_t half = nj / 2;
    std::vector<double> next(half), det(half);
    for (std::size_t k = 0; k < half; ++k) {
      double c = 0.0, d = 0.0;
      for (std::size_t l = 0; l < L; ++l) {
        const double a = approx[(2 * k + l) % nj];
        c += h[l] * a;
        d += g[l] * a;
      }
      next[k] = c;
      det[k] = d;
    }
    out.details[std::size_t(j - coarsest)] = std::move(det);
    approx = std::move(next);
  }
  out.scaling = std::move(approx);
  return out;
}

std::vector<double> idwt(const WaveletDecomposition& decomp, const FilterBank& bank) {
  if (decomp.coarsest < 0 || decomp.levels <= decomp.coarsest)
    throw std::invalid_argument("idwt: malformed decomposition");
  if (decomp.scaling.size() != (std::size_t{1} << decomp.coarsest))
    throw std::invalid_argument("idwt: scaling coefficient count mismatch");
  if (decomp.details.size() != std::size_t(decomp.levels - decomp.coarsest))
    throw std::invalid_argument("idwt: detail level count mismatch");

  const std::vector<double>& h = bank.lowpass;
  const std::vector<double>& g = bank.highpass;
  const std::size_t L = h.size();

  std::vector<double> approx = decomp.scaling;
  for (int j = decomp.coarsest; j < decomp.levels; ++j) {
    const std::vector<double>& det = decomp.details[std::size_t(j - decomp.coarsest)];
    const std::size_t half = approx.size();
    if (det.size() != half)
      throw std::invalid_argument("idwt: detail length mismatch at a level");
    const std::size_t nj = 2 * half;
    std::vector<double> up(nj, 0.0);
    for (std::size_t k = 0; k < half; ++k) {
      const double c = approx[k];
      const double d = det[k];
      for (std::size_t l = 0; l < L; ++l) {
        up[(2 * k + l) % nj] += h[l] * c + g[l] * d;
      }
    }
    approx = std::move(up);
  }
  return approx;
}

double phase_deviation(const FilterBank& bank) {
  const std::vector<double>& h = bank.lowpass;
  const std::size_t L = h.size();
  const double tau = 0.5 * double(L - 1);
  const int grid = 2048;
  double prev = 0.0;
  double offset = 0.0;
  double worst = 0.0;
  for (int i = 1; i <= grid; ++i) {
    const double w = 0.999 * std::numbers::pi * double(i) / double(grid);
    std::complex<double> H{0.0, 0.0};
    for (std::size_t l = 0; l < L; ++l)
      H += h[l] * std::polar(1.0, -w * double(l));
    double phi = std::arg(H) + offset;
    while (phi - prev > std::numbers::pi) {
      phi -= 2 * std::numbers::pi;
      offset -= 2 * std::numbers::pi;
    }
    while (phi - prev < -std::numbers::pi) {
      phi += 2 * std::numbers::pi;
      offset += 2 * std::numbers::pi;
    }
    prev = phi;
    worst = std::max(worst, std::abs(phi + tau * w));
  }
  return worst;
}

}  // namespace gmx

#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

namespace gmx {

/* Orthogonal filter bank.  lowpass is h ordered by ascending index;
 * highpass is the quadrature mirror g[k] = (-1)^k h[L-1-k]. */
struct FilterBank {
  std::string name;
  std::vector<double> lowpass;
  std::vector<double> highpass;
};

/* Build a bank from its lowpass filter, deriving the mirror and checking
 * sum(h) = sqrt(2) and double-shift orthonormality to 1e-12. */
FilterBank make_bank(std::string name, std::vector<double> lowpass);

/* haar, daub6, daub8, daub16, sym8, sym16 */
const std::map<std::string, FilterBank, std::less<>>& standard_filters();

/* Multiresolution decomposition of a length-2^levels signal down to level
 * coarsest: scaling holds the 2^coarsest coarse coefficients, details[i]
 * holds level coarsest+i with 2^(coarsest+i) entries. */
struct WaveletDecomposition {
  int coarsest = 0;
  int levels = 0;
  std::vector<double> scaling;
  std::vector<std::vector<double>> details;

  int finest() const { return levels - 1; }
  std::size_t signal_length() const { return std::size_t{1} << levels; }
  std::vector<double>& level(int j) { return details.at(std::size_t(j - coarsest)); }
  const std::vector<double>& level(int j) const { return details.at(std::size_t(j - coarsest)); }
};

/* Periodized pyramid transform; signal length must be a power of two with
 * 2^coarsest >= filter support fitting is not required (circular wrap). */
WaveletDecomposition dwt(std::span<const double> signal, const FilterBank& bank,
                         int coarsest);

std::vector<double> idwt(const WaveletDecomposition& decomp, const FilterBank& bank);

/* Maximum deviation of the unwrapped filter phase from the linear phase of
 * a centered symmetric filter; near-symmetric banks score lower. */
double phase_deviation(const FilterBank& bank);

}  // namespace gmx

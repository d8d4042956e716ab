#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>

namespace gmx {

/* Pinned generator identity; configs carry this string so reports name the
 * exact sampling scheme they were produced with. */
inline constexpr const char* kRngAlgorithm = "splitmix64/mt19937_64/box-muller";

/* splitmix64 finalizer */
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/* order-sensitive combine for deriving per-replication seeds */
inline std::uint64_t combine_seed(std::uint64_t h, std::uint64_t v) {
  return mix64(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}

inline std::uint64_t hash_string(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/* Standard normal draws via Box-Muller on top of mt19937_64; keeps the
 * second draw of each pair so consumption order is well defined. */
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

  double operator()() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = (double(engine_() >> 11) + 1.0) * 0x1p-53;  // (0,1]
    const double u2 = double(engine_() >> 11) * 0x1p-53;          // [0,1)
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double w = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(w);
    have_spare_ = true;
    return r * std::cos(w);
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace gmx

#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace dfreq {

using cplx = std::complex<double>;

// Seed mixer (splitmix64). Also the basis for deriving independent
// substreams: every noise channel and Monte-Carlo run gets its own
// engine seeded through this, so streams never alias.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag) {
  return splitmix64(base ^ splitmix64(tag + 0x632be59bd9b4e019ull));
}

// Gaussian draws via Box-Muller on top of mt19937_64. The engine sequence
// is pinned by the standard and the transform is spelled out here, so a
// given seed produces bit-identical streams on any conforming platform
// (std::normal_distribution would not guarantee that).
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : eng_(seed) {}

  // uniform in [0, 1)
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // unit complex Gaussian: real/imag each N(0, 1), independent.
  // Consumes exactly two engine outputs per call.
  cplx standard_complex() {
    const double u1 = 1.0 - uniform01();  // (0, 1], keeps log() finite
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * 3.141592653589793238462643383279502884 * u2;
    return {r * std::cos(a), r * std::sin(a)};
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace dfreq

#pragma once

#include "pcsft/types.hpp"

#include <array>
#include <cmath>
#include <cstdint>

namespace pcsft {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). A block is a
// pure function of (counter, key), so any (seed, stream, sample index) cell
// can be generated independently of all others: parallel sampling is bitwise
// identical to serial sampling by construction.
namespace philox {

inline constexpr std::uint32_t kMult0 = 0xD2511F53u;
inline constexpr std::uint32_t kMult1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
inline constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

using Counter = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

inline void round_once(Counter& ctr, const Key& key) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kMult0) * ctr[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kMult1) * ctr[2];
  const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const auto lo0 = static_cast<std::uint32_t>(p0);
  const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const auto lo1 = static_cast<std::uint32_t>(p1);
  ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

inline Counter block(Counter ctr, Key key) {
  round_once(ctr, key);
  for (int r = 1; r < 10; ++r) {
    key[0] += kWeyl0;
    key[1] += kWeyl1;
    round_once(ctr, key);
  }
  return ctr;
}

// Uniform in (0, 1]; safe as a log argument.
inline double u01_open(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t v = (static_cast<std::uint64_t>(hi) << 32) | lo;
  return static_cast<double>((v >> 11) + 1) * 0x1.0p-53;
}

// Uniform in [0, 1).
inline double u01_half_open(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t v = (static_cast<std::uint64_t>(hi) << 32) | lo;
  return static_cast<double>(v >> 11) * 0x1.0p-53;
}

}  // namespace philox

// One standard circular complex Gaussian draw, E[z conj(z)] = 1 (real and
// imaginary parts each N(0, 1/2)). Consumes one Philox block addressed by
// (seed; component, sample index, stream) via Box-Muller.
inline Complex standard_complex_gaussian(std::uint64_t seed,
                                         std::uint32_t stream,
                                         std::uint64_t sample_index,
                                         std::uint32_t component) {
  const philox::Key key = {static_cast<std::uint32_t>(seed),
                           static_cast<std::uint32_t>(seed >> 32)};
  const philox::Counter ctr = {component,
                               static_cast<std::uint32_t>(sample_index),
                               static_cast<std::uint32_t>(sample_index >> 32),
                               stream};
  const philox::Counter out = philox::block(ctr, key);
  const double u1 = philox::u01_open(out[0], out[1]);
  const double u2 = philox::u01_half_open(out[2], out[3]);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * M_PI * u2;
  // The extra 1/sqrt(2) makes the complex variance 1, not 2.
  const double s = radius * M_SQRT1_2;
  return {s * std::cos(angle), s * std::sin(angle)};
}

// Fills z with dim independent standard circular complex Gaussians for the
// given (seed, stream, sample index) cell.
inline void fill_standard_complex_gaussian(std::uint64_t seed,
                                           std::uint32_t stream,
                                           std::uint64_t sample_index,
                                           ComplexVector& z) {
  for (Index k = 0; k < z.size(); ++k) {
    z[k] = standard_complex_gaussian(seed, stream, sample_index,
                                     static_cast<std::uint32_t>(k));
  }
}

}  // namespace pcsft

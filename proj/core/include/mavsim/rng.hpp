#pragma once

#include <cstdint>
#include <random>

namespace mavsim {

// splitmix64 mixing step. Used both to stretch seeds and to derive
// per-point seeds in sweep grids; stable across platforms by construction.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic uniform generator. std::mt19937_64 has a fixed standard
// sequence; the [0,1) and bounded-int mappings below are spelled out here
// (not via std distributions, whose output is implementation-defined) so
// that a given seed replays bit-identically everywhere.
class Rng {
 public:
  Rng() : eng_(0) {}
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  void reseed(std::uint64_t seed) { eng_.seed(seed); }

  // Uniform double in [0,1) using the top 53 bits.
  double uniform01() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n). Modulo mapping; the bias at n << 2^64 is
  // far below anything observable here.
  std::uint64_t uniform_below(std::uint64_t n) { return eng_() % n; }

  std::uint64_t next() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace mavsim

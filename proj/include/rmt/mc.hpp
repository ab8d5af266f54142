#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace rmt {

struct MCConfig {
  uint64_t samples = 1'000'000;
  uint64_t seed = 20240101;
  bool antithetic = false;
};

struct MCStats {
  double mean = 0;
  double std_error = 0;
  uint64_t samples = 0;
};

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t mix_seed(uint64_t base, uint64_t salt) { return splitmix64(base ^ splitmix64(salt)); }

inline double u01(std::mt19937_64& eng) {
  // 53-bit mantissa; bit-identical across standard libraries
  return double(eng() >> 11) * 0x1.0p-53;
}

// Chunked Monte Carlo mean with per-chunk derived seeds: the result is
// bit-identical for a fixed (seed, samples) regardless of how work is split.
// f is called with a dim-length array of U[0,1) coordinates.
template <typename F>
MCStats mc_estimate(int dim, const MCConfig& cfg, F&& f) {
  constexpr uint64_t kChunk = 8192;
  double x[32];
  double xa[32];
  if (dim > 32) throw std::invalid_argument("mc dimension too large");
  double sum = 0, sumsq = 0;
  uint64_t total = cfg.antithetic ? (cfg.samples + 1) / 2 : cfg.samples;
  uint64_t done = 0, chunk_index = 0;
  while (done < total) {
    uint64_t m = std::min(kChunk, total - done);
    std::mt19937_64 eng(mix_seed(cfg.seed, 0x7fb5d329728ea185ULL + chunk_index));
    for (uint64_t i = 0; i < m; ++i) {
      for (int d = 0; d < dim; ++d) x[d] = u01(eng);
      double v;
      if (cfg.antithetic) {
        for (int d = 0; d < dim; ++d) xa[d] = 1.0 - x[d];
        v = 0.5 * (f(x) + f(xa));
      } else {
        v = f(x);
      }
      sum += v;
      sumsq += v * v;
    }
    done += m;
    ++chunk_index;
  }
  MCStats st;
  st.samples = cfg.antithetic ? total * 2 : total;
  if (total > 0) {
    st.mean = sum / double(total);
    double var = sumsq / double(total) - st.mean * st.mean;
    if (var < 0) var = 0;
    st.std_error = std::sqrt(var / double(total));
  }
  return st;
}

}  // namespace rmt

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "rmt/circuits.hpp"
#include "rmt/moments.hpp"

namespace rmt {

// Entry law for simulated matrices. Gaussian entries are N(0,1)/sqrt(n),
// Bernoulli entries are Ber(lambda/n) (unscaled), stable entries are
// symmetric alpha-stable scaled by p^{1/alpha}. Optional deterministic
// profiles multiply entries by sigma evaluated at the scaled position, and an
// optional truncation level zeroes entries with |x| > t.
struct EntrySpec {
  enum class Base { Gaussian, Bernoulli, Stable };
  Base base = Base::Gaussian;
  double lambda = 1.0;
  double alpha = 1.5;
  Sigma2 sigma2;  // rectangular profile, args (i/p, j/n)
  Sigma1 sigma1;  // sequence profile for patterned matrices, arg i/n
  std::optional<double> truncation;
};

struct MatrixSpec {
  int p = 1;
  int n = 1;
  EntrySpec entry;
  uint64_t seed = 1;
};

// p x n matrix with independent entries; deterministic in (spec, seed).
Eigen::MatrixXd generate_x(const MatrixSpec& spec);

// p x n patterned matrix A[i][j] = x_{L(i,j)} with one independent draw per
// distinct link value (two-sided sequence for the signed links).
Eigen::MatrixXd generate_patterned(LinkKind link, int p, int n, const EntrySpec& entry,
                                   uint64_t seed);

struct Histogram {
  std::vector<double> edges;     // bins+1 ascending
  std::vector<uint64_t> counts;  // bins
};

Histogram make_histogram(const std::vector<double>& values, int bins, bool quantile = false);

struct ESDResult {
  std::vector<double> eigenvalues;  // ascending
  std::map<int, double> empirical_moments;
  Histogram histogram;
  int clamped = 0;  // tiny negatives zeroed (Gram spectra only)
  int p = 0, n = 0;
  uint64_t seed = 0;
};

// Spectrum of the Gram matrix X X^T through a dense symmetric eigensolver.
ESDResult esd(const Eigen::MatrixXd& x, int k_max = 6, int bins = 100);

// Spectrum of a symmetric matrix itself (no Gram product, no clamping).
ESDResult esd_symmetric(const Eigen::MatrixXd& m, int k_max = 6, int bins = 100);

// n x n symmetric matrix with independent upper-triangle entries from the
// same law; pairs k-th Gram moments with 2k-th square-matrix moments at p = n.
ESDResult wigner_companion(int n, const EntrySpec& entry, uint64_t seed, int k_max = 6);

struct ReplicationSummary {
  std::vector<std::map<int, double>> per_rep;
  std::map<int, double> mean;
  std::map<int, double> sd;
  Histogram pooled;
  std::vector<uint64_t> seeds;
};

// target == S simulates X X^T; a patterned link simulates A A^T.
ReplicationSummary replicate(const MatrixSpec& spec, int reps, int k_max,
                             LinkKind target = LinkKind::S, int bins = 100,
                             bool quantile_bins = false);

}  // namespace rmt

#include "rmt/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "rmt/mc.hpp"

namespace rmt {

namespace {

constexpr double kPi = 3.14159265358979323846;

double u01_open(std::mt19937_64& eng) {  // (0,1)
  return (double(eng() >> 11) + 0.5) * 0x1.0p-53;
}

double draw_gauss(std::mt19937_64& eng) {
  double u1 = u01_open(eng), u2 = u01_open(eng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

// Chambers-Mallows-Stuck, symmetric case.
double draw_stable(std::mt19937_64& eng, double alpha) {
  double v = kPi * (u01_open(eng) - 0.5);
  double w = -std::log(u01_open(eng));
  double a = std::sin(alpha * v) / std::pow(std::cos(v), 1.0 / alpha);
  double b = std::pow(std::cos(v - alpha * v) / w, (1.0 - alpha) / alpha);
  return a * b;
}

double draw_entry(std::mt19937_64& eng, const EntrySpec& e, int n, int p) {
  switch (e.base) {
    case EntrySpec::Base::Gaussian:
      return draw_gauss(eng) / std::sqrt(double(n));
    case EntrySpec::Base::Bernoulli:
      return (u01(eng) < e.lambda / double(n)) ? 1.0 : 0.0;
    case EntrySpec::Base::Stable: {
      if (e.alpha <= 0 || e.alpha >= 2)
        throw std::invalid_argument("stable index must lie in (0,2)");
      return draw_stable(eng, e.alpha) / std::pow(double(p), 1.0 / e.alpha);
    }
  }
  throw std::logic_error("unreachable");
}

double apply_truncation(double v, const std::optional<double>& t) {
  if (t && std::fabs(v) > *t) return 0.0;
  return v;
}

}  // namespace

Eigen::MatrixXd generate_x(const MatrixSpec& spec) {
  if (spec.p < 1 || spec.n < 1) throw std::invalid_argument("dimensions must be positive");
  std::mt19937_64 eng(mix_seed(spec.seed, 0x58AA));
  Eigen::MatrixXd x(spec.p, spec.n);
  for (int i = 0; i < spec.p; ++i)
    for (int j = 0; j < spec.n; ++j) {
      double v = draw_entry(eng, spec.entry, spec.n, spec.p);
      if (spec.entry.sigma2)
        v *= spec.entry.sigma2(double(i + 1) / spec.p, double(j + 1) / spec.n);
      x(i, j) = apply_truncation(v, spec.entry.truncation);
    }
  return x;
}

namespace {

long long pattern_index(LinkKind link, long long i, long long j, long long n) {
  long long r;
  switch (link) {
    case LinkKind::R_sym: r = (i + j - 2) % n; break;
    case LinkKind::R_asym: {
      long long m = (i + j - 2) % n;
      r = (i <= j) ? m : -m;
      break;
    }
    case LinkKind::C_sym: {
      long long d = std::llabs(i - j) % n;
      // n/2 - |n/2 - d| in halves; recover an integer index by doubling
      r = n - std::llabs(n - 2 * d);  // = 2 * link value
      break;
    }
    case LinkKind::C_asym: r = ((j - i) % n + n) % n; break;
    case LinkKind::T_sym: r = std::llabs(i - j); break;
    case LinkKind::T_asym: r = i - j; break;
    case LinkKind::H_sym: r = i + j; break;
    case LinkKind::H_asym: r = (i >= j) ? (i + j) : -(i + j); break;
    default: throw std::invalid_argument("not a patterned link");
  }
  return r;
}

}  // namespace

Eigen::MatrixXd generate_patterned(LinkKind link, int p, int n, const EntrySpec& entry,
                                   uint64_t seed) {
  if (!link_is_patterned(link)) throw std::invalid_argument("not a patterned link");
  if (p < 1 || n < 1) throw std::invalid_argument("dimensions must be positive");
  // one draw per distinct link value; values live in [-(2(n+p)), 2(n+p)]
  // after the symmetric-circulant doubling
  long long lim = 2LL * (n + p) + 2;
  std::vector<double> seq(2 * lim + 1);
  std::mt19937_64 eng(mix_seed(seed, 0x5E9));
  for (long long idx = -lim; idx <= lim; ++idx) {
    double v = draw_entry(eng, entry, n, p);
    if (entry.sigma1) {
      // the symmetric-circulant index is carried doubled to stay integral
      double t = (link == LinkKind::C_sym) ? double(idx) / (2.0 * double(n))
                                           : double(idx) / double(n);
      v *= entry.sigma1(t);
    }
    seq[size_t(idx + lim)] = apply_truncation(v, entry.truncation);
  }
  Eigen::MatrixXd a(p, n);
  for (int i = 1; i <= p; ++i)
    for (int j = 1; j <= n; ++j) {
      long long idx = pattern_index(link, i, j, n);
      a(i - 1, j - 1) = seq[size_t(idx + lim)];
    }
  return a;
}

Histogram make_histogram(const std::vector<double>& values, int bins, bool quantile) {
  Histogram h;
  if (values.empty() || bins < 1) return h;
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  double lo = std::min(0.0, sorted.front());
  double hi = sorted.back();
  if (hi <= lo) hi = lo + 1.0;
  h.edges.resize(bins + 1);
  if (quantile) {
    for (int b = 0; b <= bins; ++b) {
      size_t idx = size_t(double(b) / bins * (sorted.size() - 1));
      h.edges[b] = sorted[idx];
    }
    h.edges.front() = lo;
    h.edges.back() = hi;
  } else {
    for (int b = 0; b <= bins; ++b) h.edges[b] = lo + (hi - lo) * double(b) / bins;
  }
  h.counts.assign(bins, 0);
  for (double v : sorted) {
    int b = int((v - lo) / (hi - lo) * bins);
    if (!quantile) {
      if (b < 0) b = 0;
      if (b >= bins) b = bins - 1;
    } else {
      b = int(std::upper_bound(h.edges.begin(), h.edges.end(), v) - h.edges.begin()) - 1;
      if (b < 0) b = 0;
      if (b >= bins) b = bins - 1;
    }
    h.counts[size_t(b)]++;
  }
  return h;
}

namespace {

ESDResult spectrum(const Eigen::MatrixXd& m, bool gram, int k_max, int bins) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("symmetric eigensolver failed to converge");
  ESDResult r;
  r.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + m.rows());
  std::sort(r.eigenvalues.begin(), r.eigenvalues.end());
  if (gram) {
    double scale = std::max(std::fabs(r.eigenvalues.front()), std::fabs(r.eigenvalues.back()));
    double floor_at = -1e-10 * std::max(scale, 1.0);
    for (double& v : r.eigenvalues) {
      if (v < 0) {
        if (v < floor_at)
          throw std::runtime_error("Gram eigenvalue below numerical zero floor");
        v = 0.0;
        r.clamped++;
      }
    }
  }
  double invp = 1.0 / double(m.rows());
  for (int k = 1; k <= k_max; ++k) {
    double acc = 0;
    for (double v : r.eigenvalues) acc += std::pow(v, k);
    r.empirical_moments[k] = acc * invp;
  }
  r.histogram = make_histogram(r.eigenvalues, bins);
  return r;
}

}  // namespace

ESDResult esd(const Eigen::MatrixXd& x, int k_max, int bins) {
  Eigen::MatrixXd s = x * x.transpose();
  ESDResult r = spectrum(s, true, k_max, bins);
  r.p = int(x.rows());
  r.n = int(x.cols());
  return r;
}

ESDResult esd_symmetric(const Eigen::MatrixXd& m, int k_max, int bins) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
  ESDResult r = spectrum(m, false, k_max, bins);
  r.p = int(m.rows());
  r.n = int(m.cols());
  return r;
}

ESDResult wigner_companion(int n, const EntrySpec& entry, uint64_t seed, int k_max) {
  std::mt19937_64 eng(mix_seed(seed, 0x316E));
  Eigen::MatrixXd w(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double v = draw_entry(eng, entry, n, n);
      if (entry.sigma2) v *= entry.sigma2(double(i + 1) / n, double(j + 1) / n);
      v = apply_truncation(v, entry.truncation);
      w(i, j) = v;
      w(j, i) = v;
    }
  ESDResult r = esd_symmetric(w, k_max);
  r.seed = seed;
  return r;
}

ReplicationSummary replicate(const MatrixSpec& spec, int reps, int k_max, LinkKind target,
                             int bins, bool quantile_bins) {
  if (reps < 1) throw std::invalid_argument("replication count must be positive");
  ReplicationSummary sum;
  std::vector<double> pooled;
  for (int rep = 0; rep < reps; ++rep) {
    uint64_t rseed = mix_seed(spec.seed, 0x4E50 + uint64_t(rep));
    sum.seeds.push_back(rseed);
    Eigen::MatrixXd x = (target == LinkKind::S)
                            ? generate_x({spec.p, spec.n, spec.entry, rseed})
                            : generate_patterned(target, spec.p, spec.n, spec.entry, rseed);
    ESDResult r = esd(x, k_max, bins);
    r.seed = rseed;
    sum.per_rep.push_back(r.empirical_moments);
    pooled.insert(pooled.end(), r.eigenvalues.begin(), r.eigenvalues.end());
  }
  for (int k = 1; k <= k_max; ++k) {
    double m = 0;
    for (auto& rep : sum.per_rep) m += rep.at(k);
    m /= reps;
    double v = 0;
    for (auto& rep : sum.per_rep) v += (rep.at(k) - m) * (rep.at(k) - m);
    sum.mean[k] = m;
    sum.sd[k] = reps > 1 ? std::sqrt(v / (reps - 1)) : 0.0;
  }
  sum.pooled = make_histogram(pooled, bins, quantile_bins);
  return sum;
}

}  // namespace rmt

#include <doctest.h>

#include <cmath>
#include <set>

#include "rmt/simulate.hpp"

using namespace rmt;

TEST_CASE("deterministic generation") {
  MatrixSpec spec;
  spec.p = 4;
  spec.n = 6;
  spec.seed = 321;
  auto a = generate_x(spec);
  auto b = generate_x(spec);
  CHECK(a == b);
  spec.seed = 322;
  CHECK(a != generate_x(spec));
}

TEST_CASE("bernoulli entry counts follow the mean") {
  MatrixSpec spec;
  spec.p = 500;
  spec.n = 1000;
  spec.entry.base = EntrySpec::Base::Bernoulli;
  spec.entry.lambda = 3.0;
  spec.seed = 5;
  auto x = generate_x(spec);
  double ones = x.sum();
  double mean = 3.0 * spec.p;  // p*n * (lambda/n)
  double sd = std::sqrt(mean);
  CHECK(std::fabs(ones - mean) < 5 * sd);
}

TEST_CASE("triangular mask zeroes below the diagonal") {
  MatrixSpec spec;
  spec.p = 20;
  spec.n = 20;
  spec.seed = 7;
  spec.entry.sigma2 = [](double a, double b) { return a <= b ? 1.0 : 0.0; };
  auto x = generate_x(spec);
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) {
      if (i > j) CHECK(x(i, j) == 0.0);
      if (i < j) CHECK(x(i, j) != 0.0);
    }
}

TEST_CASE("truncation is literal") {
  MatrixSpec spec;
  spec.p = 30;
  spec.n = 30;
  spec.seed = 8;
  spec.entry.truncation = 0.05;
  auto x = generate_x(spec);
  for (int i = 0; i < 30; ++i)
    for (int j = 0; j < 30; ++j) CHECK(std::fabs(x(i, j)) <= 0.05);
}

TEST_CASE("patterned matrices share entries by link value") {
  std::vector<LinkKind> links = {LinkKind::T_sym, LinkKind::T_asym, LinkKind::H_sym,
                                 LinkKind::H_asym, LinkKind::R_sym, LinkKind::R_asym,
                                 LinkKind::C_sym, LinkKind::C_asym};
  int p = 7, n = 5;
  for (LinkKind link : links) {
    auto a = generate_patterned(link, p, n, EntrySpec{}, 99);
    Circuit probe;
    probe.p = p;
    probe.n = n;
    probe.pi = {1, 1, 1};
    for (int i1 = 1; i1 <= p; ++i1)
      for (int j1 = 1; j1 <= n; ++j1)
        for (int i2 = 1; i2 <= p; ++i2)
          for (int j2 = 1; j2 <= n; ++j2) {
            probe.pi = {i1, j1, i1};
            auto v1 = xi(link, probe, 1);
            probe.pi = {i2, j2, i2};
            auto v2 = xi(link, probe, 1);
            if (v1 == v2) CHECK(a(i1 - 1, j1 - 1) == a(i2 - 1, j2 - 1));
          }
  }
}

TEST_CASE("toeplitz and reverse circulant structure") {
  auto t = generate_patterned(LinkKind::T_sym, 3, 4, EntrySpec{}, 11);
  CHECK(t(0, 0) == t(1, 1));
  CHECK(t(0, 1) == t(1, 0));
  CHECK(t(0, 1) == t(1, 2));

  auto r = generate_patterned(LinkKind::R_sym, 3, 4, EntrySpec{}, 12);
  // row 2 is row 1 shifted left by one (mod n)
  for (int j = 0; j < 4; ++j) CHECK(r(1, j) == r(0, (j + 1) % 4));

  // distinct values: max(p, n) for |i-j|, n + p - 1 for signed i-j
  std::set<double> distinct;
  auto t2 = generate_patterned(LinkKind::T_sym, 5, 6, EntrySpec{}, 13);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 6; ++j) distinct.insert(t2(i, j));
  CHECK(distinct.size() == 6);
  distinct.clear();
  auto t3 = generate_patterned(LinkKind::T_asym, 5, 6, EntrySpec{}, 13);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 6; ++j) distinct.insert(t3(i, j));
  CHECK(distinct.size() == 5 + 6 - 1);
}

TEST_CASE("esd identities") {
  MatrixSpec spec;
  spec.p = 40;
  spec.n = 80;
  spec.seed = 17;
  auto x = generate_x(spec);
  auto r = esd(x, 4);
  REQUIRE(int(r.eigenvalues.size()) == 40);
  for (double v : r.eigenvalues) CHECK(v >= 0.0);

  // trace identities
  double sum_eig = 0, sum_sq = 0;
  for (double v : r.eigenvalues) {
    sum_eig += v;
    sum_sq += v * v;
  }
  Eigen::MatrixXd s = x * x.transpose();
  CHECK(sum_eig == doctest::Approx(s.trace()).epsilon(1e-8));
  CHECK(sum_sq == doctest::Approx(s.squaredNorm()).epsilon(1e-8));
  CHECK(r.empirical_moments.at(1) == doctest::Approx(x.squaredNorm() / 40).epsilon(1e-8));

  // independent trace-power oracle
  Eigen::MatrixXd power = s;
  for (int k = 1; k <= 4; ++k) {
    CHECK(r.empirical_moments.at(k) == doctest::Approx(power.trace() / 40).epsilon(1e-8));
    if (k < 4) power = power * s;
  }

  // identity matrix sanity
  Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(5, 5);
  auto re = esd(eye, 2);
  for (double v : re.eigenvalues) CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("wigner companion semicircle moments") {
  EntrySpec entry;
  double m2 = 0, m4 = 0;
  int reps = 6, n = 400;
  for (int rep = 0; rep < reps; ++rep) {
    auto r = wigner_companion(n, entry, 900 + rep, 4);
    m2 += r.empirical_moments.at(2) / reps;
    m4 += r.empirical_moments.at(4) / reps;
  }
  CHECK(m2 == doctest::Approx(1.0).epsilon(0.05));
  CHECK(m4 == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("replication determinism and pooling") {
  MatrixSpec spec;
  spec.p = 30;
  spec.n = 60;
  spec.seed = 44;
  auto a = replicate(spec, 3, 2);
  auto b = replicate(spec, 3, 2);
  CHECK(a.mean.at(1) == b.mean.at(1));
  CHECK(a.mean.at(2) == b.mean.at(2));
  CHECK(a.seeds == b.seeds);
  uint64_t total = 0;
  for (auto c : a.pooled.counts) total += c;
  CHECK(total == 3 * 30);
}

TEST_CASE("histogram binning") {
  std::vector<double> v = {0.1, 0.2, 0.3, 0.9, 1.5};
  auto h = make_histogram(v, 5);
  CHECK(h.edges.size() == 6);
  uint64_t total = 0;
  for (auto c : h.counts) total += c;
  CHECK(total == v.size());
  auto q = make_histogram(v, 2, true);
  total = 0;
  for (auto c : q.counts) total += c;
  CHECK(total == v.size());
}

TEST_CASE("stable entries produce heavy tails") {
  MatrixSpec spec;
  spec.p = 60;
  spec.n = 60;
  spec.entry.base = EntrySpec::Base::Stable;
  spec.entry.alpha = 1.0;
  spec.seed = 4242;
  auto x = generate_x(spec);
  double mx = x.cwiseAbs().maxCoeff();
  CHECK(mx > 1.0);  // p^{-1/alpha}-scaled Cauchy still has O(1) extremes
  CHECK(std::isfinite(x.sum()));
}

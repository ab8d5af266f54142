#include <doctest.h>

#include <functional>
#include <random>

#include "rmt/circuits.hpp"

using namespace rmt;

namespace {

// Definition-level oracle: trial every circuit in the full index box and keep
// those whose xi values agree wherever the word repeats a letter. Only
// feasible for tiny (p, n, 2k).
Count naive_count(LinkKind link, const Word& w, long long p, long long n) {
  int twok = int(w.size());
  Circuit c;
  c.p = p;
  c.n = n;
  c.pi.assign(twok + 1, 1);
  Count total = 0;
  std::function<void(int)> rec = [&](int t) {
    if (t == twok) {
      c.pi[twok] = c.pi[0];
      for (int i = 1; i <= twok; ++i)
        for (int j = i + 1; j <= twok; ++j)
          if (w.at(i) == w.at(j) && xi(link, c, i) != xi(link, c, j)) return;
      ++total;
      return;
    }
    long long lim = (t % 2 == 0) ? p : n;
    for (long long v = 1; v <= lim; ++v) {
      c.pi[size_t(t)] = v;
      rec(t + 1);
    }
  };
  rec(0);
  return total;
}

Circuit make(std::vector<long long> pi, long long p, long long n) {
  Circuit c;
  c.pi = std::move(pi);
  c.p = p;
  c.n = n;
  return c;
}

}  // namespace

TEST_CASE("xi link values") {
  // S-link: transpose of the same cell gives the same edge
  Circuit c = make({1, 2, 1}, 3, 3);
  CHECK(xi(LinkKind::S, c, 1) == xi(LinkKind::S, c, 2));
  CHECK(xi(LinkKind::S, c, 1).a == 1);
  CHECK(xi(LinkKind::S, c, 1).b == 2);

  Circuit t = make({1, 3, 1}, 3, 3);
  CHECK(xi(LinkKind::T_sym, t, 1).a == 2);

  // r_sym at n=5: cell (4,3) -> (4+3-2) mod 5 = 0
  Circuit r = make({4, 3, 4}, 5, 5);
  CHECK(xi(LinkKind::R_sym, r, 1).a == 0);

  // doubled symmetric-circulant value: n/2 - |n/2 - |i-j|| at n=5, |i-j|=2 -> 2
  Circuit sc = make({1, 3, 1}, 5, 5);
  CHECK(xi(LinkKind::C_sym, sc, 1).a == 2 * 2);

  CHECK_THROWS(xi(LinkKind::S, c, 3));
}

TEST_CASE("word extraction") {
  CHECK(word_of_circuit(LinkKind::S, make({1, 1, 1, 1, 1}, 1, 1)) == Word::parse("aaaa"));
  CHECK(word_of_circuit(LinkKind::S, make({1, 1, 1, 2, 1}, 2, 2)) == Word::parse("aabb"));
  // |differences| along (1,2,3,2,1) are 1,1,1,1
  CHECK(word_of_circuit(LinkKind::T_sym, make({1, 2, 3, 2, 1}, 3, 3)) == Word::parse("aaaa"));
  // row - col values along the same circuit are -1, 1, 1, -1
  CHECK(word_of_circuit(LinkKind::T_asym, make({1, 2, 3, 2, 1}, 3, 3)) == Word::parse("abba"));
}

TEST_CASE("count matches spec pn examples") {
  CHECK(count_circuits(LinkKind::S, Word::parse("aa"), 2, 3) == Count(6));
  for (long long p = 2; p <= 4; ++p)
    for (long long n = 2; n <= 4; ++n)
      CHECK(count_circuits(LinkKind::S, Word::parse("abba"), p, n) == Count(p * p * n));
}

TEST_CASE("count matches naive enumeration on small boxes") {
  std::vector<Word> words = {Word::parse("aa"),   Word::parse("ab"),   Word::parse("aabb"),
                             Word::parse("abab"), Word::parse("abba"), Word::parse("aaaa"),
                             Word::parse("abcb"), Word::parse("abca")};
  std::vector<LinkKind> links = {LinkKind::S,     LinkKind::T_sym, LinkKind::T_asym,
                                 LinkKind::H_sym, LinkKind::H_asym, LinkKind::R_sym,
                                 LinkKind::R_asym, LinkKind::C_sym, LinkKind::C_asym};
  for (LinkKind link : links)
    for (const Word& w : words)
      for (long long p : {2, 3})
        for (long long n : {2, 3}) {
          CAPTURE(link_name(link));
          CAPTURE(w.str());
          CHECK(count_circuits(link, w, p, n) == naive_count(link, w, p, n));
        }
}

TEST_CASE("abab ratio decays") {
  Word w = Word::parse("abab");
  double prev = 1e300;
  for (long long m : {4, 8, 16}) {
    double ratio = count_double(count_circuits(LinkKind::S, w, m, m)) / ratio_denominator(w, m, m);
    CHECK(ratio < prev);
    prev = ratio;
  }
}

TEST_CASE("counts stay within the growth envelope") {
  // count / (p^{r+1} n^{b-r}) stays bounded along the grid
  std::vector<LinkKind> links = {LinkKind::S, LinkKind::T_sym, LinkKind::H_sym, LinkKind::C_asym};
  for (LinkKind link : links) {
    for_each_word(4, [&](const Word& w) {
      std::vector<double> ratios;
      for (long long n : {8, 16, 32}) {
        long long p = n / 2;
        ratios.push_back(count_double(count_circuits(link, w, p, n)) /
                         ratio_denominator(w, p, n));
      }
      double early = std::max(ratios[0], ratios[1]);
      CHECK(ratios[2] <= std::max(1.25 * early, early + 0.05));
      return true;
    });
  }
}

TEST_CASE("wigner word coarsens the s word") {
  // Merging transposed cells can only merge letters, never split them.
  std::mt19937_64 eng(7);
  for (int trial = 0; trial < 500; ++trial) {
    long long p = 2 + eng() % 3, n = 2 + eng() % 3;
    int twok = 2 * (1 + int(eng() % 3));
    Circuit c;
    c.p = std::max(p, n);  // identical index ranges for the Wigner comparison
    c.n = std::max(p, n);
    c.pi.resize(twok + 1);
    for (int i = 0; i < twok; ++i) c.pi[size_t(i)] = 1 + (long long)(eng() % (unsigned long long)c.p);
    c.pi[size_t(twok)] = c.pi[0];
    Word ws = word_of_circuit(LinkKind::S, c);
    // Wigner link: unordered pair of endpoints
    std::vector<int> ids;
    std::vector<std::pair<long long, long long>> seen;
    for (int t = 1; t <= twok; ++t) {
      long long a = std::min(c.pi[size_t(t - 1)], c.pi[size_t(t)]);
      long long b = std::max(c.pi[size_t(t - 1)], c.pi[size_t(t)]);
      int id = -1;
      for (size_t s = 0; s < seen.size(); ++s)
        if (seen[s] == std::make_pair(a, b)) id = int(s);
      if (id < 0) {
        id = int(seen.size());
        seen.emplace_back(a, b);
      }
      ids.push_back(id);
    }
    Word ww = Word::canonicalize_ids(ids);
    // same S letter => same Wigner letter
    for (size_t i = 0; i < ws.size(); ++i)
      for (size_t j = i + 1; j < ws.size(); ++j)
        if (ws[i] == ws[j]) CHECK(ww[i] == ww[j]);
  }
}

TEST_CASE("finite ratio grid") {
  auto pts = finite_ratio(LinkKind::S, Word::parse("aabb"), Rational(1, 2), {8, 16});
  REQUIRE(pts.size() == 2);
  CHECK(pts[0].p == 4);
  CHECK(pts[1].p == 8);
  // SS word: exact count, ratio identically one
  CHECK(pts[0].ratio == doctest::Approx(1.0));
  CHECK(pts[1].ratio == doctest::Approx(1.0));
}

TEST_CASE("node budget is enforced") {
  CountOptions opt;
  opt.max_nodes = 10;
  CHECK_THROWS(count_circuits(LinkKind::S, Word::parse("aabb"), 8, 8, opt));
}

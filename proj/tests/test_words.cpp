#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "rmt/words.hpp"

using namespace rmt;

namespace {

std::set<std::string> word_set(int m, const WordPredicate& pred) {
  std::set<std::string> out;
  for (const auto& w : enumerate_words(m, pred)) out.insert(w.str());
  return out;
}

}  // namespace

TEST_CASE("canonicalize") {
  CHECK(Word::parse("abbba").letters() == std::vector<uint8_t>{1, 2, 2, 2, 1});
  CHECK(Word::parse("zz").letters() == std::vector<uint8_t>{1, 1});
  CHECK(Word::parse("bacab").letters() == std::vector<uint8_t>{1, 2, 3, 2, 1});
  CHECK(Word::parse("abbba").str() == "abbba");
  CHECK_THROWS(Word(std::vector<uint8_t>{2, 1}));
  CHECK_THROWS(Word(std::vector<uint8_t>{1, 3}));
}

TEST_CASE("enumeration hits Bell counts with no duplicates") {
  for (int m = 1; m <= 8; ++m) {
    std::set<std::string> seen;
    Count c = 0;
    for_each_word(m, [&](const Word& w) {
      ++c;
      CHECK(seen.insert(w.str()).second);
      return true;
    });
    CHECK(c == bell(m));
  }
  CHECK(bell(12) == Count(4213597));
  CHECK_THROWS(enumerate_words(13));
}

TEST_CASE("frozen class sets at length 4") {
  CHECK(word_set(4, [](const WordClass& c) { return c.special_symmetric; }) ==
        std::set<std::string>{"aaaa", "aabb", "abba"});
  CHECK(word_set(4, [](const WordClass& c) { return c.even; }) ==
        std::set<std::string>{"aaaa", "aabb", "abba", "abab"});
  CHECK(word_set(2, {}) == std::set<std::string>{"aa", "ab"});
}

TEST_CASE("classify spec words") {
  auto c = classify(Word::parse("abbccaabba"));
  CHECK(c.special_symmetric);

  c = classify(Word::parse("abab"));
  CHECK(c.even);
  CHECK(!c.symmetric);
  CHECK(!c.special_symmetric);

  c = classify(Word::parse("abba"));
  CHECK(c.pair_matched);
  CHECK(c.even);
  CHECK(c.symmetric);
  CHECK(c.special_symmetric);
  CHECK(c.noncrossing_pair);

  // vacuous-gap traps for the between-occurrence rule
  CHECK(!classify(Word::parse("aaabbb")).special_symmetric);
  CHECK(!classify(Word::parse("ab")).special_symmetric);
  CHECK(!classify(Word::parse("aaa")).special_symmetric);
}

TEST_CASE("special symmetry implies the auxiliary conditions") {
  // (a): the last letter appears in pure even blocks; (b)(ii): equal odd/even
  // counts per letter between successive occurrences of any other letter.
  for (int m = 2; m <= 10; m += 2) {
    for_each_word(m, [&](const Word& w) {
      auto c = classify(w);
      if (!c.special_symmetric) return true;
      CHECK(c.even);
      CHECK(c.symmetric);
      CHECK(c.even_blocks);
      int last = w.distinct();
      int run = 0;
      for (size_t i = 0; i <= w.size(); ++i) {
        if (i < w.size() && w[i] == last) {
          ++run;
        } else if (run > 0) {
          CHECK(run % 2 == 0);
          run = 0;
        }
      }
      return true;
    });
  }
}

TEST_CASE("generating profile") {
  auto g = generating_profile(Word::parse("aabb"));
  CHECK(g.b == 2);
  CHECK(g.first_positions == std::vector<int>{1, 3});
  CHECK(g.even_gen == 1);
  CHECK(g.odd_gen == 2);
  CHECK(g.block_sizes == std::vector<int>{2, 2});

  g = generating_profile(Word::parse("abba"));
  CHECK(g.even_gen == 2);
  CHECK(g.odd_gen == 1);

  g = generating_profile(Word::parse("aa"));
  CHECK(g.b == 1);
  CHECK(g.even_gen == 1);
  CHECK(g.odd_gen == 1);

  for (int m = 2; m <= 8; ++m)
    for_each_word(m, [&](const Word& w) {
      auto p = generating_profile(w);
      CHECK(p.even_gen + p.odd_gen == p.b + 1);
      int total = 0;
      for (int s : p.block_sizes) total += s;
      CHECK(total == m);
      return true;
    });
}

TEST_CASE("narayana numbers") {
  CHECK(narayana(3, 1) == Count(3));
  CHECK(narayana(3, 0) == Count(1));
  Count sum4 = 0;
  for (int r = 0; r <= 3; ++r) sum4 += narayana(4, r);
  CHECK(sum4 == Count(14));
  CHECK_THROWS(narayana(3, 3));

  for (int k = 1; k <= 8; ++k) {
    Count sum = 0;
    for (int r = 0; r < k; ++r) sum += narayana(k, r);
    CHECK(sum == catalan(k));
  }

  // count of noncrossing pair words by even generating vertices
  for (int k = 1; k <= 6; ++k) {
    std::vector<Count> by_r(k, 0);
    for_each_word(2 * k, [&](const Word& w) {
      auto c = classify(w);
      if (c.pair_matched && c.special_symmetric) by_r[generating_profile(w).even_gen - 1]++;
      return true;
    });
    for (int r = 0; r < k; ++r) CHECK(by_r[r] == narayana(k, r));
  }
}

TEST_CASE("multiplicative extension") {
  auto c = CumulantSequence::from_map({{2, 0.5}, {3, 2.0}});
  CHECK(multiplicative_extension(c, Word::parse("abbba")) == doctest::Approx(0.5 * 2.0));

  auto lam = CumulantSequence::constant(1.5);
  CHECK(multiplicative_extension(lam, Word::parse("abcabc")) == doctest::Approx(1.5 * 1.5 * 1.5));

  auto pair_only = CumulantSequence::pair_only(1.0);
  CHECK(multiplicative_extension(pair_only, Word::parse("aabb")) == doctest::Approx(1.0));
  CHECK(multiplicative_extension(pair_only, Word::parse("aaaa")) == doctest::Approx(0.0));
  auto strict = CumulantSequence::from_map({{2, 1.0}});
  CHECK_THROWS_WITH_AS(multiplicative_extension(strict, Word::parse("abbbba")),
                       "cumulant of order 4 undefined", std::out_of_range);
}

TEST_CASE("poisson moment sums") {
  double g = 0.7;
  CHECK(q1_moment(g, 2) == doctest::Approx(g));
  CHECK(q2_moment(g, 2) == doctest::Approx(g));
  CHECK(q1_moment(g, 4) == doctest::Approx(g + 2 * g * g));
  CHECK(q2_moment(g, 4) == doctest::Approx(g + 3 * g * g));
  CHECK(q1_moment(g, 3) == 0.0);
  for (int m = 2; m <= 10; m += 2)
    for (double gamma : {0.3, 1.0, 2.5})
      CHECK(q1_moment(gamma, m) <= q2_moment(gamma, m));
}

TEST_CASE("class inclusions NCE in SS in E") {
  for (int m = 2; m <= 10; m += 2) {
    for_each_word(m, [&](const Word& w) {
      auto c = classify(w);
      if (c.even && word_noncrossing(w)) CHECK(c.special_symmetric);
      if (c.special_symmetric) CHECK(c.even);
      CHECK((c.pair_matched && c.special_symmetric) == c.noncrossing_pair);
      return true;
    });
  }
}

TEST_CASE("classify is stable under canonicalize round trips") {
  std::mt19937_64 eng(42);
  for (int trial = 0; trial < 200; ++trial) {
    int m = 2 + int(eng() % 9);
    std::vector<int> ids(m);
    for (auto& v : ids) v = int(eng() % 4) + 17;
    Word w = Word::canonicalize_ids(ids);
    std::vector<int> relabeled(w.letters().begin(), w.letters().end());
    for (auto& v : relabeled) v = 1000 - v;
    Word w2 = Word::canonicalize_ids(relabeled);
    CHECK(w == w2);
    auto a = classify(w);
    auto b = classify(w2);
    CHECK(a.special_symmetric == b.special_symmetric);
    CHECK(a.symmetric == b.symmetric);
    CHECK(a.even == b.even);
  }
}

TEST_CASE("hypergraph counts match SS counts") {
  CHECK(enumerate_acyclic_hypergraphs(1, 1).size() == 1);
  for (int k = 1; k <= 4; ++k) {
    Count total = 0;
    for (int b = 1; b <= 2 * k; ++b) {
      Count h = count_acyclic_hypergraphs(k, b);
      CHECK(h == count_ss_words(2 * k, b));
      total += h;
    }
    Count ss = 0;
    for_each_word(2 * k, [&](const Word& w) {
      if (classify(w).special_symmetric) ++ss;
      return true;
    });
    CHECK(total == ss);
  }
}

TEST_CASE("ss profile counts") {
  CHECK(count_ss_profile(4, 2, 1, {2, 2}) == Count(1));  // abba
  CHECK(count_ss_profile(4, 2, 2, {2, 2}) == Count(1));  // aabb
  CHECK(count_ss_profile(2, 1, 1, {2}) == Count(1));
  CHECK_THROWS(count_ss_profile(4, 2, 1, {2, 3}));

  for (int m = 2; m <= 8; m += 2) {
    Count total = 0;
    // sum over letters, odd generating counts and block-size multisets
    for_each_word(m, [&](const Word& w) {
      if (!classify(w).special_symmetric) return true;
      ++total;
      return true;
    });
    Count via_profiles = 0;
    std::set<std::vector<int>> profiles;  // (a, l, sorted sizes)
    for_each_word(m, [&](const Word& w) {
      if (!classify(w).special_symmetric) return true;
      auto p = generating_profile(w);
      std::vector<int> key;
      key.push_back(p.b);
      key.push_back(p.odd_gen);
      auto sizes = p.block_sizes;
      std::sort(sizes.begin(), sizes.end());
      for (int s : sizes) key.push_back(s);
      profiles.insert(key);
      return true;
    });
    for (auto& key : profiles) {
      std::vector<int> sizes(key.begin() + 2, key.end());
      via_profiles += count_ss_profile(m, key[0], key[1], sizes);
    }
    CHECK(via_profiles == total);
  }
}

#include <doctest.h>

#include <cmath>

#include "rmt/circuits.hpp"
#include "rmt/limits.hpp"

using namespace rmt;

namespace {

MCConfig quick(uint64_t samples = 200000) {
  MCConfig mc;
  mc.samples = samples;
  mc.seed = 99;
  return mc;
}

double oracle_ratio(LinkKind link, const Word& w, const Rational& y, long long n = 48) {
  auto pts = finite_ratio(link, w, y, {n});
  return pts[0].ratio;
}

}  // namespace

TEST_CASE("s link limit") {
  Rational y(1, 2);
  CHECK(s_link_limit(Word::parse("abba"), y).value == 1.0);
  CHECK(s_link_limit(Word::parse("abab"), y).value == 0.0);
  CHECK(s_link_limit(Word::parse("aa"), y).value == 1.0);
  CHECK(s_link_limit(Word::parse("aa"), y).std_error == 0.0);
}

TEST_CASE("zero classes return without sampling") {
  MCConfig mc = quick();
  for (LinkKind link : {LinkKind::T_asym, LinkKind::H_sym, LinkKind::H_asym, LinkKind::R_sym,
                        LinkKind::R_asym, LinkKind::C_asym}) {
    auto r = evaluate_limit(link, Word::parse("abab"), Rational(1), mc);  // even, not symmetric
    CHECK(r.value == 0.0);
    CHECK(r.samples == 0);
  }
  for (LinkKind link : {LinkKind::T_sym, LinkKind::C_sym}) {
    auto r = evaluate_limit(link, Word::parse("abcb"), Rational(1), mc);  // not even
    CHECK(r.value == 0.0);
    CHECK(r.samples == 0);
  }
}

TEST_CASE("trivial words") {
  MCConfig mc = quick(50000);
  for (LinkKind link : {LinkKind::T_sym, LinkKind::T_asym, LinkKind::H_sym, LinkKind::H_asym})
    for (Rational y : {Rational(1, 2), Rational(1), Rational(2)}) {
      auto r = evaluate_limit(link, Word::parse("aa"), y, mc);
      CHECK(r.value == doctest::Approx(1.0).epsilon(0.02));
    }
  // mod links: the single-letter word counts exactly p*n at every (p, n)
  for (LinkKind link : {LinkKind::R_sym, LinkKind::R_asym, LinkKind::C_sym, LinkKind::C_asym})
    for (Rational y : {Rational(1, 2), Rational(1), Rational(2)}) {
      auto r = evaluate_limit(link, Word::parse("aa"), y, mc);
      CHECK(r.value == doctest::Approx(1.0).epsilon(0.02));
      CHECK(oracle_ratio(link, Word::parse("aa"), y, 20) == doctest::Approx(1.0));
    }
}

TEST_CASE("toeplitz volumes against hand-computed polytopes") {
  MCConfig mc = quick(400000);
  // abab under t_sym at y=1: volume of 0 <= x0 + x2 - x1 <= 1 on the cube = 2/3
  auto r = evaluate_limit(LinkKind::T_sym, Word::parse("abab"), Rational(1), mc);
  CHECK(r.value == doctest::Approx(2.0 / 3.0).epsilon(0.02));
  // aabb / abba reduce to unconstrained boxes
  CHECK(evaluate_limit(LinkKind::T_sym, Word::parse("aabb"), Rational(1), mc).value ==
        doctest::Approx(1.0));
  CHECK(evaluate_limit(LinkKind::T_sym, Word::parse("abba"), Rational(1), mc).value ==
        doctest::Approx(1.0));
}

TEST_CASE("u parameterization agrees with the x parameterization") {
  MCConfig mc = quick(400000);
  for (const char* ws : {"aa", "aabb", "abab", "abba", "aabbab"}) {
    Word w = Word::parse(ws);
    if (!classify(w).even) continue;
    for (Rational y : {Rational(1, 2), Rational(1), Rational(2)}) {
      auto a = evaluate_limit(LinkKind::T_sym, w, y, mc);
      auto b = toeplitz_sym_limit_u(w, y, mc);
      double tol = std::max(0.03 * std::max(a.value, b.value),
                            3.0 * std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error));
      CAPTURE(ws);
      CAPTURE(y.str());
      CHECK(std::fabs(a.value - b.value) <= tol);
    }
  }
}

TEST_CASE("toeplitz asym equals hankel sym for symmetric words") {
  MCConfig mc = quick(300000);
  for (const char* ws : {"aa", "aabb", "abba", "abcabc", "abccba"}) {
    Word w = Word::parse(ws);
    if (!classify(w).symmetric) continue;
    for (Rational y : {Rational(1, 2), Rational(1), Rational(2)}) {
      auto t = evaluate_limit(LinkKind::T_asym, w, y, mc);
      auto h = evaluate_limit(LinkKind::H_sym, w, y, mc);
      double tol = std::max(3.0 * std::sqrt(t.std_error * t.std_error + h.std_error * h.std_error),
                            0.02 * std::max(t.value, h.value));
      CAPTURE(ws);
      CAPTURE(y.str());
      CHECK(std::fabs(t.value - h.value) <= tol);
    }
  }
}

TEST_CASE("hankel asym bounded by hankel sym, equal on special symmetric words") {
  MCConfig mc = quick(300000);
  for (const char* ws : {"aabb", "abba", "abccba"}) {  // special symmetric
    Word w = Word::parse(ws);
    REQUIRE(classify(w).special_symmetric);
    auto hs = evaluate_limit(LinkKind::H_sym, w, Rational(1), mc);
    auto ha = evaluate_limit(LinkKind::H_asym, w, Rational(1), mc);
    double tol = 3.0 * std::sqrt(hs.std_error * hs.std_error + ha.std_error * ha.std_error) + 1e-6;
    CHECK(std::fabs(hs.value - ha.value) <= tol);
  }
  {
    Word w = Word::parse("abcabc");  // symmetric, not special symmetric
    auto hs = evaluate_limit(LinkKind::H_sym, w, Rational(1), mc);
    auto ha = evaluate_limit(LinkKind::H_asym, w, Rational(1), mc);
    double tol = 3.0 * std::sqrt(hs.std_error * hs.std_error + ha.std_error * ha.std_error);
    CHECK(ha.value <= hs.value + tol);
    // the sign factor genuinely bites here
    CHECK(ha.value < hs.value - tol);
  }
}

TEST_CASE("integer aspect ratios skip the wraparound integrals") {
  MCConfig mc = quick();
  for (Rational y : {Rational(1), Rational(2)}) {
    for (LinkKind link : {LinkKind::R_sym, LinkKind::C_sym, LinkKind::C_asym}) {
      Word w = Word::parse("aabb");
      auto r = evaluate_limit(link, w, y, mc);
      CHECK(r.samples == 0);
      CHECK(r.std_error == 0.0);
      CHECK(r.terms.at("integral_term") == doctest::Approx(0.0));
    }
  }
  // aabb: one wraparound position, floor term floor(y)^1 per sign choice
  auto r2 = evaluate_limit(LinkKind::R_sym, Word::parse("aabb"), Rational(2), quick());
  CHECK(r2.value == doctest::Approx(2.0));
}

TEST_CASE("mod-link limits match the finite-n oracle") {
  MCConfig mc = quick(300000);
  struct Case {
    LinkKind link;
    const char* w;
    Rational y;
  };
  std::vector<Case> cases = {
      {LinkKind::R_sym, "aabb", Rational(1, 2)},  {LinkKind::R_sym, "aabb", Rational(3, 2)},
      {LinkKind::R_asym, "aabb", Rational(2)},    {LinkKind::R_asym, "abba", Rational(1, 2)},
      {LinkKind::C_sym, "aaaa", Rational(1, 2)},  {LinkKind::C_sym, "aaaa", Rational(1)},
      {LinkKind::C_asym, "abba", Rational(3, 2)}, {LinkKind::C_sym, "abab", Rational(1, 2)},
  };
  for (auto& c : cases) {
    Word w = Word::parse(c.w);
    auto lim = evaluate_limit(c.link, w, c.y, mc);
    double oracle = oracle_ratio(c.link, w, c.y, 60);
    CAPTURE(link_name(c.link));
    CAPTURE(c.w);
    CAPTURE(c.y.str());
    CHECK(std::fabs(lim.value - oracle) <=
          std::max(0.05 * std::fabs(oracle), 3.0 * lim.std_error + 0.01));
  }
}

TEST_CASE("r_asym branch-sign coupling at y=2 for aabb") {
  // branch-enumerated value 4/3; both the engine and the oracle must see it
  MCConfig mc = quick(400000);
  Word w = Word::parse("aabb");
  auto lim = evaluate_limit(LinkKind::R_asym, w, Rational(2), mc);
  CHECK(lim.value == doctest::Approx(4.0 / 3.0).epsilon(0.02));
  CHECK(oracle_ratio(LinkKind::R_asym, w, Rational(2), 60) ==
        doctest::Approx(4.0 / 3.0).epsilon(0.05));
}

TEST_CASE("positivity of admissible limits") {
  MCConfig mc = quick();
  for (int twok : {2, 4}) {
    for_each_word(twok, [&](const Word& w) {
      auto cls = classify(w);
      for (LinkKind link : {LinkKind::T_sym, LinkKind::T_asym, LinkKind::H_sym, LinkKind::R_sym,
                            LinkKind::C_sym, LinkKind::C_asym}) {
        if (!word_admissible(link, cls)) continue;
        auto r = evaluate_limit(link, w, Rational(1, 2), mc);
        CAPTURE(link_name(link));
        CAPTURE(w.str());
        CHECK(r.value > 0.0);
      }
      for (LinkKind link : {LinkKind::H_asym, LinkKind::R_asym}) {
        if (!word_admissible(link, cls)) continue;
        auto r = evaluate_limit(link, w, Rational(1, 2), mc);
        CHECK(r.value >= 0.0);
      }
      return true;
    });
  }
}

TEST_CASE("sign choice surface") {
  auto choices = sign_choices(LinkKind::T_sym, Word::parse("aaaa"));
  CHECK(choices.size() == 3);  // C(3,2)
  choices = sign_choices(LinkKind::T_sym, Word::parse("aabb"));
  CHECK(choices.size() == 1);
  choices = sign_choices(LinkKind::H_sym, Word::parse("aabb"));
  CHECK(choices.size() == 1);

  auto forms = build_linear_forms(LinkKind::T_asym, Word::parse("abba"),
                                  sign_choices(LinkKind::T_asym, Word::parse("abba"))[0]);
  CHECK(forms.size() == 2);  // positions 3 and 4
  CHECK(forms[0].position == 3);
  CHECK(forms[1].position == 4);

  SignChoice bad;
  bad.signs.assign(4, 1);  // unbalanced for aabb
  CHECK_THROWS(build_forms(LinkKind::T_sym, Word::parse("aabb"), bad));
}

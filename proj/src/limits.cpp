#include "rmt/limits.hpp"

#include <cmath>
#include <stdexcept>

namespace rmt {

namespace {

inline double frac(double a) { return a - std::floor(a); }
inline double circ_dist(double a) {
  double f = frac(a);
  return std::min(f, 1.0 - f);
}

}  // namespace

bool word_admissible(LinkKind link, const WordClass& cls) {
  switch (link) {
    case LinkKind::T_sym:
    case LinkKind::C_sym:
      return cls.even;
    case LinkKind::T_asym:
    case LinkKind::H_sym:
    case LinkKind::H_asym:
    case LinkKind::R_sym:
    case LinkKind::R_asym:
    case LinkKind::C_asym:
      return cls.symmetric;
    case LinkKind::S:
      return cls.special_symmetric;
  }
  return false;
}

LimitResult s_link_limit(const Word& w, const Rational& y) {
  if (!(Rational(0) < y)) throw std::invalid_argument("aspect ratio y must be positive");
  LimitResult r;
  r.value = classify(w).special_symmetric ? 1.0 : 0.0;
  return r;
}

namespace detail {

PatternWordEngine::PatternWordEngine(FormSystem fs, const Rational& y) : fs_(std::move(fs)) {
  y_ = y.value();
  floor_y_ = y.floor_ll();
  frac_y_ = y.frac().value();
  mod_link_ = fs_.link == LinkKind::R_sym || fs_.link == LinkKind::R_asym ||
              fs_.link == LinkKind::C_sym || fs_.link == LinkKind::C_asym;
  signed_link_ = fs_.link == LinkKind::H_asym || fs_.link == LinkKind::R_asym;

  int nv = fs_.b + 1;
  scaled_coeff_.assign(size_t(fs_.twok + 1) * nv, 0.0);
  for (int t = 0; t <= fs_.twok; ++t)
    for (int j = 0; j < nv; ++j)
      scaled_coeff_[size_t(t) * nv + j] =
          double(fs_.coeff[t][j]) * (fs_.var_is_even[j] ? y_ : 1.0);

  order_ = fs_.block_size;
  letter_of_pos_.assign(fs_.twok, 0);
  for (int t = 1; t <= fs_.twok; ++t) letter_of_pos_[t - 1] = fs_.word[t - 1] - 1;
  is_generating_.assign(fs_.twok + 1, true);
  for (int t : fs_.nongen) is_generating_[t] = false;
}

double PatternWordEngine::form_value(int t, const double* x) const {
  int nv = fs_.b + 1;
  const double* row = &scaled_coeff_[size_t(t) * nv];
  double v = 0;
  for (int j = 0; j < nv; ++j) v += row[j] * x[j];
  return v;
}

bool PatternWordEngine::deterministic_without_f() const {
  return mod_link_ && !signed_link_ && (frac_y_ == 0.0 || fs_.s_minus.empty());
}

double PatternWordEngine::floor_term() const {
  double v = 1;
  for (size_t i = 0; i < fs_.s_minus.size(); ++i) v *= double(floor_y_);
  return v;
}

double PatternWordEngine::deterministic_value() const { return floor_term(); }

double PatternWordEngine::letter_magnitude(int letter, const double* x) const {
  int t = fs_.first_pos[letter];
  double cur = form_value(t, x);
  double prev = form_value(t - 1, x);
  switch (fs_.link) {
    case LinkKind::T_sym: return std::fabs(cur - prev);
    case LinkKind::T_asym: return (t % 2 == 0) ? cur - prev : prev - cur;  // row - col
    case LinkKind::H_sym: return cur + prev;
    case LinkKind::H_asym: {
      double row = (t % 2 == 0) ? cur : prev;
      double col = (t % 2 == 0) ? prev : cur;
      return (row >= col) ? (cur + prev) : -(cur + prev);
    }
    case LinkKind::R_sym:
    case LinkKind::R_asym:  // sign applied per branch tuple by the caller
      return frac(cur + prev);
    case LinkKind::C_asym: return (t % 2 == 1) ? frac(cur - prev) : frac(prev - cur);
    case LinkKind::C_sym: return circ_dist(cur - prev);
    case LinkKind::S: break;
  }
  throw std::logic_error("letter_magnitude: not a patterned link");
}

double PatternWordEngine::sample(const double* x, const OrderFn* f) const {
  const int twok = fs_.twok;

  if (!mod_link_) {
    // Toeplitz / Hankel: every non-generating vertex must land in range.
    for (int t : fs_.nongen) {
      double v = form_value(t, x);
      double bound = (t % 2 == 0) ? y_ : 1.0;
      if (!(v >= 0.0 && v < bound)) return 0.0;
    }
    if (fs_.link == LinkKind::H_asym) {
      // the sign of row - col must agree across each letter's occurrences
      int8_t refsign[64] = {0};
      for (int t = 1; t <= twok; ++t) {
        double cur = form_value(t, x);
        double prev = form_value(t - 1, x);
        double row = (t % 2 == 0) ? cur : prev;
        double col = (t % 2 == 0) ? prev : cur;
        int8_t s = (row >= col) ? 1 : -1;
        int l = letter_of_pos_[t - 1];
        if (refsign[l] == 0)
          refsign[l] = s;
        else if (refsign[l] != s)
          return 0.0;
      }
    }
    if (!f) return 1.0;
    double prod = 1.0;
    for (int l = 0; l < fs_.b; ++l) prod *= (*f)(order_[l], letter_magnitude(l, x));
    return prod;
  }

  // Mod-n links. Odd non-generating vertices wrap to a unique value; even
  // non-generating vertices (S-) have floor(y) copies plus one more when the
  // wrapped base lands under the fractional part of y.
  const auto& sm = fs_.s_minus;
  double bases[16];
  int counts[16];
  if (sm.size() > 16) throw std::runtime_error("too many wraparound branch positions");
  for (size_t i = 0; i < sm.size(); ++i) {
    bases[i] = frac(form_value(sm[i], x));
    counts[i] = int(floor_y_) + ((bases[i] < frac_y_) ? 1 : 0);
    if (counts[i] == 0) return 0.0;
  }

  if (!signed_link_) {
    double weight = 1.0;
    for (size_t i = 0; i < sm.size(); ++i) weight *= double(counts[i]);
    if (!f) return weight;
    double prod = 1.0;
    for (int l = 0; l < fs_.b; ++l) prod *= (*f)(order_[l], letter_magnitude(l, x));
    return weight * prod;
  }

  // R_asym: sign conditions compare actual (wrapped, branch-shifted) vertex
  // values, so enumerate the branch tuples exactly.
  double actual[32];
  int smidx[32];
  for (int t = 0; t <= twok; ++t) smidx[t] = -1;
  for (size_t i = 0; i < sm.size(); ++i) smidx[sm[i]] = int(i);
  for (int t = 0; t <= twok; ++t) {
    if (t == 0 || t == twok)
      actual[t] = form_value(0, x);
    else if (smidx[t] >= 0)
      actual[t] = 0;  // filled per tuple
    else
      actual[t] = is_generating_[t] ? form_value(t, x) : frac(form_value(t, x));
  }

  double total = 0.0;
  int tup[16] = {0};
  while (true) {
    for (size_t i = 0; i < sm.size(); ++i) actual[sm[i]] = bases[i] + double(tup[i]);
    bool ok = true;
    int8_t refsign[64] = {0};
    for (int t = 1; t <= twok && ok; ++t) {
      double row = (t % 2 == 0) ? actual[t] : actual[t - 1];
      double col = (t % 2 == 0) ? actual[t - 1] : actual[t];
      int8_t s = (row <= col) ? 1 : -1;  // reverse-circulant keeps + when row <= col
      int l = letter_of_pos_[t - 1];
      if (refsign[l] == 0)
        refsign[l] = s;
      else if (refsign[l] != s)
        ok = false;
    }
    if (ok) {
      if (!f) {
        total += 1.0;
      } else {
        double prod = 1.0;
        for (int l = 0; l < fs_.b; ++l) {
          double mag = letter_magnitude(l, x);
          prod *= (*f)(order_[l], refsign[l] >= 0 ? mag : -mag);
        }
        total += prod;
      }
    }
    size_t i = 0;
    for (; i < sm.size(); ++i) {
      if (++tup[i] < counts[i]) break;
      tup[i] = 0;
    }
    if (i == sm.size()) break;
  }
  return total;
}

}  // namespace detail

namespace {

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

LimitResult combine_choices(LinkKind link, const Word& w, const Rational& y, const MCConfig& mc,
                            const OrderFn* f) {
  auto choices = sign_choices(link, w);
  LimitResult r;
  double var = 0;
  double floor_sum = 0;
  bool mod_link = link == LinkKind::R_sym || link == LinkKind::R_asym ||
                  link == LinkKind::C_sym || link == LinkKind::C_asym;
  for (size_t ci = 0; ci < choices.size(); ++ci) {
    FormSystem fs = build_forms(link, w, choices[ci]);
    if (!fs.closed)
      throw std::logic_error("form system not closed for admissible word " + w.str());
    detail::PatternWordEngine eng(std::move(fs), y);
    floor_sum += eng.floor_term();
    if (!f && eng.deterministic_without_f()) {
      r.value += eng.deterministic_value();
      continue;
    }
    MCConfig sub = mc;
    sub.seed = mix_seed(mc.seed, 0xC0FFEEULL ^ (uint64_t(ci) << 32) ^ fnv1a(w.str()));
    auto st = mc_estimate(eng.dim(), sub, [&](const double* x) { return eng.sample(x, f); });
    r.value += st.mean;
    var += st.std_error * st.std_error;
    r.samples += st.samples;
  }
  r.std_error = std::sqrt(var);
  r.terms["sign_choices"] = double(choices.size());
  if (mod_link && link != LinkKind::R_asym) {
    r.terms["floor_term"] = floor_sum;
    r.terms["integral_term"] = r.value - floor_sum;
  }
  return r;
}

}  // namespace

LimitResult evaluate_limit(LinkKind link, const Word& w, const Rational& y, const MCConfig& mc) {
  if (!(Rational(0) < y)) throw std::invalid_argument("aspect ratio y must be positive");
  if (link == LinkKind::S) return s_link_limit(w, y);
  if (w.size() % 2 != 0) throw std::invalid_argument("word length must be even");
  auto cls = classify(w);
  if (!word_admissible(link, cls)) {
    LimitResult r;
    r.terms["admissible"] = 0;
    return r;
  }
  return combine_choices(link, w, y, mc, nullptr);
}

LimitResult toeplitz_sym_limit(const Word& w, const Rational& y, const MCConfig& mc) {
  return evaluate_limit(LinkKind::T_sym, w, y, mc);
}
LimitResult toeplitz_asym_limit(const Word& w, const Rational& y, const MCConfig& mc) {
  return evaluate_limit(LinkKind::T_asym, w, y, mc);
}
LimitResult hankel_sym_limit(const Word& w, const Rational& y, const MCConfig& mc) {
  return evaluate_limit(LinkKind::H_sym, w, y, mc);
}
LimitResult hankel_asym_limit(const Word& w, const Rational& y, const MCConfig& mc) {
  return evaluate_limit(LinkKind::H_asym, w, y, mc);
}
LimitResult revcirc_limit(const Word& w, const Rational& y, const MCConfig& mc, bool symmetric) {
  return evaluate_limit(symmetric ? LinkKind::R_sym : LinkKind::R_asym, w, y, mc);
}
LimitResult circ_limit(const Word& w, const Rational& y, const MCConfig& mc, bool symmetric) {
  return evaluate_limit(symmetric ? LinkKind::C_sym : LinkKind::C_asym, w, y, mc);
}

// Difference-variable route for T_sym: sample x0 in [0,1] and one step
// variable per letter (range [-1,y] for even first occurrences, [-y,1] for
// odd ones), rebuild every vertex value, and divide out the Jacobian y^r and
// box volume mismatch.
LimitResult toeplitz_sym_limit_u(const Word& w, const Rational& y, const MCConfig& mc) {
  if (!(Rational(0) < y)) throw std::invalid_argument("aspect ratio y must be positive");
  auto cls = classify(w);
  LimitResult r;
  if (!cls.even) return r;
  double yv = y.value();
  auto choices = sign_choices(LinkKind::T_sym, w);
  GeneratingProfile prof = generating_profile(w);
  int b = prof.b;
  int twok = prof.length_m;
  int r_even = prof.even_gen - 1;  // even first occurrences among letters

  double box = std::pow(1.0 + yv, b);
  double jac = std::pow(yv, r_even);

  double var = 0;
  for (size_t ci = 0; ci < choices.size(); ++ci) {
    const auto& signs = choices[ci].signs;
    std::vector<int> first(b, 0);
    {
      std::vector<bool> seen(b, false);
      for (int t = 1; t <= twok; ++t) {
        int l = w.at(t) - 1;
        if (!seen[l]) {
          seen[l] = true;
          first[l] = t;
        }
      }
    }
    MCConfig sub = mc;
    sub.seed = mix_seed(mc.seed, 0xBADCAB ^ uint64_t(ci));
    auto st = mc_estimate(b + 1, sub, [&](const double* xs) {
      // xs[0] -> x0; xs[1..b] -> step variables mapped onto their boxes
      double val0 = yv * xs[0];
      std::vector<double> val(twok + 1);
      std::vector<double> step(b);
      val[0] = val0;
      for (int l = 0; l < b; ++l) {
        bool even_first = (first[l] % 2 == 0);
        double lo = even_first ? -1.0 : -yv;
        double hi = even_first ? yv : 1.0;
        step[l] = lo + (hi - lo) * xs[l + 1];
      }
      for (int t = 1; t <= twok; ++t) {
        int l = w.at(t) - 1;
        double s = (first[l] == t) ? step[l] : double(signs[t - 1]) * step[l];
        val[t] = val[t - 1] + s;
        double bound = (t % 2 == 0) ? yv : 1.0;
        if (!(val[t] >= 0.0 && val[t] < bound)) return 0.0;
      }
      return 1.0;
    });
    r.value += st.mean * box / jac;
    var += st.std_error * st.std_error * box * box / (jac * jac);
    r.samples += st.samples;
  }
  r.std_error = std::sqrt(var);
  return r;
}

namespace detail {

LimitResult pattern_word_value(LinkKind link, const Word& w, const Rational& y, const MCConfig& mc,
                               const OrderFn* f) {
  return combine_choices(link, w, y, mc, f);
}

}  // namespace detail

}  // namespace rmt

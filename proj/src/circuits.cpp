#include "rmt/circuits.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rmt {

LinkKind link_from_string(const std::string& s) {
  if (s == "s" || s == "S") return LinkKind::S;
  if (s == "t_sym") return LinkKind::T_sym;
  if (s == "t_asym") return LinkKind::T_asym;
  if (s == "h_sym") return LinkKind::H_sym;
  if (s == "h_asym") return LinkKind::H_asym;
  if (s == "r_sym") return LinkKind::R_sym;
  if (s == "r_asym") return LinkKind::R_asym;
  if (s == "c_sym") return LinkKind::C_sym;
  if (s == "c_asym") return LinkKind::C_asym;
  throw std::invalid_argument("unknown link kind: " + s);
}

std::string link_name(LinkKind k) {
  switch (k) {
    case LinkKind::S: return "s";
    case LinkKind::T_sym: return "t_sym";
    case LinkKind::T_asym: return "t_asym";
    case LinkKind::H_sym: return "h_sym";
    case LinkKind::H_asym: return "h_asym";
    case LinkKind::R_sym: return "r_sym";
    case LinkKind::R_asym: return "r_asym";
    case LinkKind::C_sym: return "c_sym";
    case LinkKind::C_asym: return "c_asym";
  }
  return "?";
}

bool link_is_patterned(LinkKind k) { return k != LinkKind::S; }

void Circuit::validate() const {
  int twok = length();
  if (twok < 2 || twok % 2 != 0) throw std::invalid_argument("circuit length must be even >= 2");
  if (pi.front() != pi.back()) throw std::invalid_argument("circuit must close: pi(0) = pi(2k)");
  for (int i = 0; i <= twok; ++i) {
    long long lim = (i % 2 == 0) ? p : n;
    if (pi[i] < 1 || pi[i] > lim)
      throw std::invalid_argument("circuit vertex out of range at slot " + std::to_string(i));
  }
}

namespace {

inline long long mod_n(long long v, long long n) {
  long long r = v % n;
  return r < 0 ? r + n : r;
}

// Link value on a matrix cell (row i in [1,p], col j in [1,n]).
LValue link_value(LinkKind link, long long i, long long j, long long n) {
  switch (link) {
    case LinkKind::S: return {i, j};
    case LinkKind::T_sym: return {std::llabs(i - j), 0};
    case LinkKind::T_asym: return {i - j, 0};
    case LinkKind::H_sym: return {i + j, 0};
    case LinkKind::H_asym: return {(i >= j) ? (i + j) : -(i + j), 0};
    case LinkKind::R_sym: return {mod_n(i + j - 2, n), 0};
    case LinkKind::R_asym: {
      long long m = mod_n(i + j - 2, n);
      return {(i <= j) ? m : -m, 0};
    }
    case LinkKind::C_sym: {
      // doubled so n/2 - |n/2 - d| stays integral for odd n
      long long d = mod_n(std::llabs(i - j), n);
      return {n - std::llabs(n - 2 * d), 0};
    }
    case LinkKind::C_asym: return {mod_n(j - i, n), 0};
  }
  throw std::logic_error("unreachable");
}

// (row, col) of the cell visited at 1-based position t.
inline void position_cell(const Circuit& c, int t, long long& row, long long& col) {
  if (t % 2 == 1) {
    row = c.pi[t - 1];
    col = c.pi[t];
  } else {
    row = c.pi[t];
    col = c.pi[t - 1];
  }
}

}  // namespace

LValue xi(LinkKind link, const Circuit& c, int position) {
  if (position < 1 || position > c.length())
    throw std::invalid_argument("xi position out of range");
  long long row, col;
  position_cell(c, position, row, col);
  return link_value(link, row, col, c.n);
}

Word word_of_circuit(LinkKind link, const Circuit& c) {
  c.validate();
  int twok = c.length();
  std::vector<LValue> seen;
  std::vector<int> ids;
  ids.reserve(twok);
  for (int t = 1; t <= twok; ++t) {
    LValue v = xi(link, c, t);
    int id = -1;
    for (size_t s = 0; s < seen.size(); ++s)
      if (seen[s] == v) {
        id = int(s);
        break;
      }
    if (id < 0) {
      id = int(seen.size());
      seen.push_back(v);
    }
    ids.push_back(id);
  }
  return Word::canonicalize_ids(ids);
}

namespace {

struct Counter {
  LinkKind link;
  const Word& w;
  long long p, n;
  int twok;
  std::vector<int> first_pos;        // per letter, 1-based
  std::vector<long long> pi;         // 0..2k
  std::vector<LValue> letter_val;    // per letter
  unsigned long long budget;
  Count total = 0;

  Counter(LinkKind link_, const Word& w_, long long p_, long long n_, unsigned long long budget_)
      : link(link_), w(w_), p(p_), n(n_), twok(int(w_.size())), budget(budget_) {
    first_pos.assign(w.distinct(), 0);
    for (int t = 1; t <= twok; ++t) {
      int l = w.at(t) - 1;
      if (first_pos[l] == 0) first_pos[l] = t;
    }
    pi.assign(twok + 1, 0);
    letter_val.assign(w.distinct(), LValue{});
  }

  void spend() {
    if (budget == 0) throw std::runtime_error("count_circuits: node budget exceeded");
    --budget;
  }

  LValue value_at(int t) const {
    long long row, col;
    if (t % 2 == 1) {
      row = pi[t - 1];
      col = pi[t];
    } else {
      row = pi[t];
      col = pi[t - 1];
    }
    return link_value(link, row, col, n);
  }

  // Candidate pi(t) values compatible with target LValue, given pi(t-1).
  // Every candidate is re-verified through value_at, so the solver only has to
  // be complete, not exact.
  void candidates(int t, const LValue& target, std::vector<long long>& out) const {
    out.clear();
    long long prev = pi[t - 1];
    long long lim = (t % 2 == 0) ? p : n;
    auto push = [&](long long v) {
      if (v >= 1 && v <= lim) out.push_back(v);
    };
    switch (link) {
      case LinkKind::S:
        if (t % 2 == 1) {
          if (prev == target.a) push(target.b);
        } else {
          if (prev == target.b) push(target.a);
        }
        break;
      case LinkKind::T_sym:
        push(prev - target.a);
        if (target.a != 0) push(prev + target.a);
        break;
      case LinkKind::T_asym:
        push(t % 2 == 1 ? prev - target.a : prev + target.a);
        break;
      case LinkKind::H_sym:
      case LinkKind::H_asym:
        push(std::llabs(target.a) - prev);
        break;
      case LinkKind::R_sym:
      case LinkKind::R_asym: {
        long long c = mod_n(std::llabs(target.a) + 2 - prev, n);
        if (c == 0) c = n;
        for (long long v = c; v <= lim; v += n) push(v);
        break;
      }
      case LinkKind::C_asym: {
        long long c = mod_n(t % 2 == 1 ? prev + target.a : prev - target.a, n);
        if (c == 0) c = n;
        for (long long v = c; v <= lim; v += n) push(v);
        break;
      }
      case LinkKind::C_sym: {
        long long d = target.a / 2;  // target.a = n - |n - 2d| is even
        long long c1 = mod_n(prev + d, n);
        long long c2 = mod_n(prev - d, n);
        if (c1 == 0) c1 = n;
        if (c2 == 0) c2 = n;
        for (long long v = c1; v <= lim; v += n) push(v);
        if (c2 != c1)
          for (long long v = c2; v <= lim; v += n) push(v);
        break;
      }
    }
  }

  void run() {
    for (long long v0 = 1; v0 <= p; ++v0) {
      spend();
      pi[0] = v0;
      descend(1);
    }
  }

  void descend(int t) {
    if (t > twok) {
      ++total;
      return;
    }
    int letter = w.at(t) - 1;
    bool first = (first_pos[letter] == t);
    long long lim = (t % 2 == 0) ? p : n;
    if (first) {
      if (t == twok) {
        // unmatched trailing letter: pinned by the circuit condition
        spend();
        pi[t] = pi[0];
        letter_val[letter] = value_at(t);
        descend(t + 1);
        return;
      }
      for (long long v = 1; v <= lim; ++v) {
        spend();
        pi[t] = v;
        letter_val[letter] = value_at(t);
        descend(t + 1);
      }
    } else {
      std::vector<long long> cand;
      candidates(t, letter_val[letter], cand);
      for (long long v : cand) {
        spend();
        if (t == twok && v != pi[0]) continue;
        pi[t] = v;
        if (!(value_at(t) == letter_val[letter])) continue;
        descend(t + 1);
      }
    }
  }
};

}  // namespace

Count count_circuits(LinkKind link, const Word& w, long long p, long long n,
                     const CountOptions& opt) {
  if (w.size() % 2 != 0) throw std::invalid_argument("word length must be even");
  if (p < 1 || n < 1) throw std::invalid_argument("dimensions must be positive");
  Counter c(link, w, p, n, opt.max_nodes);
  c.run();
  return c.total;
}

double ratio_denominator(const Word& w, long long p, long long n) {
  auto prof = generating_profile(w);
  double d = 1.0;
  for (int i = 0; i < prof.even_gen; ++i) d *= double(p);
  for (int i = 0; i < prof.odd_gen; ++i) d *= double(n);
  return d;
}

std::vector<FiniteRatioPoint> finite_ratio(LinkKind link, const Word& w, const Rational& y,
                                           const std::vector<long long>& n_grid,
                                           const CountOptions& opt) {
  if (!(Rational(0) < y)) throw std::invalid_argument("aspect ratio y must be positive");
  std::vector<FiniteRatioPoint> out;
  for (long long n : n_grid) {
    FiniteRatioPoint pt;
    pt.n = n;
    pt.p = (y.num * n + y.den / 2) / y.den;
    if (pt.p < 1) pt.p = 1;
    pt.count = count_circuits(link, w, pt.p, n, opt);
    pt.ratio = count_double(pt.count) / ratio_denominator(w, pt.p, n);
    out.push_back(pt);
  }
  return out;
}

}  // namespace rmt

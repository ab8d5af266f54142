#include "rmt/forms.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace rmt {

namespace {

bool is_difference_link(LinkKind k) {
  return k == LinkKind::T_sym || k == LinkKind::T_asym || k == LinkKind::C_sym ||
         k == LinkKind::C_asym;
}

bool has_free_signs(LinkKind k) { return k == LinkKind::T_sym || k == LinkKind::C_sym; }

std::vector<int> add(const std::vector<int>& a, const std::vector<int>& b, int s) {
  std::vector<int> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + s * b[i];
  return r;
}

}  // namespace

FormSystem build_forms(LinkKind link, const Word& w, const SignChoice& choice) {
  if (!link_is_patterned(link)) throw std::invalid_argument("forms are for patterned links");
  FormSystem fs;
  fs.link = link;
  fs.twok = int(w.size());
  fs.b = w.distinct();
  fs.word = w.letters();
  if (fs.twok % 2 != 0) throw std::invalid_argument("word length must be even");

  fs.first_pos.assign(fs.b, 0);
  fs.block_size.assign(fs.b, 0);
  for (int t = 1; t <= fs.twok; ++t) {
    int l = w.at(t) - 1;
    fs.block_size[l]++;
    if (fs.first_pos[l] == 0) fs.first_pos[l] = t;
  }

  fs.var_is_even.assign(fs.b + 1, false);
  fs.var_is_even[0] = true;
  for (int l = 0; l < fs.b; ++l) fs.var_is_even[l + 1] = (fs.first_pos[l] % 2 == 0);

  const bool diff = is_difference_link(link);
  const bool free_signs = has_free_signs(link);
  if (free_signs && int(choice.signs.size()) != fs.twok)
    throw std::invalid_argument("sign choice must cover every position");

  auto sign_at = [&](int t, int l) -> int {
    if (!diff) return 0;  // sum links carry no sign
    if (free_signs) {
      int s = choice.signs[t - 1];
      if (s != 1 && s != -1) throw std::invalid_argument("signs must be +1 or -1");
      return s;
    }
    // parity-forced: same parity as the first occurrence keeps the sign
    return ((t % 2) == (fs.first_pos[l] % 2)) ? 1 : -1;
  };

  int nvars = fs.b + 1;
  auto basis = [&](int v) {
    std::vector<int> e(nvars, 0);
    e[v] = 1;
    return e;
  };

  fs.coeff.assign(fs.twok + 1, {});
  fs.coeff[0] = basis(0);
  std::vector<std::vector<int>> link_comb(fs.b);  // sigma_j (difference) or tau_j (sum)

  std::vector<int> balance(fs.b, 0);
  for (int t = 1; t <= fs.twok; ++t) {
    int l = w.at(t) - 1;
    if (fs.first_pos[l] == t) {
      if (free_signs && choice.signs[t - 1] != 1)
        throw std::invalid_argument("first occurrence must carry sign +1");
      fs.coeff[t] = basis(l + 1);
      link_comb[l] = diff ? add(fs.coeff[t], fs.coeff[t - 1], -1)
                          : add(fs.coeff[t], fs.coeff[t - 1], +1);
      if (diff) balance[l] += 1;
    } else {
      if (diff) {
        int s = sign_at(t, l);
        balance[l] += s;
        fs.coeff[t] = add(fs.coeff[t - 1], link_comb[l], s);
      } else {
        fs.coeff[t] = add(link_comb[l], fs.coeff[t - 1], -1);
      }
      fs.nongen.push_back(t);
      if (t % 2 == 0 && t != fs.twok) fs.s_minus.push_back(t);
    }
  }

  if (free_signs) {
    for (int l = 0; l < fs.b; ++l)
      if (balance[l] != 0)
        throw std::invalid_argument("unbalanced sign choice for letter " + std::to_string(l + 1));
  }

  fs.closed = (fs.coeff[fs.twok] == fs.coeff[0]);
  return fs;
}

std::vector<SignChoice> sign_choices(LinkKind link, const Word& w, long long cap) {
  int twok = int(w.size());
  if (!has_free_signs(link)) {
    SignChoice c;
    if (is_difference_link(link)) {
      // parity-forced single pattern, materialized for inspection
      std::vector<int> first(w.distinct(), 0);
      c.signs.assign(twok, 1);
      for (int t = 1; t <= twok; ++t) {
        int l = w.at(t) - 1;
        if (first[l] == 0) first[l] = t;
        c.signs[t - 1] = ((t % 2) == (first[l] % 2)) ? 1 : -1;
      }
    }
    return {c};
  }

  // balanced patterns per block
  std::vector<std::vector<int>> pos(w.distinct());
  for (int t = 1; t <= twok; ++t) pos[w.at(t) - 1].push_back(t);
  long long total = 1;
  for (auto& ps : pos) {
    if (ps.size() % 2 != 0)
      throw std::invalid_argument("balanced signs need even block sizes");
    long long ways = (long long)count_double(binomial(int(ps.size()) - 1, int(ps.size()) / 2));
    total *= ways;
    if (total > cap)
      throw std::invalid_argument("sign-choice count exceeds cap " + std::to_string(cap));
  }

  std::vector<SignChoice> out;
  SignChoice cur;
  cur.signs.assign(twok, 1);
  // depth-first over blocks, choosing which non-first occurrences are minus
  std::function<void(size_t)> rec = [&](size_t letter) {
    if (letter == pos.size()) {
      out.push_back(cur);
      return;
    }
    const auto& ps = pos[letter];
    int m = int(ps.size());
    int need = m / 2;  // minus signs among the m-1 non-first occurrences
    std::vector<int> idx(need);
    std::function<void(int, int)> pick = [&](int start, int chosen) {
      if (chosen == need) {
        for (int i : idx) cur.signs[ps[i] - 1] = -1;
        rec(letter + 1);
        for (int i : idx) cur.signs[ps[i] - 1] = 1;
        return;
      }
      for (int i = start; i < m; ++i) {
        idx[chosen] = i;
        pick(i + 1, chosen + 1);
      }
    };
    pick(1, 0);
  };
  rec(0);
  return out;
}

std::vector<LinearForm> build_linear_forms(LinkKind link, const Word& w, const SignChoice& choice) {
  FormSystem fs = build_forms(link, w, choice);
  std::vector<LinearForm> out;
  for (int t : fs.nongen) {
    LinearForm f;
    f.position = t;
    f.coeff = fs.coeff[t];
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace rmt

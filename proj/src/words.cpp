#include "rmt/words.hpp"

#include <algorithm>
#include <stdexcept>

namespace rmt {

std::string count_str(Count v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + int(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

double count_double(Count v) {
  double r = 0;
  double scale = 1;
  while (v > 0) {
    r += scale * double(static_cast<unsigned long long>(v & 0xffffffffULL));
    v >>= 32;
    scale *= 4294967296.0;
  }
  return r;
}

Word::Word(std::vector<uint8_t> rg) : letters_(std::move(rg)) {
  if (letters_.empty()) throw std::invalid_argument("empty word");
  uint8_t mx = 0;
  for (size_t i = 0; i < letters_.size(); ++i) {
    if (letters_[i] < 1 || letters_[i] > mx + 1)
      throw std::invalid_argument("word is not in restricted-growth form");
    mx = std::max(mx, letters_[i]);
  }
}

Word Word::parse(std::string_view symbols) {
  std::vector<int> ids(symbols.begin(), symbols.end());
  return canonicalize_ids(ids);
}

Word Word::canonicalize_ids(const std::vector<int>& ids) {
  if (ids.empty()) throw std::invalid_argument("empty symbol sequence");
  std::map<int, uint8_t> relabel;
  std::vector<uint8_t> out;
  out.reserve(ids.size());
  uint8_t next = 1;
  for (int s : ids) {
    auto it = relabel.find(s);
    if (it == relabel.end()) {
      if (next == 255) throw std::invalid_argument("too many distinct symbols");
      it = relabel.emplace(s, next++).first;
    }
    out.push_back(it->second);
  }
  return Word(std::move(out));
}

int Word::distinct() const {
  uint8_t mx = 0;
  for (uint8_t l : letters_) mx = std::max(mx, l);
  return mx;
}

std::string Word::str() const {
  std::string s;
  for (uint8_t l : letters_) {
    if (l <= 26) {
      s.push_back(static_cast<char>('a' + l - 1));
    } else {
      s += "<" + std::to_string(int(l)) + ">";
    }
  }
  return s;
}

namespace {

std::vector<std::vector<int>> positions_by_letter(const Word& w) {
  std::vector<std::vector<int>> pos(w.distinct());
  for (size_t i = 0; i < w.size(); ++i) pos[w[i] - 1].push_back(int(i) + 1);
  return pos;
}

// Stack test: a partition is non-crossing iff every non-first occurrence of a
// letter happens while that letter is on top of the open-block stack.
bool noncrossing(const Word& w, const std::vector<std::vector<int>>& pos) {
  std::vector<int> last(w.distinct());
  for (int l = 0; l < w.distinct(); ++l) last[l] = pos[l].back();
  std::vector<uint8_t> stack;
  std::vector<bool> seen(w.distinct() + 1, false);
  for (size_t i = 0; i < w.size(); ++i) {
    uint8_t l = w[i];
    int p = int(i) + 1;
    if (!seen[l]) {
      seen[l] = true;
      if (p == last[l - 1]) continue;  // singleton block
      stack.push_back(l);
    } else {
      if (stack.empty() || stack.back() != l) return false;
      if (p == last[l - 1]) stack.pop_back();
    }
  }
  return true;
}

}  // namespace

bool word_noncrossing(const Word& w) {
  return noncrossing(w, positions_by_letter(w));
}

WordClass classify(const Word& w) {
  WordClass c;
  int b = w.distinct();
  auto pos = positions_by_letter(w);

  c.matched = true;
  c.pair_matched = true;
  c.even = true;
  c.symmetric = true;
  for (int l = 0; l < b; ++l) {
    size_t m = pos[l].size();
    if (m < 2) c.matched = false;
    if (m != 2) c.pair_matched = false;
    if (m % 2 != 0) c.even = false;
    int odd = 0;
    for (int p : pos[l])
      if (p % 2 == 1) ++odd;
    if (odd * 2 != int(m)) c.symmetric = false;
  }
  c.even_blocks = c.even;

  // Special symmetry: even word, and between successive occurrences of any
  // letter every other letter appears an even number of times. Parity prefix
  // sums make each gap check O(b).
  c.special_symmetric = c.even && b <= 64;
  if (c.special_symmetric) {
    size_t m = w.size();
    std::vector<uint64_t> parity(m + 1, 0);  // bit l-1 = parity of count of letter l in w[1..i]
    for (size_t i = 1; i <= m; ++i) parity[i] = parity[i - 1] ^ (1ull << (w.at(i) - 1));
    for (int l = 0; l < b && c.special_symmetric; ++l) {
      const auto& ps = pos[l];
      for (size_t t = 0; t + 1 < ps.size(); ++t) {
        uint64_t gap = parity[ps[t + 1] - 1] ^ parity[ps[t]];
        if ((gap & ~(1ull << l)) != 0) {
          c.special_symmetric = false;
          break;
        }
      }
    }
  }

  c.noncrossing_pair = c.pair_matched && noncrossing(w, pos);
  return c;
}

GeneratingProfile generating_profile(const Word& w) {
  GeneratingProfile g;
  g.length_m = int(w.size());
  g.b = w.distinct();
  g.block_sizes.assign(g.b, 0);
  std::vector<bool> seen(g.b + 1, false);
  for (size_t i = 1; i <= w.size(); ++i) {
    uint8_t l = w.at(i);
    g.block_sizes[l - 1]++;
    if (!seen[l]) {
      seen[l] = true;
      g.first_positions.push_back(int(i));
    }
  }
  g.even_gen = 1;  // pi(0)
  for (int p : g.first_positions)
    if (p % 2 == 0) g.even_gen++;
  g.odd_gen = g.b + 1 - g.even_gen;
  return g;
}

WordEnumerator::WordEnumerator(int m, int cap) : m_(m) {
  if (m < 1) throw std::invalid_argument("word length must be positive");
  if (m > cap)
    throw std::invalid_argument("enumeration length " + std::to_string(m) +
                                " exceeds cap " + std::to_string(cap));
  a_.assign(m, 1);
  mx_.assign(m, 1);
}

std::optional<Word> WordEnumerator::next() {
  if (done_) return std::nullopt;
  if (first_) {
    first_ = false;
    return Word(a_);
  }
  for (int i = m_ - 1; i >= 1; --i) {
    if (a_[i] <= mx_[i - 1]) {
      a_[i]++;
      mx_[i] = std::max(mx_[i - 1], a_[i]);
      for (int j = i + 1; j < m_; ++j) {
        a_[j] = 1;
        mx_[j] = mx_[j - 1];
      }
      return Word(a_);
    }
  }
  done_ = true;
  return std::nullopt;
}

void for_each_word(int m, const std::function<bool(const Word&)>& fn, int cap) {
  WordEnumerator en(m, cap);
  while (auto w = en.next()) {
    if (!fn(*w)) return;
  }
}

std::vector<Word> enumerate_words(int m, const WordPredicate& filter, int cap) {
  std::vector<Word> out;
  for_each_word(m, [&](const Word& w) {
    if (!filter || filter(classify(w))) out.push_back(w);
    return true;
  }, cap);
  return out;
}

Count count_words(int m, const WordPredicate& filter, int cap) {
  Count c = 0;
  for_each_word(m, [&](const Word& w) {
    if (!filter || filter(classify(w))) ++c;
    return true;
  }, cap);
  return c;
}

Count binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  Count r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * Count(n - k + i) / Count(i);
  }
  return r;
}

Count factorial(int n) {
  if (n < 0) throw std::invalid_argument("negative factorial");
  if (n > 33) throw std::overflow_error("factorial exceeds 128 bits");
  Count r = 1;
  for (int i = 2; i <= n; ++i) r *= Count(i);
  return r;
}

Count catalan(int k) { return binomial(2 * k, k) / Count(k + 1); }

Count bell(int m) {
  // Bell triangle
  std::vector<Count> row{1};
  for (int i = 1; i < m; ++i) {
    std::vector<Count> nrow(row.size() + 1);
    nrow[0] = row.back();
    for (size_t j = 0; j < row.size(); ++j) nrow[j + 1] = nrow[j] + row[j];
    row = std::move(nrow);
  }
  return row.back();
}

Count narayana(int k, int r) {
  if (k < 1) throw std::invalid_argument("narayana order must be positive");
  if (r < 0 || r > k - 1)
    throw std::invalid_argument("narayana index r=" + std::to_string(r) +
                                " outside [0," + std::to_string(k - 1) + "]");
  return binomial(k, r) * binomial(k - 1, r) / Count(r + 1);
}

CumulantSequence CumulantSequence::constant(double lambda) {
  CumulantSequence c;
  c.constant_ = true;
  c.lambda_ = lambda;
  return c;
}

CumulantSequence CumulantSequence::from_map(std::map<int, double> values,
                                            bool undefined_even_is_zero) {
  CumulantSequence c;
  c.values_ = std::move(values);
  c.zero_default_ = undefined_even_is_zero;
  return c;
}

CumulantSequence CumulantSequence::pair_only(double c2) {
  return from_map({{2, c2}}, true);
}

double CumulantSequence::at(int order) const {
  if (order < 1) throw std::invalid_argument("cumulant order must be positive");
  if (constant_) return lambda_;
  auto it = values_.find(order);
  if (it != values_.end()) return it->second;
  if (order % 2 == 1 || zero_default_) return 0.0;
  throw std::out_of_range("cumulant of order " + std::to_string(order) + " undefined");
}

double multiplicative_extension(const CumulantSequence& c, const Word& w) {
  auto prof = generating_profile(w);
  double r = 1.0;
  for (int sz : prof.block_sizes) r *= c.at(sz);
  return r;
}

namespace {

std::vector<Count> block_counts(int m, bool require_noncrossing, int cap) {
  std::vector<Count> counts(m + 1, 0);
  if (m % 2 != 0) return counts;
  for_each_word(m, [&](const Word& w) {
    auto c = classify(w);
    if (!c.even) return true;
    if (require_noncrossing) {
      auto pos = positions_by_letter(w);
      if (!noncrossing(w, pos)) return true;
    }
    counts[w.distinct()]++;
    return true;
  }, cap);
  return counts;
}

double eval_block_poly(const std::vector<Count>& counts, double gamma) {
  double r = 0;
  double g = 1;
  for (size_t b = 1; b < counts.size(); ++b) {
    g *= gamma;
    if (counts[b] != 0) r += count_double(counts[b]) * g;
  }
  return r;
}

}  // namespace

std::vector<Count> nce_block_counts(int m, int cap) { return block_counts(m, true, cap); }
std::vector<Count> e_block_counts(int m, int cap) { return block_counts(m, false, cap); }

double q1_moment(double gamma, int m, int cap) {
  if (gamma < 0) throw std::invalid_argument("gamma must be nonnegative");
  if (m % 2 != 0) return 0.0;
  return eval_block_poly(nce_block_counts(m, cap), gamma);
}

double q2_moment(double gamma, int m, int cap) {
  if (gamma < 0) throw std::invalid_argument("gamma must be nonnegative");
  if (m % 2 != 0) return 0.0;
  return eval_block_poly(e_block_counts(m, cap), gamma);
}

namespace {

int nblocks(const std::vector<uint8_t>& rg) {
  uint8_t mx = 0;
  for (uint8_t v : rg) mx = std::max(mx, v);
  return mx;
}

struct DSU {
  std::vector<int> parent;
  explicit DSU(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  // returns false if already connected (i.e. the union would close a cycle)
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

// Hyperedges of H(sigma, tau): one per block of tau, as the set of sigma-blocks
// adjacent through the alternating circuit structure.
bool hypergraph_acyclic(const std::vector<uint8_t>& sigma, const std::vector<uint8_t>& tau) {
  int k = int(sigma.size());
  int ns = nblocks(sigma), nt = nblocks(tau);
  std::vector<std::vector<int>> edge(nt);
  for (int i = 1; i <= k; ++i) {
    int w = tau[i - 1] - 1;
    int left = (i == 1) ? k : i - 1;  // even slot i-1, slot 0 == slot k
    int ja = sigma[left - 1] - 1;
    int jb = sigma[i - 1] - 1;
    edge[w].push_back(ja);
    edge[w].push_back(jb);
  }
  for (auto& e : edge) {
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
  }
  // pairwise intersection <= 1 vertex
  for (int a = 0; a < nt; ++a)
    for (int b = a + 1; b < nt; ++b) {
      int common = 0;
      for (int va : edge[a])
        if (std::binary_search(edge[b].begin(), edge[b].end(), va)) ++common;
      if (common >= 2) return false;
    }
  // incidence forest
  DSU dsu(ns + nt);
  for (int w = 0; w < nt; ++w)
    for (int j : edge[w])
      if (!dsu.unite(j, ns + w)) return false;
  return true;
}

}  // namespace

std::vector<PartitionPair> enumerate_acyclic_hypergraphs(int k, int b, int cap) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (k > cap) throw std::invalid_argument("k exceeds cap");
  std::vector<PartitionPair> out;
  WordEnumerator es(k, cap);
  while (auto ws = es.next()) {
    int nb_s = ws->distinct();
    if (nb_s > b) continue;
    WordEnumerator et(k, cap);
    while (auto wt = et.next()) {
      if (nb_s + wt->distinct() != b + 1) continue;
      if (hypergraph_acyclic(ws->letters(), wt->letters()))
        out.push_back({ws->letters(), wt->letters()});
    }
  }
  return out;
}

Count count_acyclic_hypergraphs(int k, int b, int cap) {
  return Count(enumerate_acyclic_hypergraphs(k, b, cap).size());
}

Count count_ss_words(int m, int b, int cap) {
  Count c = 0;
  for_each_word(m, [&](const Word& w) {
    if (w.distinct() == b && classify(w).special_symmetric) ++c;
    return true;
  }, cap);
  return c;
}

Count count_ss_profile(int m, int a, int l, std::vector<int> block_sizes, int cap) {
  if (m % 2 != 0) throw std::invalid_argument("word length must be even");
  int total = 0;
  for (int sz : block_sizes) {
    if (sz < 2) throw std::invalid_argument("block sizes must be at least 2");
    total += sz;
  }
  if (total != m || int(block_sizes.size()) != a)
    throw std::invalid_argument("inconsistent block-size profile");
  std::sort(block_sizes.begin(), block_sizes.end());
  Count c = 0;
  for_each_word(m, [&](const Word& w) {
    if (w.distinct() != a) return true;
    if (!classify(w).special_symmetric) return true;
    auto prof = generating_profile(w);
    if (prof.odd_gen != l) return true;
    auto sizes = prof.block_sizes;
    std::sort(sizes.begin(), sizes.end());
    if (sizes == block_sizes) ++c;
    return true;
  }, cap);
  return c;
}

}  // namespace rmt

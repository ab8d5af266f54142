#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rmt {

// Exact counts. Bell/Catalan growth overflows 64 bits before the enumeration
// caps do, so counts are carried in 128 bits; no floating point in this module.
using Count = unsigned __int128;

std::string count_str(Count v);
double count_double(Count v);

inline constexpr int kWordCap = 12;  // Bell(12) ~ 4.2M

// A set partition of [m] as a word in restricted-growth form: letters are
// 1..b, the first occurrence of letter j precedes the first occurrence of
// letter j+1.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<uint8_t> rg);

  // Relabels an arbitrary symbol sequence by first occurrence ("bacab" -> 12321).
  static Word parse(std::string_view symbols);
  template <typename Seq>
  static Word canonicalize(const Seq& seq) {
    std::vector<int> ids(seq.begin(), seq.end());
    return canonicalize_ids(ids);
  }
  static Word canonicalize_ids(const std::vector<int>& ids);

  size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  uint8_t at(size_t pos1) const { return letters_[pos1 - 1]; }  // 1-based position
  uint8_t operator[](size_t i0) const { return letters_[i0]; }  // 0-based
  int distinct() const;
  const std::vector<uint8_t>& letters() const { return letters_; }

  std::string str() const;  // "abba" (letters beyond 'z' render as <27> etc.)

  bool operator==(const Word& o) const { return letters_ == o.letters_; }
  bool operator!=(const Word& o) const { return letters_ != o.letters_; }
  bool operator<(const Word& o) const { return letters_ < o.letters_; }

 private:
  std::vector<uint8_t> letters_;
};

struct WordClass {
  bool matched = false;           // every letter appears >= 2 times
  bool pair_matched = false;      // every letter appears exactly twice
  bool even = false;              // every letter has even multiplicity
  bool symmetric = false;         // equal counts in odd and even positions per letter
  bool special_symmetric = false; // between successive occurrences of any letter,
                                  // every other letter appears an even number of times
  bool noncrossing_pair = false;  // pair-matched and non-crossing
  bool even_blocks = false;       // all block sizes even (same predicate as `even`)
};

WordClass classify(const Word& w);

// Non-crossing as a set partition (any block sizes): no a < b < c < d with
// a, c in one block and b, d in another.
bool word_noncrossing(const Word& w);

// Per-word record of generating-vertex structure. Positions are 1-based;
// vertex pi(0) is always generating and counts as even.
struct GeneratingProfile {
  int length_m = 0;
  int b = 0;                        // distinct letters
  std::vector<int> first_positions; // i_1..i_b
  int even_gen = 0;                 // r+1: pi(0) plus first occurrences at even positions
  int odd_gen = 0;                  // b-r
  std::vector<int> block_sizes;     // k_1..k_b in first-occurrence order
};

GeneratingProfile generating_profile(const Word& w);

// Lazy enumeration of all restricted-growth words of length m.
class WordEnumerator {
 public:
  explicit WordEnumerator(int m, int cap = kWordCap);
  std::optional<Word> next();

 private:
  int m_ = 0;
  bool first_ = true;
  bool done_ = false;
  std::vector<uint8_t> a_, mx_;
};

using WordPredicate = std::function<bool(const WordClass&)>;

// fn returns false to stop early.
void for_each_word(int m, const std::function<bool(const Word&)>& fn, int cap = kWordCap);
std::vector<Word> enumerate_words(int m, const WordPredicate& filter = {}, int cap = kWordCap);
Count count_words(int m, const WordPredicate& filter = {}, int cap = kWordCap);

Count binomial(int n, int k);
Count factorial(int n);
Count catalan(int k);
Count bell(int m);

// (1/(r+1)) C(k,r) C(k-1,r), exact.
Count narayana(int k, int r);

// Moment data of matrix entries: either one constant for every order, or a
// map from order to value. Odd orders absent from the map are implicitly
// zero; absent even orders throw unless the sequence was built with
// undefined_even_is_zero.
class CumulantSequence {
 public:
  static CumulantSequence constant(double lambda);
  static CumulantSequence from_map(std::map<int, double> values,
                                   bool undefined_even_is_zero = false);
  // C_2 = c2, every other even order 0.
  static CumulantSequence pair_only(double c2);

  double at(int order) const;  // throws naming the order if undefined
  bool is_constant() const { return constant_; }
  double constant_value() const { return lambda_; }

 private:
  bool constant_ = false;
  bool zero_default_ = false;
  double lambda_ = 0.0;
  std::map<int, double> values_;
};

// Product of c_{|V|} over the blocks V of w.
double multiplicative_extension(const CumulantSequence& c, const Word& w);

// Moments of the symmetrized free Poisson / Poisson variables:
//   q1(gamma, m) = sum over non-crossing even partitions of [m] of gamma^{#blocks}
//   q2(gamma, m) = sum over even partitions of [m] of gamma^{#blocks}
// Zero for odd m. Counts are exact; evaluation is a polynomial in gamma.
double q1_moment(double gamma, int m, int cap = kWordCap);
double q2_moment(double gamma, int m, int cap = kWordCap);
// coefficient vectors: index = #blocks, value = exact count
std::vector<Count> nce_block_counts(int m, int cap = kWordCap);
std::vector<Count> e_block_counts(int m, int cap = kWordCap);

// A pair of partitions of [k] (restricted-growth vectors) whose block-edge
// hypergraph has no cycle.
struct PartitionPair {
  std::vector<uint8_t> sigma;
  std::vector<uint8_t> tau;
};

// All pairs (sigma, tau) with |sigma|+|tau| = b+1 whose hypergraph is acyclic:
// vertices are blocks of sigma (even circuit slots), one hyperedge per block of
// tau (odd circuit slots), incidences odd slot i <-> even slots i-1 and i
// (slot 0 identified with slot k). Acyclic = no two edges share 2+ vertices and
// the vertex-edge incidence graph is a forest.
std::vector<PartitionPair> enumerate_acyclic_hypergraphs(int k, int b, int cap = kWordCap);
Count count_acyclic_hypergraphs(int k, int b, int cap = kWordCap);

// |SS_b(m)| and the refined profile count: special symmetric words of length m
// with `a` letters, `l` odd generating vertices and the given block-size multiset.
Count count_ss_words(int m, int b, int cap = kWordCap);
Count count_ss_profile(int m, int a, int l, std::vector<int> block_sizes, int cap = kWordCap);

}  // namespace rmt

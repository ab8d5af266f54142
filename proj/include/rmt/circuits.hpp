#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rmt/rational.hpp"
#include "rmt/words.hpp"

namespace rmt {

// The sample-covariance link plus the eight patterned links (symmetric and
// asymmetric reverse circulant, circulant, Toeplitz, Hankel).
enum class LinkKind { S, T_sym, T_asym, H_sym, H_asym, R_sym, R_asym, C_sym, C_asym };

LinkKind link_from_string(const std::string& s);
std::string link_name(LinkKind k);
bool link_is_patterned(LinkKind k);

// Closed index path pi(0..2k): even slots are row indices (<= p), odd slots
// column indices (<= n), pi(0) = pi(2k).
struct Circuit {
  std::vector<long long> pi;
  long long p = 0;
  long long n = 0;

  int length() const { return int(pi.size()) - 1; }  // 2k
  void validate() const;
};

// Edge identifier at one circuit position. Equality of LValues is exactly the
// matching relation of the link: for S an ordered (row, col) pair, for the
// patterned links a single (possibly signed or mod-reduced) integer in `a`.
struct LValue {
  long long a = 0;
  long long b = 0;
  bool operator==(const LValue& o) const { return a == o.a && b == o.b; }
  bool operator!=(const LValue& o) const { return !(*this == o); }
};

// position is 1-based in 1..2k.
LValue xi(LinkKind link, const Circuit& c, int position);

// Canonical word whose letters mark positions with equal LValues.
Word word_of_circuit(LinkKind link, const Circuit& c);

struct CountOptions {
  unsigned long long max_nodes = 4'000'000'000ULL;  // search-tree budget
};

// Exact |Pi_link(w)| at finite (p, n): the number of circuits compatible with
// w's matching pattern (positions sharing a letter carry equal L-values; the
// word of such a circuit refines w). This is the count the free-generating-
// vertex law p^{r+1} n^{b-r} describes. Depth-first assignment with forced
// propagation of non-generating vertices; throws if the node budget is
// exceeded.
Count count_circuits(LinkKind link, const Word& w, long long p, long long n,
                     const CountOptions& opt = {});

struct FiniteRatioPoint {
  long long n = 0;
  long long p = 0;
  Count count = 0;
  double ratio = 0;  // count / (p^{r+1} n^{b-r})
};

// Ratio sequence along a dimension grid with p = round(y*n).
std::vector<FiniteRatioPoint> finite_ratio(LinkKind link, const Word& w, const Rational& y,
                                           const std::vector<long long>& n_grid,
                                           const CountOptions& opt = {});

double ratio_denominator(const Word& w, long long p, long long n);

}  // namespace rmt

#pragma once

#include <cstdint>
#include <vector>

#include "rmt/circuits.hpp"
#include "rmt/words.hpp"

namespace rmt {

// Per-occurrence sign (+1/-1) for the difference-type links. Signs are indexed
// by word position (1..2k); first occurrences are always +1. For the symmetric
// Toeplitz/circulant links every block must balance (# plus == # minus); for
// the asymmetric variants signs are forced by position parity.
struct SignChoice {
  std::vector<int8_t> signs;  // empty when the link has no sign freedom
};

// A non-generating vertex value as a linear combination of the generating
// variables, in column-index units: variable j enters with weight
// coeff[j] * scale_j where scale_j = y for even generating positions and 1 for
// odd ones. The constant term is always zero in the limit.
struct LinearForm {
  int position = 0;             // circuit slot 0..2k
  std::vector<int> coeff;       // size b+1, over generating variables
  double constant = 0.0;
};

// The full linear system of a (word, link, sign-choice): forms for every
// circuit slot, generating structure, and the position sets that drive the
// limit integrals.
struct FormSystem {
  LinkKind link = LinkKind::S;
  int twok = 0;
  int b = 0;
  std::vector<uint8_t> word;      // letters 1..b, one per position
  std::vector<int> first_pos;     // per letter, 1-based
  std::vector<int> block_size;    // per letter
  std::vector<bool> var_is_even;  // per generating variable 0..b
  std::vector<std::vector<int>> coeff;  // per slot 0..2k
  std::vector<int> nongen;        // non-generating positions in 1..2k
  std::vector<int> s_minus;       // even non-generating positions, excluding 2k
  bool closed = false;            // coeff[2k] == coeff[0]
};

// Builds the recurrence-generated forms. Throws on an inconsistent sign
// choice (unbalanced block, flipped first occurrence, wrong parity pattern).
FormSystem build_forms(LinkKind link, const Word& w, const SignChoice& choice);

// All admissible sign choices for a link/word: the balanced per-block patterns
// for T_sym/C_sym (prod C(k_i-1, k_i/2) of them, capped), the single
// parity-forced pattern for T_asym/C_asym, and a single empty choice for the
// Hankel/reverse-circulant links.
std::vector<SignChoice> sign_choices(LinkKind link, const Word& w, long long cap = 10000);

// Spec surface: one form per non-generating position.
std::vector<LinearForm> build_linear_forms(LinkKind link, const Word& w, const SignChoice& choice);

}  // namespace rmt

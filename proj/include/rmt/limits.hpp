#pragma once

#include <functional>
#include <map>
#include <string>

#include "rmt/forms.hpp"
#include "rmt/mc.hpp"
#include "rmt/rational.hpp"

namespace rmt {

struct LimitResult {
  double value = 0;
  double std_error = 0;
  uint64_t samples = 0;
  std::map<std::string, double> terms;
};

// f-provider for moment integrands: (order, scaled edge value) -> f_order(value).
// A null provider means f == 1 (pure volume).
using OrderFn = std::function<double(int order, double arg)>;

// lim |Pi_S(w)| / (p^{r+1} n^{b-r}): 1 for special symmetric words, else 0.
LimitResult s_link_limit(const Word& w, const Rational& y);

// lim |Pi_link(w)| / (p^{r+1} n^{b-r}) for the eight patterned links.
// Inadmissible words (not even for T_sym/C_sym, not symmetric otherwise)
// return exactly 0 with no sampling.
LimitResult evaluate_limit(LinkKind link, const Word& w, const Rational& y, const MCConfig& mc);

LimitResult toeplitz_sym_limit(const Word& w, const Rational& y, const MCConfig& mc);
LimitResult toeplitz_asym_limit(const Word& w, const Rational& y, const MCConfig& mc);
LimitResult hankel_sym_limit(const Word& w, const Rational& y, const MCConfig& mc);
LimitResult hankel_asym_limit(const Word& w, const Rational& y, const MCConfig& mc);
LimitResult revcirc_limit(const Word& w, const Rational& y, const MCConfig& mc, bool symmetric);
LimitResult circ_limit(const Word& w, const Rational& y, const MCConfig& mc, bool symmetric);

// Same T_sym limit through the difference-variable parameterization
// (x0 in [0,1], one step variable per letter over [-1,y] or [-y,1]); must agree
// with evaluate_limit(T_sym, ...). Internal consistency surface.
LimitResult toeplitz_sym_limit_u(const Word& w, const Rational& y, const MCConfig& mc);

// True when the word class survives the link's limit (even word for
// T_sym/C_sym, symmetric word for the others).
bool word_admissible(LinkKind link, const WordClass& cls);

namespace detail {

// Limit-or-moment value of one admissible word: sums the sign choices and
// runs the sample engine with the given f (null for the pure volume limit).
LimitResult pattern_word_value(LinkKind link, const Word& w, const Rational& y, const MCConfig& mc,
                               const OrderFn* f);

// Per-(word, link, sign-choice) sample evaluator shared by the limit and
// moment engines. The mod-n links wrap vertex values, so even non-generating
// vertices carry floor(y) branch copies plus a fractional-part extra branch;
// branches are enumerated exactly per sample.
class PatternWordEngine {
 public:
  PatternWordEngine(FormSystem fs, const Rational& y);

  int dim() const { return fs_.b + 1; }
  bool deterministic_without_f() const;
  double deterministic_value() const;
  double floor_term() const;  // floor(y)^{|S-|}
  const FormSystem& forms() const { return fs_; }

  // Branch-weighted integrand at one sample; f == nullptr means f == 1.
  double sample(const double* x, const OrderFn* f) const;

 private:
  double form_value(int t, const double* x) const;
  double letter_magnitude(int letter, const double* x) const;

  FormSystem fs_;
  double y_ = 1;
  long long floor_y_ = 1;
  double frac_y_ = 0;
  bool mod_link_ = false;     // R/C family wraps mod n
  bool signed_link_ = false;  // H_asym or R_asym carry sign-matching conditions
  std::vector<double> scaled_coeff_;    // (2k+1) x (b+1), row-major
  std::vector<int> letter_of_pos_;      // per position 1..2k (0-based index)
  std::vector<bool> is_generating_;     // per slot 0..2k
  std::vector<int> order_;              // block size per letter
};

}  // namespace detail

}  // namespace rmt

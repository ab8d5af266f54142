#pragma once

#include <functional>
#include <map>
#include <string>

#include "rmt/limits.hpp"
#include "rmt/rational.hpp"
#include "rmt/words.hpp"

namespace rmt {

using Sigma2 = std::function<double(double, double)>;
using Sigma1 = std::function<double(double)>;

// Moment data g_{2k}(x, y) of the entries of a rectangular matrix.
struct EntryModel {
  enum class Kind { MP, Cumulants, Sparse, Profile, General };
  Kind kind = Kind::MP;
  CumulantSequence cum = CumulantSequence::constant(0);
  Sigma2 sigma;             // Profile: g_{2k} = sigma^{2k} * C_{2k}
  std::map<int, Sigma2> g;  // General: explicit g per even order

  static EntryModel mp();
  static EntryModel cumulants(CumulantSequence c);
  static EntryModel sparse(double lambda);
  static EntryModel profile(Sigma2 s, CumulantSequence c);
  static EntryModel general(std::map<int, Sigma2> fns);

  bool order_constant(int order) const;
  double constant_value(int order) const;  // valid when order_constant
  double eval(int order, double a, double b) const;
};

// Moment data f_{2k} of a patterned matrix's input sequence plus the link.
struct PatternModel {
  LinkKind pattern = LinkKind::T_sym;
  CumulantSequence cum = CumulantSequence::constant(1);
  Sigma1 sigma;  // optional: f_{2k}(t) = sigma(t)^{2k} * C_{2k}
  Rational y = Rational(1);

  bool constant() const { return !sigma; }
  double f_eval(int order, double t) const;
};

struct MomentResult {
  int k = 0;
  double value = 0;
  double std_error = 0;
  std::map<std::string, double> word_breakdown;
};

// k-th Marchenko-Pastur moment: sum_r narayana(k, r) y^r, exact.
Rational mp_moment(int k, const Rational& y);

// k-th moment of the sample-covariance limit law under the entry model:
// sum over special symmetric words of y^r times the [0,1]^{b+1} integral of
// the g-product over the letters' generating-vertex pairs. Constant models
// evaluate in closed form.
MomentResult s_moment(int k, const Rational& y, const EntryModel& model, const MCConfig& mc);

// Free-Poisson / Poisson sandwich for the sparse model.
std::pair<double, double> sparse_bounds(int k, double y, double lambda);

// k-th moment of the patterned Gram limit law.
MomentResult sa_moment(int k, const PatternModel& model, const MCConfig& mc);

MomentResult variance_profile_s_moment(int k, const Rational& y, Sigma2 sigma,
                                       const CumulantSequence& c, const MCConfig& mc);

// ((mt)! / (t! (m!)^t)) *∫_0^1 f_2m(x)^t dx; grows without bound in t when
// f_2m is bounded away from zero, forcing unbounded support.
double unbounded_support_lowerbound(int m, int t, const Sigma1& f2m);

}  // namespace rmt

#include "rmt/moments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rmt {

EntryModel EntryModel::mp() {
  EntryModel m;
  m.kind = Kind::MP;
  return m;
}

EntryModel EntryModel::cumulants(CumulantSequence c) {
  EntryModel m;
  m.kind = Kind::Cumulants;
  m.cum = std::move(c);
  return m;
}

EntryModel EntryModel::sparse(double lambda) {
  EntryModel m;
  m.kind = Kind::Sparse;
  m.cum = CumulantSequence::constant(lambda);
  return m;
}

EntryModel EntryModel::profile(Sigma2 s, CumulantSequence c) {
  EntryModel m;
  m.kind = Kind::Profile;
  m.sigma = std::move(s);
  m.cum = std::move(c);
  return m;
}

EntryModel EntryModel::general(std::map<int, Sigma2> fns) {
  EntryModel m;
  m.kind = Kind::General;
  m.g = std::move(fns);
  return m;
}

bool EntryModel::order_constant(int order) const {
  switch (kind) {
    case Kind::MP:
    case Kind::Cumulants:
    case Kind::Sparse:
      return true;
    case Kind::Profile:
      return false;
    case Kind::General:
      return g.find(order) == g.end();  // missing orders are identically zero
  }
  return false;
}

double EntryModel::constant_value(int order) const {
  switch (kind) {
    case Kind::MP:
      return order == 2 ? 1.0 : 0.0;
    case Kind::Cumulants:
    case Kind::Sparse:
      return cum.at(order);
    case Kind::General:
      return 0.0;
    case Kind::Profile:
      break;
  }
  throw std::logic_error("constant_value on non-constant order");
}

double EntryModel::eval(int order, double a, double b) const {
  switch (kind) {
    case Kind::MP:
      return order == 2 ? 1.0 : 0.0;
    case Kind::Cumulants:
    case Kind::Sparse:
      return cum.at(order);
    case Kind::Profile:
      return std::pow(sigma(a, b), order) * cum.at(order);
    case Kind::General: {
      auto it = g.find(order);
      return it == g.end() ? 0.0 : it->second(a, b);
    }
  }
  return 0.0;
}

double PatternModel::f_eval(int order, double t) const {
  double base = cum.at(order);
  if (sigma) base *= std::pow(sigma(t), order);
  return base;
}

Rational mp_moment(int k, const Rational& y) {
  if (k < 1) throw std::invalid_argument("moment order must be positive");
  if (!(Rational(0) < y)) throw std::invalid_argument("aspect ratio y must be positive");
  Rational acc(0);
  for (int r = 0; r <= k - 1; ++r) {
    Count nk = narayana(k, r);
    if (nk > Count(INT64_MAX)) throw std::overflow_error("narayana value exceeds 64 bits");
    acc = acc + Rational((long long)nk) * y.pow(r);
  }
  return acc;
}

namespace {

struct DSU {
  std::vector<int> parent;
  explicit DSU(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// For a special symmetric word, every circuit slot is a copy of one of the
// b+1 generating vertices. Returns for each letter the generating-variable
// indices of its (row, col) first-occurrence cell, row-scale first.
struct SPairs {
  std::vector<int> row_var, col_var;  // per letter
};

SPairs s_link_pairs(const Word& w) {
  int twok = int(w.size());
  DSU dsu(twok + 1);
  dsu.unite(0, twok);
  std::vector<std::vector<int>> pos(w.distinct());
  for (int t = 1; t <= twok; ++t) pos[w.at(t) - 1].push_back(t);
  for (const auto& ps : pos)
    for (size_t a = 0; a + 1 < ps.size(); ++a) {
      int i = ps[a], j = ps[a + 1];
      if ((i % 2) == (j % 2)) {
        dsu.unite(i - 1, j - 1);
        dsu.unite(i, j);
      } else {
        dsu.unite(i - 1, j);
        dsu.unite(i, j - 1);
      }
    }
  std::vector<int> var_of_root(twok + 1, -1);
  var_of_root[dsu.find(0)] = 0;
  std::vector<int> first(w.distinct());
  for (int l = 0; l < w.distinct(); ++l) {
    first[l] = pos[l].front();
    var_of_root[dsu.find(first[l])] = l + 1;
  }
  for (int t = 0; t <= twok; ++t)
    if (var_of_root[dsu.find(t)] < 0)
      throw std::logic_error("free slot outside generating classes for word " + w.str());
  SPairs sp;
  for (int l = 0; l < w.distinct(); ++l) {
    int t = first[l];
    int row_slot = (t % 2 == 1) ? t - 1 : t;
    int col_slot = (t % 2 == 1) ? t : t - 1;
    sp.row_var.push_back(var_of_root[dsu.find(row_slot)]);
    sp.col_var.push_back(var_of_root[dsu.find(col_slot)]);
  }
  return sp;
}

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

MomentResult s_moment(int k, const Rational& y, const EntryModel& model, const MCConfig& mc) {
  if (k < 1) throw std::invalid_argument("moment order must be positive");
  if (2 * k > kWordCap)
    throw std::invalid_argument("moment order needs words of length " + std::to_string(2 * k) +
                                " beyond the enumeration cap");
  if (!(Rational(0) < y)) throw std::invalid_argument("aspect ratio y must be positive");
  double yv = y.value();

  MomentResult out;
  out.k = k;
  double var = 0;
  for_each_word(2 * k, [&](const Word& w) {
    if (!classify(w).special_symmetric) return true;
    auto prof = generating_profile(w);
    int r = prof.even_gen - 1;
    double yr = std::pow(yv, r);

    bool all_const = true;
    double cprod = 1.0;
    for (int sz : prof.block_sizes) {
      if (!model.order_constant(sz)) {
        all_const = false;
        break;
      }
      cprod *= model.constant_value(sz);
    }

    double contrib = 0;
    if (all_const) {
      contrib = yr * cprod;
    } else {
      auto sp = s_link_pairs(w);
      MCConfig sub = mc;
      sub.seed = mix_seed(mc.seed, fnv1a(w.str()));
      auto st = mc_estimate(prof.b + 1, sub, [&](const double* x) {
        double prod = 1.0;
        for (int l = 0; l < prof.b; ++l)
          prod *= model.eval(prof.block_sizes[l], x[sp.row_var[l]], x[sp.col_var[l]]);
        return prod;
      });
      contrib = yr * st.mean;
      var += yr * yr * st.std_error * st.std_error;
    }
    if (contrib != 0) out.word_breakdown[w.str()] = contrib;
    out.value += contrib;
    return true;
  });
  out.std_error = std::sqrt(var);
  return out;
}

std::pair<double, double> sparse_bounds(int k, double y, double lambda) {
  if (lambda <= 0) throw std::invalid_argument("lambda must be positive");
  if (y <= 0) throw std::invalid_argument("y must be positive");
  if (y <= 1.0) return {q1_moment(lambda * y, 2 * k), q2_moment(lambda, 2 * k)};
  return {q1_moment(lambda, 2 * k), q2_moment(lambda * y, 2 * k)};
}

MomentResult sa_moment(int k, const PatternModel& model, const MCConfig& mc) {
  if (k < 1) throw std::invalid_argument("moment order must be positive");
  if (2 * k > kWordCap)
    throw std::invalid_argument("moment order needs words of length " + std::to_string(2 * k) +
                                " beyond the enumeration cap");
  LinkKind link = model.pattern;
  if (!link_is_patterned(link)) throw std::invalid_argument("sa_moment needs a patterned link");
  const Rational& y = model.y;
  if (!(Rational(0) < y)) throw std::invalid_argument("aspect ratio y must be positive");
  double yv = y.value();

  MomentResult out;
  out.k = k;
  double var = 0;

  OrderFn f = [&](int order, double arg) { return model.f_eval(order, arg); };
  const bool constant = model.constant();

  for_each_word(2 * k, [&](const Word& w) {
    auto cls = classify(w);
    if (!word_admissible(link, cls)) return true;
    auto prof = generating_profile(w);
    int r = prof.even_gen - 1;
    double yr = std::pow(yv, r);

    double contrib, se;
    if (constant) {
      double cprod = 1.0;
      for (int sz : prof.block_sizes) cprod *= model.cum.at(sz);
      if (cprod == 0.0) return true;
      MCConfig sub = mc;
      sub.seed = mix_seed(mc.seed, fnv1a(w.str()) ^ 0x5AD0);
      auto lr = detail::pattern_word_value(link, w, y, sub, nullptr);
      contrib = yr * cprod * lr.value;
      se = yr * std::fabs(cprod) * lr.std_error;
    } else {
      MCConfig sub = mc;
      sub.seed = mix_seed(mc.seed, fnv1a(w.str()) ^ 0x5AD1);
      auto lr = detail::pattern_word_value(link, w, y, sub, &f);
      contrib = yr * lr.value;
      se = yr * lr.std_error;
    }
    if (contrib != 0 || se != 0) out.word_breakdown[w.str()] = contrib;
    out.value += contrib;
    var += se * se;
    return true;
  });
  out.std_error = std::sqrt(var);
  return out;
}

MomentResult variance_profile_s_moment(int k, const Rational& y, Sigma2 sigma,
                                       const CumulantSequence& c, const MCConfig& mc) {
  return s_moment(k, y, EntryModel::profile(std::move(sigma), c), mc);
}

double unbounded_support_lowerbound(int m, int t, const Sigma1& f2m) {
  if (m < 1 || t < 1) throw std::invalid_argument("m and t must be positive");
  // (mt)! / (t! (m!)^t) as a telescoping product of binomials, exact
  Count mult = 1;
  for (int i = 2; i <= t; ++i) mult *= binomial(m * i, m);
  mult /= factorial(t);
  // Simpson on [0,1]
  const int nseg = 2048;
  double h = 1.0 / nseg;
  double acc = 0;
  for (int i = 0; i <= nseg; ++i) {
    double x = i * h;
    double fx = std::pow(f2m(x), t);
    double wgt = (i == 0 || i == nseg) ? 1 : (i % 2 == 1 ? 4 : 2);
    acc += wgt * fx;
  }
  acc *= h / 3.0;
  return count_double(mult) * acc;
}

}  // namespace rmt

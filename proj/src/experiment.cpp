#include "rmt/experiment.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "rmt/acceptance.hpp"
#include "rmt/expr.hpp"
#include "rmt/limits.hpp"

namespace rmt {

namespace fs = std::filesystem;
using nlohmann::json;

Rational ExperimentConfig::ratio() const {
  if (p > 0 && n > 0) return Rational(p, n);
  return Rational::parse(y);
}

json ExperimentConfig::to_json() const {
  json j;
  j["target"] = target;
  j["model"] = model;
  j["entry"] = entry;
  j["y"] = y;
  j["p"] = p;
  j["n"] = n;
  j["k_max"] = k_max;
  j["samples"] = samples;
  j["seed"] = seed;
  j["reps"] = reps;
  j["lambda"] = lambda;
  json cums = json::object();
  for (auto& [k, v] : cumulants) cums[std::to_string(k)] = v;
  j["cumulants"] = cums;
  j["profile"] = profile;
  j["tolerance"] = tolerance;
  j["out_dir"] = out_dir;
  return j;
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  ExperimentConfig c;
  c.target = j.value("target", c.target);
  c.model = j.value("model", c.model);
  c.entry = j.value("entry", c.entry);
  c.y = j.value("y", c.y);
  c.p = j.value("p", c.p);
  c.n = j.value("n", c.n);
  c.k_max = j.value("k_max", c.k_max);
  c.samples = j.value("samples", c.samples);
  c.seed = j.value("seed", c.seed);
  c.reps = j.value("reps", c.reps);
  c.lambda = j.value("lambda", c.lambda);
  if (j.contains("cumulants"))
    for (auto& [k, v] : j.at("cumulants").items()) c.cumulants[std::stoi(k)] = v.get<double>();
  c.profile = j.value("profile", c.profile);
  c.tolerance = j.value("tolerance", c.tolerance);
  c.out_dir = j.value("out_dir", c.out_dir);
  return c;
}

uint64_t ExperimentConfig::hash() const {
  std::string s = to_json().dump();
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

EntryModel theory_entry_model(const ExperimentConfig& cfg) {
  if (cfg.model == "mp") return EntryModel::mp();
  if (cfg.model == "sparse") return EntryModel::sparse(cfg.lambda);
  if (cfg.model == "cumulants") {
    if (cfg.cumulants.empty()) return EntryModel::cumulants(CumulantSequence::constant(cfg.lambda));
    return EntryModel::cumulants(CumulantSequence::from_map(cfg.cumulants));
  }
  if (cfg.model == "profile") {
    auto cum = cfg.cumulants.empty() ? CumulantSequence::constant(cfg.lambda)
                                     : CumulantSequence::from_map(cfg.cumulants);
    return EntryModel::profile(profile2_by_name(cfg.profile), cum);
  }
  throw std::invalid_argument("unknown theory model: " + cfg.model);
}

PatternModel theory_pattern_model(const ExperimentConfig& cfg) {
  PatternModel m;
  m.pattern = link_from_string(cfg.target);
  m.y = cfg.ratio();
  if (cfg.model == "mp") {
    m.cum = CumulantSequence::pair_only(1.0);
  } else if (cfg.model == "sparse") {
    m.cum = CumulantSequence::constant(cfg.lambda);
  } else if (cfg.model == "cumulants") {
    m.cum = cfg.cumulants.empty() ? CumulantSequence::constant(cfg.lambda)
                                  : CumulantSequence::from_map(cfg.cumulants);
  } else if (cfg.model == "profile") {
    m.cum = cfg.cumulants.empty() ? CumulantSequence::constant(cfg.lambda)
                                  : CumulantSequence::from_map(cfg.cumulants);
    m.sigma = profile1_by_name(cfg.profile);
  } else {
    throw std::invalid_argument("unknown theory model: " + cfg.model);
  }
  return m;
}

EntrySpec simulation_entry(const ExperimentConfig& cfg) {
  EntrySpec e;
  std::string s = cfg.entry;
  auto take = [&](const std::string& prefix) -> std::optional<std::string> {
    if (s.rfind(prefix, 0) == 0) return s.substr(prefix.size());
    return std::nullopt;
  };
  if (s == "gaussian") {
    e.base = EntrySpec::Base::Gaussian;
  } else if (auto rest = take("bernoulli:")) {
    e.base = EntrySpec::Base::Bernoulli;
    e.lambda = std::stod(*rest);
  } else if (auto rest = take("stable:")) {
    e.base = EntrySpec::Base::Stable;
    e.alpha = std::stod(*rest);
  } else if (auto rest = take("profile:")) {
    // profile:NAME[;base[;param]]
    std::string name = *rest, base = "gaussian", param;
    if (auto semi = name.find(';'); semi != std::string::npos) {
      base = name.substr(semi + 1);
      name = name.substr(0, semi);
      if (auto semi2 = base.find(';'); semi2 != std::string::npos) {
        param = base.substr(semi2 + 1);
        base = base.substr(0, semi2);
      }
    }
    if (base == "gaussian") {
      e.base = EntrySpec::Base::Gaussian;
    } else if (base == "bernoulli") {
      e.base = EntrySpec::Base::Bernoulli;
      e.lambda = param.empty() ? 1.0 : std::stod(param);
    } else if (base == "stable") {
      e.base = EntrySpec::Base::Stable;
      e.alpha = param.empty() ? 1.5 : std::stod(param);
    } else {
      throw std::invalid_argument("unknown profile base: " + base);
    }
    if (cfg.target == "s") {
      e.sigma2 = profile2_by_name(name);
    } else {
      e.sigma1 = profile1_by_name(name);
    }
  } else {
    throw std::invalid_argument("unknown entry spec: " + s);
  }
  return e;
}

ComparisonReport run_compare(const ExperimentConfig& cfg) {
  if (cfg.p <= 0 || cfg.n <= 0)
    throw std::invalid_argument("compare needs explicit matrix dimensions p and n");
  ComparisonReport rep;
  rep.cfg = cfg;

  Rational y = cfg.ratio();
  MCConfig mc;
  mc.samples = cfg.samples;
  mc.seed = cfg.seed;

  LinkKind target = link_from_string(cfg.target);
  std::vector<double> theory(cfg.k_max + 1, 0), theory_se(cfg.k_max + 1, 0);
  for (int k = 1; k <= cfg.k_max; ++k) {
    if (target == LinkKind::S) {
      auto m = s_moment(k, y, theory_entry_model(cfg), mc);
      theory[k] = m.value;
      theory_se[k] = m.std_error;
    } else {
      auto m = sa_moment(k, theory_pattern_model(cfg), mc);
      theory[k] = m.value;
      theory_se[k] = m.std_error;
    }
  }

  MatrixSpec spec;
  spec.p = cfg.p;
  spec.n = cfg.n;
  spec.entry = simulation_entry(cfg);
  spec.seed = cfg.seed;
  auto sum = replicate(spec, cfg.reps, cfg.k_max, target);

  bool all = true;
  for (int k = 1; k <= cfg.k_max; ++k) {
    CompareRow row;
    row.k = k;
    row.theory = theory[k];
    row.theory_se = theory_se[k];
    row.empirical = sum.mean.at(k);
    row.empirical_sd = sum.sd.at(k);
    double denom = std::max(std::fabs(row.theory), 1e-12);
    row.rel_err = std::fabs(row.empirical - row.theory) / denom;
    row.pass = row.rel_err <= cfg.tolerance;
    all = all && row.pass;
    rep.rows.push_back(row);
  }
  if (cfg.model == "sparse")
    rep.sparse_bounds_k1 = sparse_bounds(1, y.value(), cfg.lambda);
  rep.pass = all;

  if (!cfg.out_dir.empty()) {
    fs::create_directories(cfg.out_dir);
    std::ofstream mcsv(fs::path(cfg.out_dir) / "moments.csv");
    mcsv << "rep,k,value\n";
    for (size_t r = 0; r < sum.per_rep.size(); ++r)
      for (auto& [k, v] : sum.per_rep[r]) mcsv << r << "," << k << "," << std::setprecision(17) << v << "\n";
    std::ofstream rcsv(fs::path(cfg.out_dir) / "report.json");
    rcsv << report_json(rep).dump(2) << "\n";
    std::ofstream meta(fs::path(cfg.out_dir) / "meta.json");
    json mj;
    mj["config"] = cfg.to_json();
    mj["config_hash"] = cfg.hash();
    meta << mj.dump(2) << "\n";
  }
  return rep;
}

void print_report(const ComparisonReport& rep, std::ostream& os) {
  os << "target=" << rep.cfg.target << " model=" << rep.cfg.model << " entry=" << rep.cfg.entry
     << " p=" << rep.cfg.p << " n=" << rep.cfg.n << " reps=" << rep.cfg.reps << "\n";
  os << std::left << std::setw(4) << "k" << std::setw(16) << "theory" << std::setw(12)
     << "theory_se" << std::setw(16) << "empirical" << std::setw(12) << "emp_sd" << std::setw(10)
     << "rel_err" << "status\n";
  for (auto& r : rep.rows) {
    os << std::left << std::setw(4) << r.k << std::setw(16) << r.theory << std::setw(12)
       << r.theory_se << std::setw(16) << r.empirical << std::setw(12) << r.empirical_sd
       << std::setw(10) << r.rel_err << (r.pass ? "ok" : "FAIL") << "\n";
  }
  if (rep.sparse_bounds_k1)
    os << "sparse bounds (k=1): [" << rep.sparse_bounds_k1->first << ", "
       << rep.sparse_bounds_k1->second << "]\n";
  os << (rep.pass ? "PASS" : "FAIL") << " (tolerance " << rep.cfg.tolerance << ")\n";
}

json report_json(const ComparisonReport& rep) {
  json j;
  j["config"] = rep.cfg.to_json();
  j["config_hash"] = rep.cfg.hash();
  j["pass"] = rep.pass;
  json rows = json::array();
  for (auto& r : rep.rows) {
    rows.push_back({{"k", r.k},
                    {"theory", r.theory},
                    {"theory_se", r.theory_se},
                    {"empirical", r.empirical},
                    {"empirical_sd", r.empirical_sd},
                    {"rel_err", r.rel_err},
                    {"pass", r.pass}});
  }
  j["rows"] = rows;
  return j;
}

void write_simulation_outputs(const ExperimentConfig& cfg, const ReplicationSummary& sum,
                              bool write_eigs, const std::vector<double>& pooled_eigs) {
  fs::create_directories(cfg.out_dir);
  std::ofstream mcsv(fs::path(cfg.out_dir) / "moments.csv");
  mcsv << "rep,k,value\n";
  for (size_t r = 0; r < sum.per_rep.size(); ++r)
    for (auto& [k, v] : sum.per_rep[r])
      mcsv << r << "," << k << "," << std::setprecision(17) << v << "\n";
  std::ofstream hcsv(fs::path(cfg.out_dir) / "hist.csv");
  hcsv << "bin_lo,bin_hi,count\n";
  for (size_t b = 0; b + 1 < sum.pooled.edges.size(); ++b)
    hcsv << std::setprecision(17) << sum.pooled.edges[b] << "," << sum.pooled.edges[b + 1] << ","
         << sum.pooled.counts[b] << "\n";
  if (write_eigs) {
    std::ofstream ecsv(fs::path(cfg.out_dir) / "eigs.csv");
    ecsv << "eig\n";
    for (double v : pooled_eigs) ecsv << std::setprecision(17) << v << "\n";
  }
  std::ofstream meta(fs::path(cfg.out_dir) / "meta.json");
  json mj;
  mj["config"] = cfg.to_json();
  mj["config_hash"] = cfg.hash();
  mj["rep_seeds"] = sum.seeds;
  meta << mj.dump(2) << "\n";
}

namespace {

int suite_acceptance(const std::string& out_dir, std::ostream& log) {
  auto results = run_acceptance(log);
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    json j = json::array();
    for (auto& r : results)
      j.push_back({{"id", r.id},
                   {"name", r.name},
                   {"pass", r.pass},
                   {"detail", r.detail},
                   {"seconds", r.seconds}});
    std::ofstream f(fs::path(out_dir) / "acceptance.json");
    f << j.dump(2) << "\n";
  }
  return all_passed(results) ? 0 : 1;
}

int suite_oracle_crosscheck(const std::string& out_dir, std::ostream& log) {
  fs::create_directories(out_dir.empty() ? "." : out_dir);
  std::ofstream csv(fs::path(out_dir.empty() ? "." : out_dir) / "oracle_crosscheck.csv");
  csv << "link,word,y,limit,limit_se,ratio_n16,ratio_n32,ratio_n64,pass\n";
  std::vector<LinkKind> links = {LinkKind::T_sym, LinkKind::T_asym, LinkKind::H_sym,
                                 LinkKind::H_asym, LinkKind::R_sym, LinkKind::R_asym,
                                 LinkKind::C_sym, LinkKind::C_asym};
  std::vector<Rational> ys = {Rational(1, 2), Rational(1), Rational(2)};
  MCConfig mc;
  mc.samples = 200000;
  bool all = true;
  for (int twok = 2; twok <= 6; twok += 2) {
    for_each_word(twok, [&](const Word& w) {
      auto cls = classify(w);
      for (LinkKind link : links) {
        if (!word_admissible(link, cls)) continue;
        for (auto& yy : ys) {
          auto lim = evaluate_limit(link, w, yy, mc);
          auto grid = finite_ratio(link, w, yy, {16, 32, 64});
          double target = grid.back().ratio;
          double tol = std::max(0.05 * std::fabs(target), 3.0 * lim.std_error);
          bool pass = std::fabs(lim.value - target) <= tol;
          all = all && pass;
          csv << link_name(link) << "," << w.str() << "," << yy.str() << "," << lim.value << ","
              << lim.std_error << "," << grid[0].ratio << "," << grid[1].ratio << ","
              << grid[2].ratio << "," << (pass ? 1 : 0) << "\n";
          if (!pass)
            log << "mismatch: " << link_name(link) << " " << w.str() << " y=" << yy.str()
                << " limit=" << lim.value << " oracle=" << target << "\n";
        }
      }
      return true;
    });
  }
  log << (all ? "oracle crosscheck: PASS" : "oracle crosscheck: FAIL") << "\n";
  return all ? 0 : 1;
}

void figure_run(const std::string& dir, const std::string& tag, const ExperimentConfig& cfg,
                std::ostream& log) {
  ExperimentConfig c = cfg;
  c.out_dir = (fs::path(dir) / tag).string();
  MatrixSpec spec;
  spec.p = c.p;
  spec.n = c.n;
  spec.entry = simulation_entry(c);
  spec.seed = c.seed;
  auto sum = replicate(spec, c.reps, c.k_max, link_from_string(c.target));
  write_simulation_outputs(c, sum, false, {});
  log << "wrote " << c.out_dir << "\n";
}

int suite_paper_figures(const std::string& out_dir, std::ostream& log) {
  std::string dir = out_dir.empty() ? "figures" : out_dir;
  ExperimentConfig base;
  base.p = 1000;
  base.n = 2000;
  base.k_max = 4;
  base.reps = 30;
  base.seed = 2024;

  ExperimentConfig c = base;
  c.target = "s";
  c.entry = "gaussian";
  figure_run(dir, "s_gaussian", c, log);

  c = base;
  c.target = "s";
  c.entry = "bernoulli:3";
  figure_run(dir, "s_bernoulli3", c, log);

  c = base;
  c.target = "s";
  c.entry = "profile:(0.5*x+y)^2/2;bernoulli;3";
  figure_run(dir, "s_profile_bernoulli3", c, log);

  c = base;
  c.target = "s";
  c.entry = "profile:upper_triangular;bernoulli;3";
  figure_run(dir, "s_triangular_bernoulli3", c, log);

  for (std::string pat : {"r_sym", "c_sym"}) {
    c = base;
    c.target = pat;
    c.reps = 2;
    c.entry = "gaussian";
    figure_run(dir, pat + "_gaussian", c, log);
    c.entry = "bernoulli:3";
    figure_run(dir, pat + "_bernoulli3", c, log);
  }

  for (std::string pat : {"t_sym", "h_sym", "r_sym", "c_sym"}) {
    c = base;
    c.target = pat;
    c.entry = "profile:x^2+4*x;bernoulli;3";
    figure_run(dir, pat + "_profile_bernoulli3", c, log);
  }
  return 0;
}

}  // namespace

int run_suite(const std::string& name, const std::string& out_dir, std::ostream& log) {
  if (name == "acceptance") return suite_acceptance(out_dir, log);
  if (name == "oracle-crosscheck") return suite_oracle_crosscheck(out_dir, log);
  if (name == "paper-figures") return suite_paper_figures(out_dir, log);
  throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace rmt

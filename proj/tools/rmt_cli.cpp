// Command-line front end: word enumeration, exact circuit counts, word-limit
// evaluation, theoretical moments, matrix simulation, and theory-vs-simulation
// comparison runs.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>

#include "rmt/acceptance.hpp"
#include "rmt/circuits.hpp"
#include "rmt/experiment.hpp"
#include "rmt/expr.hpp"
#include "rmt/limits.hpp"
#include "rmt/moments.hpp"
#include "rmt/simulate.hpp"

using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

std::map<int, double> parse_cumulants(const std::string& s) {
  // "2=1,4=0.5"
  std::map<int, double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--c expects k=value pairs");
    out[std::stoi(item.substr(0, eq))] = std::stod(item.substr(eq + 1));
  }
  return out;
}

int cmd_words(int length, const std::string& klass, bool list, bool as_json, int cap) {
  auto predicate = [&](const rmt::WordClass& c) {
    if (klass == "all") return true;
    if (klass == "ss") return c.special_symmetric;
    if (klass == "even") return c.even;
    if (klass == "sym") return c.symmetric;
    if (klass == "nc2") return c.noncrossing_pair;
    if (klass == "nce") return false;  // handled below (needs the word itself)
    throw CLI::ValidationError("unknown class: " + klass);
  };
  std::vector<std::string> words;
  rmt::Count count = 0;
  rmt::for_each_word(length, [&](const rmt::Word& w) {
    bool keep;
    if (klass == "nce") {
      auto c = rmt::classify(w);
      keep = c.even && rmt::word_noncrossing(w);
    } else {
      keep = predicate(rmt::classify(w));
    }
    if (keep) {
      ++count;
      if (list) words.push_back(w.str());
    }
    return true;
  }, cap);
  if (as_json) {
    json j;
    if (list)
      j = words;
    else
      j = rmt::count_str(count);
    std::cout << j.dump() << "\n";
  } else if (list) {
    for (auto& w : words) std::cout << w << "\n";
  } else {
    std::cout << rmt::count_str(count) << "\n";
  }
  return kExitPass;
}

int cmd_count(const std::string& link_s, const std::string& word_s, long long p, long long n,
              bool grid, const std::string& y_s, std::vector<long long> grid_ns) {
  auto link = rmt::link_from_string(link_s);
  auto w = rmt::Word::parse(word_s);
  if (grid) {
    auto y = rmt::Rational::parse(y_s);
    if (grid_ns.empty()) grid_ns = {8, 16, 32, 64};
    auto pts = rmt::finite_ratio(link, w, y, grid_ns);
    std::cout << "n,p,count,ratio\n";
    for (auto& pt : pts)
      std::cout << pt.n << "," << pt.p << "," << rmt::count_str(pt.count) << ","
                << std::setprecision(12) << pt.ratio << "\n";
  } else {
    std::cout << rmt::count_str(rmt::count_circuits(link, w, p, n)) << "\n";
  }
  return kExitPass;
}

int cmd_limit(const std::string& link_s, const std::string& word_s, const std::string& y_s,
              uint64_t samples, uint64_t seed, bool antithetic, bool as_json) {
  auto link = rmt::link_from_string(link_s);
  auto w = rmt::Word::parse(word_s);
  auto y = rmt::Rational::parse(y_s);
  rmt::MCConfig mc;
  mc.samples = samples;
  mc.seed = seed;
  mc.antithetic = antithetic;
  auto r = rmt::evaluate_limit(link, w, y, mc);
  if (as_json) {
    json j{{"link", link_s}, {"word", w.str()}, {"y", y.str()},
           {"value", r.value}, {"std_error", r.std_error}, {"samples", r.samples}};
    j["terms"] = r.terms;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << r.value << " (se " << r.std_error << ", samples " << r.samples << ")\n";
  }
  return kExitPass;
}

int cmd_moment(const std::string& target, const std::string& model, const std::string& y_s,
               int k_max, uint64_t samples, uint64_t seed, const std::string& cums,
               double lambda, const std::string& profile, bool as_json) {
  rmt::ExperimentConfig cfg;
  cfg.target = target;
  cfg.model = model;
  cfg.y = y_s;
  cfg.k_max = k_max;
  cfg.samples = samples;
  cfg.seed = seed;
  cfg.lambda = lambda;
  cfg.profile = profile;
  if (!cums.empty()) cfg.cumulants = parse_cumulants(cums);

  rmt::MCConfig mc;
  mc.samples = samples;
  mc.seed = seed;
  auto y = rmt::Rational::parse(y_s);

  json rows = json::array();
  for (int k = 1; k <= k_max; ++k) {
    rmt::MomentResult m;
    if (target == "s") {
      m = rmt::s_moment(k, y, rmt::theory_entry_model(cfg), mc);
    } else {
      m = rmt::sa_moment(k, rmt::theory_pattern_model(cfg), mc);
    }
    if (as_json) {
      json j{{"k", k}, {"value", m.value}, {"std_error", m.std_error}};
      j["words"] = m.word_breakdown;
      rows.push_back(j);
    } else {
      std::cout << "k=" << k << "  " << std::setprecision(12) << m.value << "  (se "
                << m.std_error << ")\n";
    }
  }
  if (as_json) std::cout << rows.dump() << "\n";
  return kExitPass;
}

int cmd_simulate(const std::string& target, const std::string& entry, int p, int n, int reps,
                 int k_max, uint64_t seed, const std::string& out, bool eigs, int bins,
                 bool quantile) {
  rmt::ExperimentConfig cfg;
  cfg.target = target;
  cfg.entry = entry;
  cfg.p = p;
  cfg.n = n;
  cfg.reps = reps;
  cfg.k_max = k_max;
  cfg.seed = seed;
  cfg.out_dir = out;

  rmt::MatrixSpec spec;
  spec.p = p;
  spec.n = n;
  spec.entry = rmt::simulation_entry(cfg);
  spec.seed = seed;
  auto target_link = rmt::link_from_string(target);
  auto sum = rmt::replicate(spec, reps, k_max, target_link, bins, quantile);

  std::vector<double> pooled;
  if (eigs) {
    for (int rep = 0; rep < reps; ++rep) {
      Eigen::MatrixXd x = (target_link == rmt::LinkKind::S)
                              ? rmt::generate_x({p, n, spec.entry, sum.seeds[size_t(rep)]})
                              : rmt::generate_patterned(target_link, p, n, spec.entry,
                                                        sum.seeds[size_t(rep)]);
      auto r = rmt::esd(x, 1);
      pooled.insert(pooled.end(), r.eigenvalues.begin(), r.eigenvalues.end());
    }
  }
  if (!out.empty()) {
    rmt::write_simulation_outputs(cfg, sum, eigs, pooled);
  } else {
    std::cout << "k,mean,sd\n";
    for (auto& [k, v] : sum.mean) std::cout << k << "," << v << "," << sum.sd.at(k) << "\n";
  }
  return kExitPass;
}

int cmd_compare(const std::string& config_path, std::vector<std::string> overrides) {
  json j;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw CLI::ValidationError("cannot open config: " + config_path);
    in >> j;
  }
  auto cfg = rmt::ExperimentConfig::from_json(j);
  for (auto& ov : overrides) {
    auto eq = ov.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--set expects key=value");
    std::string key = ov.substr(0, eq), val = ov.substr(eq + 1);
    json patch = cfg.to_json();
    if (patch.contains(key) && patch[key].is_number_integer())
      patch[key] = std::stoll(val);
    else if (patch.contains(key) && patch[key].is_number_unsigned())
      patch[key] = std::stoull(val);
    else if (patch.contains(key) && patch[key].is_number_float())
      patch[key] = std::stod(val);
    else
      patch[key] = val;
    cfg = rmt::ExperimentConfig::from_json(patch);
  }
  auto rep = rmt::run_compare(cfg);
  rmt::print_report(rep, std::cout);
  return rep.pass ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"limit spectral moments of sample-covariance and patterned Gram matrices"};
  app.require_subcommand(1);

  // words
  auto* words = app.add_subcommand("words", "enumerate canonical words / set partitions");
  int w_length = 4, w_cap = rmt::kWordCap;
  std::string w_class = "all";
  bool w_list = false, w_count = false, w_json = false;
  words->add_option("--length", w_length, "word length")->required();
  words->add_option("--class", w_class, "ss|even|sym|nc2|nce|all");
  words->add_flag("--list", w_list, "list words");
  words->add_flag("--count", w_count, "print the count only");
  words->add_flag("--json", w_json, "JSON output");
  words->add_option("--cap", w_cap, "enumeration cap");

  // count
  auto* count = app.add_subcommand("count", "exact circuit counts at finite (p, n)");
  std::string c_link = "s", c_word = "abba", c_y = "1";
  long long c_p = 4, c_n = 4;
  bool c_grid = false;
  std::vector<long long> c_grid_ns;
  count->add_option("--link", c_link, "link kind")->required();
  count->add_option("--word", c_word, "word, e.g. abba")->required();
  count->add_option("--p", c_p, "rows");
  count->add_option("--n", c_n, "columns");
  count->add_flag("--grid", c_grid, "emit CSV over an n grid with p = round(y n)");
  count->add_option("--y", c_y, "aspect ratio for --grid");
  count->add_option("--n-grid", c_grid_ns, "grid of n values");

  // limit
  auto* limit = app.add_subcommand("limit", "word-limit constants");
  std::string l_link = "t_sym", l_word = "aabb", l_y = "1";
  uint64_t l_samples = 1000000, l_seed = 20240101;
  bool l_anti = false, l_json = false;
  limit->add_option("--link", l_link, "link kind")->required();
  limit->add_option("--word", l_word, "word")->required();
  limit->add_option("--y", l_y, "aspect ratio (rational)");
  limit->add_option("--samples", l_samples, "Monte Carlo samples");
  limit->add_option("--seed", l_seed, "seed");
  limit->add_flag("--antithetic", l_anti, "antithetic sampling");
  limit->add_flag("--json", l_json, "JSON output");

  // moment
  auto* moment = app.add_subcommand("moment", "theoretical moment sequences");
  std::string m_target = "s", m_model = "mp", m_y = "1/2", m_cums, m_profile;
  int m_kmax = 4;
  uint64_t m_samples = 500000, m_seed = 20240101;
  double m_lambda = 1.0;
  bool m_json = false;
  moment->add_option("--target", m_target, "s or a patterned link")->required();
  moment->add_option("--model", m_model, "mp|cumulants|sparse|profile");
  moment->add_option("--y", m_y, "aspect ratio (rational)");
  moment->add_option("--k-max", m_kmax, "highest moment order");
  moment->add_option("--samples", m_samples, "Monte Carlo samples");
  moment->add_option("--seed", m_seed, "seed");
  moment->add_option("--c", m_cums, "cumulants, e.g. 2=1,4=0.5");
  moment->add_option("--lambda", m_lambda, "constant cumulant value");
  moment->add_option("--profile", m_profile, "profile name or expression");
  moment->add_flag("--json", m_json, "JSON output");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "random matrix spectra");
  std::string s_target = "s", s_entry = "gaussian", s_out;
  int s_p = 200, s_n = 400, s_reps = 10, s_kmax = 4, s_bins = 100;
  uint64_t s_seed = 20240101;
  bool s_eigs = false, s_quantile = false;
  simulate->add_option("--target", s_target, "s or a patterned link");
  simulate->add_option("--entry", s_entry, "gaussian|bernoulli:L|stable:A|profile:NAME[;base[;param]]");
  simulate->add_option("--p", s_p, "rows")->required();
  simulate->add_option("--n", s_n, "columns")->required();
  simulate->add_option("--reps", s_reps, "replications");
  simulate->add_option("--k-max", s_kmax, "moment orders");
  simulate->add_option("--seed", s_seed, "master seed");
  simulate->add_option("--out", s_out, "output directory (moments.csv, hist.csv, meta.json)");
  simulate->add_flag("--eigs", s_eigs, "also write pooled eigenvalues");
  simulate->add_option("--bins", s_bins, "histogram bins");
  simulate->add_flag("--quantile-bins", s_quantile, "quantile histogram binning");

  // compare
  auto* compare = app.add_subcommand("compare", "theory vs simulation");
  std::string cp_config;
  std::vector<std::string> cp_set;
  compare->add_option("--config", cp_config, "JSON config file");
  compare->add_option("--set", cp_set, "override config keys, key=value");

  // suite
  auto* suite = app.add_subcommand("suite", "preset experiment bundles");
  std::string su_name, su_out;
  suite->add_option("name", su_name, "acceptance|paper-figures|oracle-crosscheck")->required();
  suite->add_option("--out", su_out, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*words) return cmd_words(w_length, w_class, w_list && !w_count, w_json, w_cap);
    if (*count) return cmd_count(c_link, c_word, c_p, c_n, c_grid, c_y, c_grid_ns);
    if (*limit) return cmd_limit(l_link, l_word, l_y, l_samples, l_seed, l_anti, l_json);
    if (*moment)
      return cmd_moment(m_target, m_model, m_y, m_kmax, m_samples, m_seed, m_cums, m_lambda,
                        m_profile, m_json);
    if (*simulate)
      return cmd_simulate(s_target, s_entry, s_p, s_n, s_reps, s_kmax, s_seed, s_out, s_eigs,
                          s_bins, s_quantile);
    if (*compare) return cmd_compare(cp_config, cp_set);
    if (*suite) return rmt::run_suite(su_name, su_out, std::cout);
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rmt/moments.hpp"
#include "rmt/simulate.hpp"

#include <json.hpp>

namespace rmt {

// Declarative record of one theory-vs-simulation experiment. Serialized as
// JSON; file values are overridden by CLI flags; every run embeds the
// resolved config and its hash in the outputs.
struct ExperimentConfig {
  std::string target = "s";        // s | t_sym | t_asym | h_sym | h_asym | r_sym | r_asym | c_sym | c_asym
  std::string model = "mp";        // mp | cumulants | sparse | profile
  std::string entry = "gaussian";  // gaussian | bernoulli:L | stable:A | profile:NAME[;base[;param]]
  std::string y = "1/2";           // rational, used when p or n is 0
  int p = 0;
  int n = 0;
  int k_max = 3;
  uint64_t samples = 200000;
  uint64_t seed = 12345;
  int reps = 10;
  double lambda = 1.0;                // sparse model parameter
  std::map<int, double> cumulants;    // cumulants model
  std::string profile;                // named profile or expression (theory side)
  double tolerance = 0.07;
  std::string out_dir;

  Rational ratio() const;  // y, or p/n when both set
  nlohmann::json to_json() const;
  static ExperimentConfig from_json(const nlohmann::json& j);
  uint64_t hash() const;
};

EntryModel theory_entry_model(const ExperimentConfig& cfg);
PatternModel theory_pattern_model(const ExperimentConfig& cfg);
EntrySpec simulation_entry(const ExperimentConfig& cfg);

struct CompareRow {
  int k = 0;
  double theory = 0;
  double theory_se = 0;
  double empirical = 0;
  double empirical_sd = 0;
  double rel_err = 0;
  bool pass = false;
};

struct ComparisonReport {
  ExperimentConfig cfg;
  std::vector<CompareRow> rows;
  std::optional<std::pair<double, double>> sparse_bounds_k1;  // diagnostic
  bool pass = false;
};

ComparisonReport run_compare(const ExperimentConfig& cfg);
void print_report(const ComparisonReport& rep, std::ostream& os);
nlohmann::json report_json(const ComparisonReport& rep);

// Writes moments.csv / hist.csv (+ eigs.csv when requested) and a meta.json
// sidecar under out_dir.
void write_simulation_outputs(const ExperimentConfig& cfg, const ReplicationSummary& sum,
                              bool write_eigs, const std::vector<double>& pooled_eigs);

// Presets: acceptance | paper-figures | oracle-crosscheck.
// Returns a process exit code (0 pass, 1 tolerance failure).
int run_suite(const std::string& name, const std::string& out_dir, std::ostream& log);

}  // namespace rmt

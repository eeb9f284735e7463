#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "bec/lab.hpp"
#include "bec/params.hpp"
#include "bec/stepper.hpp"

namespace bec {

/// Malformed or unknown configuration entries.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InitialCondition {
  std::string kind = "cosine";  // constant | cosine | power | file
  double value = 1.0;           // constant
  double base = 1.0;            // cosine: base + amplitude cos(mode pi x / L)
  double amplitude = 0.1;
  int mode = 1;
  double sigma = 1.5;           // power: x^-sigma clipped to [1/k, k]
  std::string path;             // file: one value per line, or "x,u" rows
};

struct VerifyConfig {
  int corpus = 1000;
  std::uint64_t seed = 1;
  std::vector<lab::Lemma> lemmas{lab::Lemma::L2, lab::Lemma::L3, lab::Lemma::L4, lab::Lemma::L6,
                                 lab::Lemma::Inter};
  std::vector<double> eta{0.1, 0.5, 0.9};
  bool pointwise = true;
  /// Regularization used by the inequality checks; defaults to params.eps. May be 0.
  double eps = -1.0;
  /// Multiplies every C(eta); 1 except in mutation tests.
  double constant_scale = 1.0;
};

struct ContinuationConfig {
  std::vector<double> eps{0.2, 0.1, 0.05, 0.025};
  double interval = 0.0;  // snapshot interval; 0 means t_end / 10
  int workers = 0;
};

struct SteadyConfig {
  std::vector<double> sigma{1.5};
  std::vector<int> N{128, 256, 512};
  double x_cut = -1.0;  // defaults to L / 10
  double grading = 1.0;
};

struct SweepAxis {
  std::string key;  // "section.key"
  std::vector<std::string> values;
};

struct SweepConfig {
  std::vector<SweepAxis> axes;
  int workers = 0;
};

struct RunConfig {
  RawParams params;
  double grading = 2.0;
  StepControl control;
  InitialCondition initial;
  double t_end = 1e-3;
  SnapshotPolicy snapshots;
  std::string out_dir = "out";
  VerifyConfig verify;
  ContinuationConfig continuation;
  SteadyConfig steady;
  SweepConfig sweep;
  /// Every key = value pair as given, for the config echo in summary.json.
  std::map<std::string, std::string> entries;
};

/// Parses INI-style text ("[section]" headers, "key = value" lines, '#' or ';' comments).
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Sets one "section.key" entry from its textual value; throws ConfigError.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Evaluates the initial condition on the grid.
std::vector<double> initial_values(const InitialCondition& ic, const Grid& grid, const Params& params);

}  // namespace bec

#include "bec/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace bec {

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
    throw ConfigError(key + ": expected a number, got '" + text + "'");
  return v;
}

long to_long(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  long v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
    throw ConfigError(key + ": expected an integer, got '" + text + "'");
  return v;
}

int to_int(const std::string& key, const std::string& text) {
  const long v = to_long(key, text);
  if (v < -2147483647L || v > 2147483647L) throw ConfigError(key + ": integer out of range");
  return static_cast<int>(v);
}

bool to_bool(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw ConfigError(key + ": expected a boolean, got '" + text + "'");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> to_doubles(const std::string& key, const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) out.push_back(to_double(key, item));
  return out;
}

}  // namespace

void apply_setting(RunConfig& c, const std::string& key, const std::string& value) {
  auto& p = c.params;
  auto& ctl = c.control;
  auto& ic = c.initial;
  const std::string& v = value;

  if (key == "params.n") p.n = to_double(key, v);
  else if (key == "params.alpha") p.alpha = to_double(key, v);
  else if (key == "params.beta") p.beta = to_double(key, v);
  else if (key == "params.gamma") p.gamma = to_double(key, v);
  else if (key == "params.L") p.L = to_double(key, v);
  else if (key == "params.eps") p.eps = to_double(key, v);
  else if (key == "params.k") p.k = to_double(key, v);
  else if (key == "params.eps_star") p.eps_star = to_double(key, v);
  else if (key == "grid.N") p.N = to_int(key, v);
  else if (key == "grid.p") c.grading = to_double(key, v);
  else if (key == "control.dt_init") ctl.dt_init = to_double(key, v);
  else if (key == "control.dt_min") ctl.dt_min = to_double(key, v);
  else if (key == "control.dt_max") ctl.dt_max = to_double(key, v);
  else if (key == "control.newton_tol") ctl.newton_tol = to_double(key, v);
  else if (key == "control.newton_max_iter") ctl.newton_max_iter = to_int(key, v);
  else if (key == "control.safety") ctl.safety = to_double(key, v);
  else if (key == "control.u_floor") ctl.u_floor = to_double(key, v);
  else if (key == "control.u_ceil") ctl.u_ceil = to_double(key, v);
  else if (key == "initial.kind") {
    const std::string kind = trim(v);
    if (kind != "constant" && kind != "cosine" && kind != "power" && kind != "file")
      throw ConfigError(key + ": unknown initial condition '" + kind + "'");
    ic.kind = kind;
  } else if (key == "initial.value") ic.value = to_double(key, v);
  else if (key == "initial.base") ic.base = to_double(key, v);
  else if (key == "initial.amplitude") ic.amplitude = to_double(key, v);
  else if (key == "initial.mode") ic.mode = to_int(key, v);
  else if (key == "initial.sigma") ic.sigma = to_double(key, v);
  else if (key == "initial.path") ic.path = trim(v);
  else if (key == "run.t_end") c.t_end = to_double(key, v);
  else if (key == "run.snapshot_stride" || key == "output.stride") c.snapshots.stride = to_int(key, v);
  else if (key == "run.snapshot_interval" || key == "output.interval") c.snapshots.interval = to_double(key, v);
  else if (key == "output.dir") c.out_dir = trim(v);
  else if (key == "verify.corpus") c.verify.corpus = to_int(key, v);
  else if (key == "verify.seed") c.verify.seed = static_cast<std::uint64_t>(to_long(key, v));
  else if (key == "verify.lemmas") {
    c.verify.lemmas.clear();
    try {
      for (const auto& name : split_list(v)) c.verify.lemmas.push_back(lab::lemma_from_string(name));
    } catch (const std::exception& e) {
      throw ConfigError(key + ": " + e.what());
    }
  } else if (key == "verify.eta") c.verify.eta = to_doubles(key, v);
  else if (key == "verify.pointwise") c.verify.pointwise = to_bool(key, v);
  else if (key == "verify.eps") c.verify.eps = to_double(key, v);
  else if (key == "verify.constant_scale") c.verify.constant_scale = to_double(key, v);
  else if (key == "continuation.eps") c.continuation.eps = to_doubles(key, v);
  else if (key == "continuation.interval") c.continuation.interval = to_double(key, v);
  else if (key == "continuation.workers") c.continuation.workers = to_int(key, v);
  else if (key == "steady.sigma") c.steady.sigma = to_doubles(key, v);
  else if (key == "steady.N") {
    c.steady.N.clear();
    for (const auto& item : split_list(v)) c.steady.N.push_back(to_int(key, item));
  } else if (key == "steady.x_cut") c.steady.x_cut = to_double(key, v);
  else if (key == "steady.p") c.steady.grading = to_double(key, v);
  else if (key == "sweep.workers") c.sweep.workers = to_int(key, v);
  else if (key.rfind("sweep.", 0) == 0) {
    SweepAxis axis{key.substr(6), split_list(v)};
    if (axis.values.empty()) throw ConfigError(key + ": sweep axis needs at least one value");
    RunConfig probe;
    for (const auto& item : axis.values) apply_setting(probe, axis.key, item);
    c.sweep.axes.push_back(std::move(axis));
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
  c.entries[key] = trim(value);
}

RunConfig parse_config(const std::string& text) {
  boost::property_tree::ptree tree;
  std::istringstream in(text);
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  RunConfig config;
  for (const auto& [section, body] : tree) {
    if (body.empty()) throw ConfigError("config entry '" + section + "' is outside any section");
    for (const auto& [key, node] : body) apply_setting(config, section + "." + key, node.data());
  }
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::vector<double> initial_values(const InitialCondition& ic, const Grid& grid, const Params& params) {
  const auto& x = grid.x();
  std::vector<double> u(x.size());
  if (ic.kind == "constant") {
    std::fill(u.begin(), u.end(), ic.value);
  } else if (ic.kind == "cosine") {
    for (std::size_t i = 0; i < x.size(); ++i)
      u[i] = ic.base + ic.amplitude * std::cos(ic.mode * std::numbers::pi * x[i] / grid.L());
  } else if (ic.kind == "power") {
    const double lo = 1.0 / params.k();
    const double hi = params.k();
    for (std::size_t i = 0; i < x.size(); ++i)
      u[i] = x[i] > 0.0 ? std::clamp(std::pow(x[i], -ic.sigma), lo, hi) : hi;
  } else if (ic.kind == "file") {
    std::ifstream in(ic.path);
    if (!in) throw ConfigError("initial.path: cannot read '" + ic.path + "'");
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
      line = trim(line);
      if (line.empty() || line[0] == '#') continue;
      const auto comma = line.rfind(',');
      const std::string field = comma == std::string::npos ? line : line.substr(comma + 1);
      try {
        values.push_back(to_double("initial.path", field));
      } catch (const ConfigError&) {
        if (values.empty()) continue;  // header row
        throw;
      }
    }
    if (values.size() != x.size())
      throw ConfigError("initial.path: expected " + std::to_string(x.size()) + " values, got " +
                        std::to_string(values.size()));
    u = std::move(values);
  } else {
    throw ConfigError("initial.kind: unknown initial condition '" + ic.kind + "'");
  }
  return u;
}

}  // namespace bec

#include "bec/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <thread>

#include "json.hpp"

#include "bec/functionals.hpp"
#include "bec/grid.hpp"
#include "bec/lab.hpp"
#include "bec/model.hpp"
#include "bec/regularization.hpp"

#ifndef BEC_VERSION
#define BEC_VERSION "0.0.0"
#endif

namespace bec {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ordered_json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  return out;
}

void write_json(const fs::path& path, const ordered_json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

void prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory '" + dir.string() + "'");
}

const char* const kSchema = R"(# Output schema

All floating-point values use 17 significant digits. Non-finite values are
written as `nan` in CSV and `null` in JSON.

## snapshots.csv (run)
| column | meaning |
|---|---|
| t | snapshot time |
| x | node coordinate |
| u | nodal value |

## diagnostics.csv (run)
One row per snapshot.
| column | meaning |
|---|---|
| t | snapshot time |
| mass_beta | integral of (x+eps)^beta u |
| grad_energy | integral of (x+eps)^gamma u_x^2 |
| diss1..diss5 | weighted dissipation integrals: u^n u_xxx^2, u^(n-2) u_x^2 u_xx^2, u^(n-4) u_x^6, u^n u_xx^2, u^(n-2) u_x^4 |
| sup_u | max of u |
| sup_bound | a-priori bound on sup u from mass and gradient energy |
| holder_C | measured spatial Hoelder constant at exponent theta |
| deadcore | integral of u^-2 |
| energy | integral of x^(3/2) u |
| entropy | integral of ((1+u) log(1+u) - u log u) x^(1/2) |

## summary.json (run)
`stop` {kind: Completed | Blowup | DeadCore | StepFailure, t_event, detail},
`steps`, `mass`, `derived` parameters, `ode_bound`, `config` echo, `code_version`.

## timing.json
`wall_seconds`. Kept apart from summary.json so the other artifacts are reproducible byte for byte.

## inequalities.jsonl (verify)
One JSON object per line: function, seed, lemma (L2 | L3 | L4 | L6 | Linter | L31 | L32),
eta (null for the pointwise bounds L31/L32), lhs, rhs, margin = rhs - lhs, pass.

## continuation.json / index.csv (continuation)
index.csv columns: j, eps_from, eps_to, distance. distance is the max over common
snapshot times of sup|u_eps_j - u_eps_(j+1)|.

## steady.json / index.csv (steady)
index.csv columns: sigma, N, h, window_nodes, discrete_residual, ratio, consistency_error,
scheme_residual, member. ratio is residual(N/2) / residual(N) for consecutive N entries.

## index.csv (sweep)
Columns: cell, dir, one column per swept key, status (ok | failed | invalid | error),
stop_kind, t_event, exit_code. Each cell directory holds the full run artifacts.

## error.json
`error` (config | validation | domain | io | internal), `message`, and `violations`
[{name, bound, value}] for validation errors.
)";

void write_schema(const fs::path& dir) {
  auto out = open_out(dir / "schema.md");
  out << kSchema;
}

ordered_json config_echo(const RunConfig& config) {
  ordered_json echo = ordered_json::object();
  for (const auto& [key, value] : config.entries) {
    if (key == "output.dir" || key.rfind("sweep.", 0) == 0) continue;
    echo[key] = value;
  }
  return echo;
}

ordered_json header(const char* command, const RunConfig& config) {
  ordered_json j;
  j["command"] = command;
  j["code_version"] = code_version();
  j["config"] = config_echo(config);
  return j;
}

ordered_json derived_json(const Params& p) {
  ordered_json d;
  d["eps0"] = p.eps0();
  d["eps_star"] = p.eps_star();
  d["nstar"] = p.nstar();
  d["theta"] = p.theta();
  d["theta_time"] = p.theta_time();
  d["lambda"] = lambda_lower(p.eps(), p.L());
  d["dissipation_power"] = p.dissipation_power();
  return d;
}

void write_error(const fs::path& dir, const ordered_json& error) {
  std::cerr << error.dump() << '\n';
  std::error_code ec;
  fs::create_directories(dir, ec);
  std::ofstream out(dir / "error.json", std::ios::binary | std::ios::trunc);
  if (out) out << error.dump(2) << '\n';
}

/// Runs `body`, turning exceptions into error.json and exit codes.
int guarded(const fs::path& dir, const std::function<int()>& body) {
  auto fail = [&](const char* kind, const std::string& message, int code) {
    ordered_json e;
    e["error"] = kind;
    e["message"] = message;
    write_error(dir, e);
    return code;
  };
  try {
    return body();
  } catch (const ValidationError& e) {
    ordered_json j;
    j["error"] = "validation";
    j["message"] = e.what();
    j["violations"] = ordered_json::array();
    for (const auto& v : e.violations())
      j["violations"].push_back({{"name", v.name}, {"bound", num(v.bound)}, {"value", num(v.value)}});
    write_error(dir, j);
    return kExitConfig;
  } catch (const ConfigError& e) {
    return fail("config", e.what(), kExitConfig);
  } catch (const DomainError& e) {
    return fail("domain", e.what(), kExitConfig);
  } catch (const IoError& e) {
    return fail("io", e.what(), kExitConfig);
  } catch (const fs::filesystem_error& e) {
    return fail("io", e.what(), kExitConfig);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), kExitFailure);
  }
}

struct RunArtifacts {
  StopEvent stop;
  int exit_code = kExitOk;
};

RunArtifacts execute_run(const RunConfig& config) {
  const fs::path dir = config.out_dir;
  const Params params = validate(config.params);
  config.control.check(params);
  if (!(config.t_end > 0.0) || !std::isfinite(config.t_end)) throw DomainError("run.t_end must be positive");
  const Grid grid = Grid::build(params.N(), params.L(), config.grading);
  const Model model = Model::make(params, grid);
  std::vector<double> u0 = initial_values(config.initial, grid, params);
  prepare_dir(dir);

  const auto start = std::chrono::steady_clock::now();
  const Trajectory traj = run(model, u0, config.control, config.t_end, config.snapshots);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  {
    auto out = open_out(dir / "snapshots.csv");
    out << "t,x,u\n";
    for (std::size_t s = 0; s < traj.times.size(); ++s) {
      const std::string t = fmt(traj.times[s]);
      for (std::size_t i = 0; i < grid.x().size(); ++i)
        out << t << ',' << fmt(grid.x()[i]) << ',' << fmt(traj.states[s][i]) << '\n';
    }
  }
  {
    auto out = open_out(dir / "diagnostics.csv");
    out << "t,mass_beta,grad_energy,diss1,diss2,diss3,diss4,diss5,sup_u,sup_bound,holder_C,deadcore,energy,"
           "entropy\n";
    for (const auto& d : traj.diagnostics) {
      out << fmt(d.t) << ',' << fmt(d.mass_beta) << ',' << fmt(d.grad_energy);
      for (double v : d.dissipation) out << ',' << fmt(v);
      out << ',' << fmt(d.sup_u) << ',' << fmt(d.sup_bound) << ',' << fmt(d.holder_C) << ',' << fmt(d.deadcore)
          << ',' << fmt(d.kinetic_energy) << ',' << fmt(d.entropy) << '\n';
    }
  }

  ordered_json j = header("run", config);
  j["stop"] = {{"kind", to_string(traj.stop.kind)}, {"t_event", num(traj.stop.t_event)}, {"detail", traj.stop.detail}};
  j["steps"] = {{"accepted", traj.accepted_steps},
                {"rejected", traj.rejected_steps},
                {"newton_iterations", traj.newton_iterations},
                {"snapshots", traj.times.size()}};
  const double m0 = traj.diagnostics.empty() ? 0.0 : traj.diagnostics.front().mass_beta;
  const double m1 = traj.diagnostics.empty() ? 0.0 : traj.diagnostics.back().mass_beta;
  j["mass"] = {{"initial", num(m0)}, {"final", num(m1)}, {"relative_drift", num(m0 != 0.0 ? std::abs(m1 - m0) / m0 : 0.0)}};
  j["derived"] = derived_json(params);

  std::vector<double> ts, ys;
  for (const auto& d : traj.diagnostics) {
    ts.push_back(d.t);
    ys.push_back(d.grad_energy);
  }
  if (!ys.empty()) {
    const OdeConstants c = fit_ode_constants(ts, ys, params.n());
    const OdeBound b = ode_bound(ys.front(), std::max(c.c5, 0.0), std::max(c.c6, 0.0), params.n());
    j["ode_bound"] = {{"A", num(ys.front())}, {"c5", num(c.c5)}, {"c6", num(c.c6)}, {"T0", num(b.T0)},
                      {"overflow", b.overflow}};
  }
  write_json(dir / "summary.json", j);
  write_json(dir / "timing.json", ordered_json{{"wall_seconds", wall}});
  write_schema(dir);

  RunArtifacts a;
  a.stop = traj.stop;
  a.exit_code = traj.stop.kind == StopKind::StepFailure ? kExitFailure : kExitOk;
  return a;
}

int worker_count(int requested, std::size_t jobs) {
  const int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const int w = requested > 0 ? requested : hw;
  return std::max(1, std::min<int>(w, static_cast<int>(std::max<std::size_t>(jobs, 1))));
}

}  // namespace

const char* code_version() { return BEC_VERSION; }

int cmd_run(const RunConfig& config) {
  return guarded(config.out_dir, [&] { return execute_run(config).exit_code; });
}

int cmd_verify(const RunConfig& config) {
  return guarded(config.out_dir, [&] {
    const fs::path dir = config.out_dir;
    const Params params = validate(config.params);
    const auto& v = config.verify;
    if (v.corpus < 0) throw ConfigError("verify.corpus must be nonnegative");
    for (double eta : v.eta)
      if (!(eta > 0.0 && eta < 1.0)) throw ConfigError("verify.eta values must lie in (0, 1)");
    const double eps = v.eps >= 0.0 ? v.eps : params.eps();
    const lab::WeightSetting setting = lab::WeightSetting::from(params, eps);
    prepare_dir(dir);

    const auto functions = lab::corpus(v.seed, v.corpus, params.L());
    auto out = open_out(dir / "inequalities.jsonl");
    long total = 0, failures = 0;
    std::map<std::string, long> failures_by_lemma;
    double sharpest = 0.0;  // max lhs / rhs for L6 at eta = 1/2
    bool probed = false;

    auto emit = [&](std::size_t i, const lab::InequalityReport& r, bool pointwise) {
      ordered_json line;
      line["function"] = i;
      line["seed"] = v.seed + i;
      line["lemma"] = lab::to_string(r.lemma);
      line["eta"] = pointwise ? ordered_json(nullptr) : num(r.eta);
      line["lhs"] = num(r.lhs);
      line["rhs"] = num(r.rhs);
      line["margin"] = num(r.margin);
      line["pass"] = r.pass;
      out << line.dump() << '\n';
      ++total;
      if (!r.pass) {
        ++failures;
        ++failures_by_lemma[lab::to_string(r.lemma)];
      }
    };

    for (std::size_t i = 0; i < functions.size(); ++i) {
      const lab::Integrals values = lab::integrals(functions[i], setting);
      for (lab::Lemma lemma : v.lemmas) {
        if (lemma == lab::Lemma::L31 || lemma == lab::Lemma::L32) continue;
        for (double eta : v.eta) {
          const auto r = lab::check_inequality(lemma, values, setting, eta, v.constant_scale);
          emit(i, r, false);
          if (lemma == lab::Lemma::L6 && eta == 0.5 && r.rhs > 0.0) {
            sharpest = std::max(sharpest, r.lhs / r.rhs);
            probed = true;
          }
        }
      }
      if (v.pointwise) {
        for (const auto& r : lab::check_pointwise_bounds(functions[i], setting)) emit(i, r, true);
      }
    }
    if (!out) throw IoError("write failed for inequalities.jsonl");

    ordered_json j = header("verify", config);
    j["setting"] = {{"n", setting.n}, {"alpha", setting.alpha}, {"beta", setting.beta},
                    {"gamma", setting.gamma}, {"L", setting.L}, {"eps", setting.eps}};
    j["reports"] = total;
    j["failures"] = failures;
    j["failures_by_lemma"] = failures_by_lemma;
    j["sharpness_probe"] = {{"lemma", "L6"},
                            {"eta", 0.5},
                            {"evaluated", probed},
                            {"max_lhs_over_rhs", probed ? num(sharpest) : ordered_json(nullptr)},
                            {"attained", probed && sharpest > 0.5}};
    write_json(dir / "summary.json", j);
    write_schema(dir);
    return failures == 0 ? kExitOk : kExitFailure;
  });
}

int cmd_continuation(const RunConfig& config) {
  return guarded(config.out_dir, [&] {
    const fs::path dir = config.out_dir;
    const Params params = validate(config.params);
    config.control.check(params);
    const auto& c = config.continuation;
    if (c.eps.empty()) throw ConfigError("continuation.eps must list at least one value");
    const Grid grid = Grid::build(params.N(), params.L(), config.grading);
    const auto u0 = initial_values(config.initial, grid, params);
    const double interval = c.interval > 0.0 ? c.interval : config.t_end / 10.0;
    prepare_dir(dir);

    const ContinuationReport report = continuation(u0, params, grid, c.eps, config.control, config.t_end,
                                                   interval, c.workers);

    ordered_json j = header("continuation", config);
    j["members"] = ordered_json::array();
    bool step_failure = false;
    for (const auto& m : report.members) {
      step_failure = step_failure || m.stop.kind == StopKind::StepFailure;
      j["members"].push_back({{"eps", m.eps},
                              {"stop", {{"kind", to_string(m.stop.kind)},
                                        {"t_event", num(m.stop.t_event)},
                                        {"detail", m.stop.detail}}},
                              {"holder_spatial", num(m.holder_spatial)},
                              {"holder_temporal", num(m.holder_temporal)},
                              {"mass_drift", num(m.mass_drift)}});
    }
    j["common_times"] = report.common_times;
    ordered_json d = ordered_json::array();
    for (double x : report.distances) d.push_back(num(x));
    j["distances"] = d;
    j["cauchy"] = report.cauchy;
    write_json(dir / "continuation.json", j);

    auto out = open_out(dir / "index.csv");
    out << "j,eps_from,eps_to,distance\n";
    for (std::size_t k = 0; k < report.distances.size(); ++k)
      out << k << ',' << fmt(c.eps[k]) << ',' << fmt(c.eps[k + 1]) << ',' << fmt(report.distances[k]) << '\n';
    write_schema(dir);
    return step_failure ? kExitFailure : kExitOk;
  });
}

int cmd_steady(const RunConfig& config) {
  return guarded(config.out_dir, [&] {
    const fs::path dir = config.out_dir;
    const Params params = validate(config.params);
    const auto& s = config.steady;
    if (s.N.empty() || s.sigma.empty()) throw ConfigError("steady.N and steady.sigma must be nonempty");
    const lab::WeightSetting setting = lab::WeightSetting::from(params);
    const double x_cut = s.x_cut > 0.0 ? s.x_cut : params.L() / 10.0;
    prepare_dir(dir);

    ordered_json j = header("steady", config);
    j["exceptional"] = lab::exceptional_exponents(setting.alpha, setting.n);
    j["x_cut"] = x_cut;
    j["results"] = ordered_json::array();
    auto out = open_out(dir / "index.csv");
    out << "sigma,N,h,window_nodes,discrete_residual,ratio,consistency_error,scheme_residual,member\n";
    for (double sigma : s.sigma) {
      double previous = std::nan("");
      for (int N : s.N) {
        const Grid grid = Grid::build(N, params.L(), s.grading);
        const auto r = lab::steady_residual(sigma, setting, grid, x_cut);
        const double ratio = r.discrete_residual > 0.0 ? previous / r.discrete_residual : std::nan("");
        out << fmt(sigma) << ',' << N << ',' << fmt(params.L() / N) << ',' << r.window_nodes << ','
            << fmt(r.discrete_residual) << ',' << fmt(ratio) << ',' << fmt(r.consistency_error) << ','
            << fmt(r.scheme_residual) << ',' << (r.member ? 1 : 0) << '\n';
        j["results"].push_back({{"sigma", sigma},
                                {"N", N},
                                {"member", r.member},
                                {"exponent", r.exponent},
                                {"window_nodes", r.window_nodes},
                                {"closed_form_max", num(r.closed_form_max)},
                                {"discrete_residual", num(r.discrete_residual)},
                                {"ratio", num(ratio)},
                                {"consistency_error", num(r.consistency_error)},
                                {"scheme_residual", num(r.scheme_residual)}});
        previous = r.discrete_residual;
      }
    }
    write_json(dir / "steady.json", j);
    write_schema(dir);
    return kExitOk;
  });
}

int cmd_sweep(const RunConfig& config) {
  return guarded(config.out_dir, [&] {
    const fs::path dir = config.out_dir;
    const auto& axes = config.sweep.axes;
    std::size_t cells = 1;
    for (const auto& a : axes) cells *= a.values.size();
    prepare_dir(dir);

    struct Cell {
      std::vector<std::string> values;
      std::string name;
      std::string status;
      std::string stop_kind;
      double t_event = std::nan("");
      int exit_code = 0;
    };
    std::vector<Cell> grid(cells);
    for (std::size_t c = 0; c < cells; ++c) {
      std::size_t rem = c;
      grid[c].values.resize(axes.size());
      for (std::size_t a = axes.size(); a-- > 0;) {
        grid[c].values[a] = axes[a].values[rem % axes[a].values.size()];
        rem /= axes[a].values.size();
      }
      char name[32];
      std::snprintf(name, sizeof name, "cell_%04zu", c);
      grid[c].name = name;
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t c = next++; c < cells; c = next++) {
        Cell& cell = grid[c];
        RunConfig cfg = config;
        cfg.sweep = {};
        cfg.out_dir = (dir / cell.name).string();
        int code = guarded(cfg.out_dir, [&] {
          for (std::size_t a = 0; a < axes.size(); ++a) apply_setting(cfg, axes[a].key, cell.values[a]);
          const RunArtifacts r = execute_run(cfg);
          cell.stop_kind = to_string(r.stop.kind);
          cell.t_event = r.stop.t_event;
          return r.exit_code;
        });
        cell.exit_code = code;
        cell.status = code == kExitOk ? "ok" : code == kExitConfig ? "invalid" : cell.stop_kind.empty() ? "error" : "failed";
      }
    };
    const int pool = worker_count(config.sweep.workers, cells);
    std::vector<std::thread> threads;
    for (int w = 0; w < pool; ++w) threads.emplace_back(worker);
    for (auto& t : threads) t.join();

    auto out = open_out(dir / "index.csv");
    out << "cell,dir";
    for (const auto& a : axes) out << ',' << a.key;
    out << ",status,stop_kind,t_event,exit_code\n";
    bool any_error = false;
    for (std::size_t c = 0; c < cells; ++c) {
      const Cell& cell = grid[c];
      out << c << ',' << cell.name;
      for (const auto& v : cell.values) out << ',' << v;
      out << ',' << cell.status << ',' << cell.stop_kind << ',' << fmt(cell.t_event) << ',' << cell.exit_code << '\n';
      any_error = any_error || cell.exit_code != kExitOk;
    }
    write_schema(dir);
    return any_error ? kExitFailure : kExitOk;
  });
}

int run_command(const std::string& command, const RunConfig& config) {
  if (command == "run") return cmd_run(config);
  if (command == "verify") return cmd_verify(config);
  if (command == "continuation") return cmd_continuation(config);
  if (command == "steady") return cmd_steady(config);
  if (command == "sweep") return cmd_sweep(config);
  ordered_json e{{"error", "config"}, {"message", "unknown subcommand '" + command + "'"}};
  std::cerr << e.dump() << '\n';
  return kExitConfig;
}

int run_command_file(const std::string& command, const std::string& path, const std::string& out_dir) {
  RunConfig config;
  try {
    config = load_config(path);
  } catch (const ConfigError& e) {
    const fs::path dir = out_dir.empty() ? fs::path("out") : fs::path(out_dir);
    write_error(dir, ordered_json{{"error", "config"}, {"message", e.what()}});
    return kExitConfig;
  }
  if (!out_dir.empty()) config.out_dir = out_dir;
  return run_command(command, config);
}

}  // namespace bec

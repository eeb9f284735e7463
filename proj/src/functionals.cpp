#include "bec/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bec/errors.hpp"

namespace bec {

namespace {

std::vector<double> shifted_power(const Grid& grid, double eps, double power) {
  const auto& x = grid.x();
  std::vector<double> w(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) w[i] = std::pow(x[i] + eps, power);
  return w;
}

void require_positive(std::span<const double> u, const char* who) {
  for (double v : u) {
    if (!(v > 0.0)) throw DomainError(std::string(who) + ": state must be strictly positive");
  }
}

double rk4_step(double y, double h, double c5, double c6, double p) {
  auto f = [&](double v) { return c5 + c6 * std::pow(std::max(v, 0.0), p); };
  const double k1 = f(y);
  const double k2 = f(y + 0.5 * h * k1);
  const double k3 = f(y + 0.5 * h * k2);
  const double k4 = f(y + h * k3);
  return y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

double weighted_mass(const Grid& grid, double eps, double beta, std::span<const double> u) {
  const auto w = shifted_power(grid, eps, beta);
  double sum = 0.0;
  const auto& q = grid.weights();
  for (std::size_t i = 0; i < u.size(); ++i) sum += q[i] * w[i] * std::abs(u[i]);
  return sum;
}

double weighted_mass(const Model& model, std::span<const double> u) {
  return weighted_mass(model.grid(), model.params().eps(), model.params().beta(), u);
}

double grad_energy(const Grid& grid, double eps, double gamma, std::span<const double> u) {
  const auto ux = d1(u, grid);
  const auto w = shifted_power(grid, eps, gamma);
  std::vector<double> sq(ux.size());
  for (std::size_t i = 0; i < ux.size(); ++i) sq[i] = ux[i] * ux[i];
  return quad(w, sq, grid);
}

double grad_energy(const Model& model, std::span<const double> u) {
  return grad_energy(model.grid(), model.params().eps(), model.params().gamma(), u);
}

std::array<double, 5> dissipation_terms(const Grid& grid, double eps, double n, double a,
                                        std::span<const double> u) {
  require_positive(u, "dissipation_terms");
  const auto ux = d1(u, grid);
  const auto uxx = d2(u, grid);
  const auto uxxx = d1(uxx, grid);
  const auto& x = grid.x();
  const auto& q = grid.weights();

  std::array<double, 5> out{};
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double wa = std::pow(x[i] + eps, a);
    const double wa2 = std::pow(x[i] + eps, a - 2.0);
    const double un2 = std::pow(u[i], n - 2.0);
    const double un = un2 * u[i] * u[i];
    const double un4 = un2 / (u[i] * u[i]);
    const double ux2 = ux[i] * ux[i];
    const double uxx2 = uxx[i] * uxx[i];
    out[0] += q[i] * wa * un * uxxx[i] * uxxx[i];
    out[1] += q[i] * wa * un2 * ux2 * uxx2;
    out[2] += q[i] * wa * un4 * ux2 * ux2 * ux2;
    out[3] += q[i] * wa2 * un * uxx2;
    out[4] += q[i] * wa2 * un2 * ux2 * ux2;
  }
  return out;
}

std::array<double, 5> dissipation_terms(const Model& model, std::span<const double> u) {
  const auto& p = model.params();
  return dissipation_terms(model.grid(), p.eps(), p.n(), p.dissipation_power(), u);
}

double holder_constant(double gamma, double L) {
  if (!(gamma < 1.0)) throw DomainError("holder_constant: gamma must be < 1");
  if (gamma >= 0.0) return std::sqrt(1.0 / (1.0 - gamma));
  return std::pow(L + 1.0, -0.5 * gamma);
}

double sup_constant(double beta, double gamma, double L) {
  const double c1 = (2.0 / L) * std::max(std::pow(0.5 * L, -beta), std::pow(L + 1.0, -beta));
  const double theta = holder_exponents(gamma).first;
  return std::max(1.0, c1) * (1.0 + holder_constant(gamma, L) * std::max(1.0, std::pow(L, theta)));
}

double sup_estimate(const Grid& grid, double eps, double beta, double gamma,
                    std::span<const double> u) {
  const double c = sup_constant(beta, gamma, grid.L());
  return c * (weighted_mass(grid, eps, beta, u) + std::sqrt(grad_energy(grid, eps, gamma, u)));
}

double sup_estimate(const Model& model, std::span<const double> u) {
  const auto& p = model.params();
  return sup_estimate(model.grid(), p.eps(), p.beta(), p.gamma(), u);
}

double holder_modulus(const Grid& grid, std::span<const double> u, double theta) {
  if (grid.cells() > 2048) throw DomainError("holder_modulus: at most 2048 cells supported");
  if (!(theta > 0.0 && theta <= 0.5)) throw DomainError("holder_modulus: theta must lie in (0, 1/2]");
  const auto& x = grid.x();
  const auto [lo, hi] = std::minmax_element(u.begin(), u.end());
  const double range = *hi - *lo;
  auto power = [theta](double d) { return theta == 0.5 ? std::sqrt(d) : std::pow(d, theta); };
  // Neighbor quotients give a lower bound that lets the pair scan stop early.
  double best = 0.0;
  for (std::size_t i = 0; i + 1 < u.size(); ++i)
    best = std::max(best, std::abs(u[i + 1] - u[i]) / power(x[i + 1] - x[i]));
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = i + 1; j < u.size(); ++j) {
      const double dx = power(x[j] - x[i]);
      if (range / dx <= best) break;
      best = std::max(best, std::abs(u[j] - u[i]) / dx);
    }
  }
  return best;
}

double deadcore_functional(const Grid& grid, std::span<const double> u) {
  require_positive(u, "deadcore_functional");
  std::vector<double> f(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) f[i] = 1.0 / (u[i] * u[i]);
  return quad(f, grid);
}

PhysicalDiagnostics physical_diagnostics(const Grid& grid, std::span<const double> u) {
  const auto& x = grid.x();
  const auto& q = grid.weights();
  PhysicalDiagnostics d;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double v = std::max(u[i], 0.0);
    const double s = v > 0.0 ? (1.0 + v) * std::log1p(v) - v * std::log(v) : 0.0;
    d.kinetic_energy += q[i] * std::pow(x[i], 1.5) * v;
    d.entropy += q[i] * std::sqrt(x[i]) * s;
  }
  return d;
}

OdeBound ode_bound(double A, double c5, double c6, double n) {
  if (!(A >= 0.0 && c5 >= 0.0 && c6 >= 0.0)) throw DomainError("ode_bound: A, c5, c6 must be >= 0");
  const double p = 0.5 * (n + 2.0);
  const double target = A + 1.0;
  const double peak_rate = c5 + c6 * std::pow(target, p);

  OdeBound out;
  out.times.push_back(0.0);
  out.values.push_back(A);
  if (peak_rate == 0.0) {
    out.times.push_back(1.0);
    out.values.push_back(A);
    return out;
  }
  if (!std::isfinite(peak_rate)) {
    out.T0 = 0.0;
    out.overflow = true;
    return out;
  }

  const double dt = 1e-5 * std::min(1.0, 1.0 / peak_rate);
  const long max_steps = static_cast<long>(std::ceil(1.0 / dt));
  const long sample_every = std::max(1L, max_steps / 1000);

  double t = 0.0;
  double y = A;
  for (long step = 1; t < 1.0; ++step) {
    const double h = std::min(dt, 1.0 - t);
    const double next = rk4_step(y, h, c5, c6, p);
    if (!std::isfinite(next)) {
      out.overflow = true;
      out.T0 = t;
      return out;
    }
    if (next >= target) {
      double lo = 0.0;
      double hi = h;
      for (int it = 0; it < 200 && hi - lo > 1e-18; ++it) {
        const double mid = 0.5 * (lo + hi);
        (rk4_step(y, mid, c5, c6, p) >= target ? hi : lo) = mid;
      }
      out.T0 = t + hi;
      out.times.push_back(out.T0);
      out.values.push_back(target);
      return out;
    }
    t = (h == dt) ? step * dt : 1.0;
    y = next;
    if (step % sample_every == 0 || t >= 1.0) {
      out.times.push_back(t);
      out.values.push_back(y);
    }
  }
  out.T0 = 1.0;
  return out;
}

OdeConstants fit_ode_constants(std::span<const double> times, std::span<const double> y, double n) {
  const double p = 0.5 * (n + 2.0);
  std::vector<double> slope;
  std::vector<double> feature;
  for (std::size_t i = 0; i + 1 < times.size() && i + 1 < y.size(); ++i) {
    const double dt = times[i + 1] - times[i];
    if (!(dt > 0.0)) continue;
    slope.push_back((y[i + 1] - y[i]) / dt);
    feature.push_back(std::pow(std::max(0.5 * (y[i] + y[i + 1]), 0.0), p));
  }
  OdeConstants c;
  if (slope.empty()) return c;

  const double m = static_cast<double>(slope.size());
  double sf = 0, ss = 0, sff = 0, sfs = 0;
  for (std::size_t i = 0; i < slope.size(); ++i) {
    sf += feature[i];
    ss += slope[i];
    sff += feature[i] * feature[i];
    sfs += feature[i] * slope[i];
  }
  const double det = m * sff - sf * sf;
  if (std::abs(det) > 1e-300) {
    c.c6 = (m * sfs - sf * ss) / det;
    c.c5 = (ss - c.c6 * sf) / m;
  }
  if (c.c6 < 0.0 || std::abs(det) <= 1e-300) {
    c.c6 = 0.0;
    c.c5 = ss / m;
  }
  if (c.c5 < 0.0) {
    c.c5 = 0.0;
    c.c6 = sff > 0.0 ? std::max(0.0, sfs / sff) : 0.0;
  }
  return c;
}

DiagnosticsRecord diagnostics(const Model& model, const State& state) {
  const auto& grid = model.grid();
  const auto& p = model.params();
  const std::span<const double> u = state.u;

  DiagnosticsRecord r;
  r.t = state.t;
  r.mass_beta = weighted_mass(model, u);
  r.grad_energy = grad_energy(model, u);
  const bool positive = std::all_of(u.begin(), u.end(), [](double v) { return v > 0.0; });
  const double nan = std::numeric_limits<double>::quiet_NaN();
  r.dissipation = positive ? dissipation_terms(model, u) : std::array<double, 5>{nan, nan, nan, nan, nan};
  r.sup_u = *std::max_element(u.begin(), u.end());
  r.sup_bound = sup_estimate(model, u);
  r.holder_C = grid.cells() <= 2048 ? holder_modulus(grid, u, p.theta()) : nan;
  r.deadcore = positive ? deadcore_functional(grid, u) : nan;
  const auto phys = physical_diagnostics(grid, u);
  r.kinetic_energy = phys.kinetic_energy;
  r.entropy = phys.entropy;
  return r;
}

}  // namespace bec

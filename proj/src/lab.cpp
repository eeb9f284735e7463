#include "bec/lab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "bec/errors.hpp"
#include "bec/functionals.hpp"

namespace bec::lab {

namespace {

// Uniform double in [0, 1) with 53 random bits; independent of the standard
// library's distribution implementation.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct GaussRule {
  std::array<double, 3> node{-0.7745966692414834, 0.0, 0.7745966692414834};
  std::array<double, 3> weight{5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
};

template <class F>
double gauss(double L, int panels, F&& f) {
  const GaussRule rule;
  const double h = L / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * h;
    double cell = 0.0;
    for (int q = 0; q < 3; ++q) cell += rule.weight[q] * f(mid + 0.5 * h * rule.node[q]);
    sum += 0.5 * h * cell;
  }
  return sum;
}

InequalityReport finish(Lemma lemma, double lhs, double rhs, double eta, const WeightSetting& s) {
  InequalityReport r;
  r.lemma = lemma;
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.eta = eta;
  r.setting = s;
  r.pass = r.margin >= -kRelativeTolerance * std::abs(rhs);
  return r;
}

void require_eta(double eta) {
  if (!(eta > 0.0 && eta < 1.0)) throw DomainError("check_inequality: eta must lie in (0, 1)");
}

}  // namespace

std::array<double, 4> TestFunction::derivatives(double x) const {
  const double k = std::numbers::pi / L;
  const double t = k * x;
  const double c1 = std::cos(t);
  const double s1 = std::sin(t);
  std::array<double, 4> d{c0, 0.0, 0.0, 0.0};
  double cm = 1.0;  // cos(m t)
  double sm = 0.0;  // sin(m t)
  for (std::size_t m = 1; m <= a.size(); ++m) {
    const double c = cm * c1 - sm * s1;
    const double s = sm * c1 + cm * s1;
    cm = c;
    sm = s;
    const double km = k * static_cast<double>(m);
    const double am = a[m - 1];
    d[0] += am * cm;
    d[1] -= am * km * sm;
    d[2] -= am * km * km * cm;
    d[3] += am * km * km * km * sm;
  }
  return d;
}

double TestFunction::floor_margin() const {
  double s = 0.0;
  for (double v : a) s += std::abs(v);
  return c0 - s;
}

TestFunction random_test_function(std::uint64_t seed, int M, double floor, double L) {
  if (M < 0 || M > 16) throw DomainError("random_test_function: need 0 <= M <= 16");
  if (!(floor > 0.0)) throw DomainError("random_test_function: floor must be positive");
  std::mt19937_64 rng(seed);
  TestFunction f;
  f.L = L;
  f.a.resize(M);
  double total = 0.0;
  for (int m = 1; m <= M; ++m) {
    f.a[m - 1] = (2.0 * unit(rng) - 1.0) / (static_cast<double>(m) * m);
    total += std::abs(f.a[m - 1]);
  }
  f.c0 = total + floor;
  return f;
}

std::vector<TestFunction> corpus(std::uint64_t base_seed, int count, double L) {
  static constexpr double floors[] = {0.01, 0.1, 0.5, 1.0};
  std::vector<TestFunction> out;
  out.reserve(std::max(0, count));
  for (int i = 0; i < count; ++i)
    out.push_back(random_test_function(base_seed + static_cast<std::uint64_t>(i), 1 + i % 16, floors[i % 4], L));
  return out;
}

WeightSetting WeightSetting::from(const Params& p) { return from(p, p.eps()); }

WeightSetting WeightSetting::from(const Params& p, double eps) {
  if (!(eps >= 0.0 && eps < 1.0)) throw DomainError("WeightSetting: eps must lie in [0, 1)");
  return {p.n(), p.alpha(), p.beta(), p.gamma(), p.L(), eps};
}

const char* to_string(Lemma lemma) {
  switch (lemma) {
    case Lemma::L2: return "L2";
    case Lemma::L3: return "L3";
    case Lemma::L4: return "L4";
    case Lemma::L6: return "L6";
    case Lemma::Inter: return "Linter";
    case Lemma::L31: return "L31";
    case Lemma::L32: return "L32";
  }
  return "?";
}

Lemma lemma_from_string(const std::string& name) {
  for (Lemma l : {Lemma::L2, Lemma::L3, Lemma::L4, Lemma::L6, Lemma::Inter, Lemma::L31, Lemma::L32}) {
    if (name == to_string(l)) return l;
  }
  throw DomainError("unknown lemma id: " + name);
}

Integrals integrals(const TestFunction& u, const WeightSetting& s, int panels) {
  const double a = s.a();
  const double n = s.n;
  Integrals out;
  // One pass over the quadrature nodes accumulating all seven integrals.
  const GaussRule rule;
  const double h = s.L / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * h;
    for (int q = 0; q < 3; ++q) {
      const double x = mid + 0.5 * h * rule.node[q];
      const double wq = 0.5 * h * rule.weight[q];
      const auto d = u.derivatives(x);
      const double w = x + s.eps;
      const double wa = std::pow(w, a);
      const double wa2 = wa / (w * w);
      const double wa4 = wa2 / (w * w);
      const double wa6 = wa4 / (w * w);
      const double un2 = std::pow(d[0], n - 2.0);
      const double un = un2 * d[0] * d[0];
      const double un4 = un2 / (d[0] * d[0]);
      const double ux2 = d[1] * d[1];
      const double uxx2 = d[2] * d[2];
      out.uxxx += wq * wa * un * d[3] * d[3];
      out.mix += wq * wa * un2 * ux2 * uxx2;
      out.ux6 += wq * wa * un4 * ux2 * ux2 * ux2;
      out.uxx += wq * wa2 * un * uxx2;
      out.ux4 += wq * wa2 * un2 * ux2 * ux2;
      out.ux2 += wq * wa4 * un * ux2;
      out.base += wq * wa6 * un * d[0] * d[0];
    }
  }
  return out;
}

// Weighted first-derivative bound. Integrating u^n u_x^2 = u_x (u^(n+1))_x / (n+1) by
// parts and applying Young twice (eta/2 on the u_xx term, 1/2 on the term that
// reproduces the left side) gives C(eta) = (1/eta + (a-4)^2) / (n+1)^2.
double constant_l2(double eta, const WeightSetting& s) {
  const double a = s.a();
  return (1.0 / eta + (a - 4.0) * (a - 4.0)) / ((s.n + 1.0) * (s.n + 1.0));
}

// Second-derivative bound. Integrating u^n u_xx^2 by parts leaves three terms, split by
// Young with eta/2, eta/4, eta/4 on the highest-order pieces and remainders
//   c1 = 1/(2 eta), c2 = n^2/eta  (both multiplying the u_x^2 integral),
//   c3 = (a-2)^2/eta             (multiplying the base integral).
// The u_x^2 integral is absorbed with the first-derivative bound at eta' = 1/(2(c1+c2)),
// which costs half of the left side and c4 = (c1+c2) C_2(eta') on the base integral.
// Moving half the left side over doubles everything: C(eta) = 2 (c3 + c4).
double constant_l3(double eta, const WeightSetting& s) {
  const double a = s.a();
  const double c1 = 1.0 / (2.0 * eta);
  const double c2 = s.n * s.n / eta;
  const double c3 = (a - 2.0) * (a - 2.0) / eta;
  const double inner = 1.0 / (2.0 * (c1 + c2));
  const double c4 = (c1 + c2) * constant_l2(inner, s);
  return 2.0 * (c3 + c4);
}

// Fourth-power gradient bound. Integrating u^(n-2) u_x^4 = u_x^3 (u^(n-1))_x / (n-1) by parts:
//   Gamma = -3/(n-1) int w^(a-2) u^(n-1) u_x^2 u_xx - (a-2)/(n-1) int w^(a-3) u^(n-1) u_x^3.
// Young (2, 2) on the first term: Gamma/4 + k1 * [u_xx integral], k1 = 9/(n-1)^2.
// The second term is Gamma^(3/4) * base^(1/4) pointwise; Young (4/3, 4) with Gamma/4
// leaves k2 = 27 ((a-2)/(n-1))^4 / 4 on the base integral. Hence
//   Gamma <= 2 k1 [u_xx integral] + 2 k2 [base],
// and the second-derivative bound at eta / (2 k1) finishes it.
double constant_l4(double eta, const WeightSetting& s) {
  const double a = s.a();
  const double d = s.n - 1.0;
  const double k1 = 9.0 / (d * d);
  const double r = (a - 2.0) / d;
  const double k2 = 27.0 * r * r * r * r / 4.0;
  return 2.0 * k1 * constant_l3(eta / (2.0 * k1), s) + 2.0 * k2;
}

// Combination in the order second-derivative, fourth-power, first-derivative:
// each of the two higher bounds at eta/3, and the u_x^2 integral through the
// first-derivative bound at eta = 1 followed by the second-derivative bound at eta/3.
double constant_inter(double eta, const WeightSetting& s) {
  const double third = eta / 3.0;
  return 2.0 * constant_l3(third, s) + constant_l4(third, s) + constant_l2(1.0, s);
}

std::pair<double, double> constants_l6(double eta, const WeightSetting& s) {
  const double a = s.a();
  const double d2 = (s.n - 3.0) * (s.n - 3.0);
  return {25.0 / ((1.0 - eta) * d2), a * a / (eta * (1.0 - eta) * d2)};
}

InequalityReport check_inequality(Lemma lemma, const Integrals& v, const WeightSetting& s, double eta,
                                  double constant_scale) {
  require_eta(eta);
  switch (lemma) {
    case Lemma::L2:
      return finish(lemma, v.ux2, eta * v.uxx + constant_scale * constant_l2(eta, s) * v.base, eta, s);
    case Lemma::L3:
      return finish(lemma, v.uxx, eta * (v.uxxx + v.mix) + constant_scale * constant_l3(eta, s) * v.base, eta, s);
    case Lemma::L4:
      return finish(lemma, v.ux4, eta * (v.uxxx + v.mix) + constant_scale * constant_l4(eta, s) * v.base, eta, s);
    case Lemma::L6: {
      const auto [c_mix, c_ux4] = constants_l6(eta, s);
      return finish(lemma, v.ux6, constant_scale * (c_mix * v.mix + c_ux4 * v.ux4), eta, s);
    }
    case Lemma::Inter:
      return finish(lemma, v.uxx + v.ux4 + v.ux2,
                    eta * (v.uxxx + v.mix) + constant_scale * constant_inter(eta, s) * v.base, eta, s);
    case Lemma::L31:
    case Lemma::L32:
      break;
  }
  throw DomainError("check_inequality: pointwise bounds go through check_pointwise_bounds");
}

InequalityReport check_inequality(Lemma lemma, const TestFunction& u, const WeightSetting& s, double eta,
                                  double constant_scale) {
  require_eta(eta);
  return check_inequality(lemma, integrals(u, s), s, eta, constant_scale);
}

std::array<InequalityReport, 2> check_pointwise_bounds(const TestFunction& u, const WeightSetting& s) {
  const Grid grid = Grid::build(512, s.L, 1.0);
  std::vector<double> values(grid.nodes());
  for (int i = 0; i < grid.nodes(); ++i) values[i] = u.value(grid.x()[i]);

  const double theta = holder_exponents(s.gamma).first;
  const int panels = 2000;
  const double y = gauss(s.L, panels, [&](double x) {
    const double ux = u.derivatives(x)[1];
    return std::pow(x + s.eps, s.gamma) * ux * ux;
  });
  const double mass = gauss(s.L, panels, [&](double x) { return std::pow(x + s.eps, s.beta) * std::abs(u.value(x)); });

  double sup = 0.0;
  for (double v : values) sup = std::max(sup, std::abs(v));
  const double modulus = holder_modulus(grid, values, theta);

  return {finish(Lemma::L31, modulus, holder_constant(s.gamma, s.L) * std::sqrt(y), 0.0, s),
          finish(Lemma::L32, sup, sup_constant(s.beta, s.gamma, s.L) * (mass + std::sqrt(y)), 0.0, s)};
}

std::vector<double> exceptional_exponents(double alpha, double n) {
  std::vector<double> set{0.0, 1.0, (alpha - 3.0) / (n + 1.0), (alpha - 2.0) / (n + 1.0)};
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  return set;
}

SteadyReport steady_residual(double sigma, const WeightSetting& s, const Grid& grid, double x_cut) {
  if (!(sigma >= 0.0)) throw DomainError("steady_residual: sigma must be nonnegative");
  if (!(x_cut > 0.0 && x_cut < s.L)) throw DomainError("steady_residual: x_cut must lie in (0, L)");

  SteadyReport r;
  r.sigma = sigma;
  r.exceptional = exceptional_exponents(s.alpha, s.n);
  r.member = std::find(r.exceptional.begin(), r.exceptional.end(), sigma) != r.exceptional.end();
  const double e = s.alpha - (s.n + 1.0) * sigma - 2.0;
  r.exponent = e;

  const auto& x = grid.x();
  const int last = grid.cells();
  // Residual nodes need F at i-1..i+1 and u at i-2..i+2, all with x > 0 and inside the grid.
  int first = 3;
  while (first <= last && x[first] < x_cut) ++first;
  const int stop = last - 2;
  if (first > stop) throw DomainError("steady_residual: window too small for the grid");

  const int lo = first - 2;
  const int hi = stop + 2;
  std::vector<double> xs(x.begin() + lo, x.begin() + hi + 1);
  std::vector<double> u(xs.size()), inv(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    inv[i] = std::pow(xs[i], sigma);
    u[i] = 1.0 / inv[i];
  }
  const auto inv_xx = d2_points(xs, inv);
  const auto u_x = d1_points(xs, u);
  const auto u_xx = d2_points(xs, u);

  std::vector<double> flux(xs.size(), 0.0), scheme(xs.size(), 0.0);
  for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
    const double xa = std::pow(xs[i], s.alpha);
    flux[i] = xa * std::pow(u[i], s.n + 2.0) * inv_xx[i];
    const double un1 = std::pow(u[i], s.n - 1.0);
    scheme[i] = xa * un1 * (-u[i] * u_xx[i] + 2.0 * u_x[i] * u_x[i]);
  }
  const auto flux_xx = d2_points(xs, flux);
  const auto scheme_xx = d2_points(xs, scheme);

  const double coef = sigma * (sigma - 1.0) * e * (e - 1.0);
  for (int i = first; i <= stop; ++i) {
    const std::size_t k = static_cast<std::size_t>(i - lo);
    const double exact = coef == 0.0 ? 0.0 : coef * std::pow(x[i], e - 2.0);
    r.closed_form_max = std::max(r.closed_form_max, std::abs(exact));
    r.discrete_residual = std::max(r.discrete_residual, std::abs(flux_xx[k]));
    r.consistency_error = std::max(r.consistency_error, std::abs(flux_xx[k] - exact));
    r.scheme_residual = std::max(r.scheme_residual, std::abs(scheme_xx[k]));
    ++r.window_nodes;
  }
  return r;
}

}  // namespace bec::lab

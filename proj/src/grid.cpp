#include "bec/grid.hpp"

#include <cassert>
#include <cmath>

#include "bec/errors.hpp"

namespace bec {

namespace {

// Stencils in divided-difference form: with slopes sl = (v_i - v_{i-1}) / hm and
// sr = (v_{i+1} - v_i) / hp,
//   D1 = (hm sr + hp sl) / (hm + hp),   D2 = 2 (sr - sl) / (hm + hp).
// Linear data give sl == sr bit for bit, so D2 of a linear function is exactly 0.
double first_derivative(double hm, double hp, double sl, double sr) {
  return (hm * sr + hp * sl) / (hm + hp);
}

double second_derivative(double hm, double hp, double sl, double sr) {
  return 2.0 * (sr - sl) / (hm + hp);
}

template <class StencilFn>
void apply(std::span<const double> v, const Grid& grid, std::span<double> out, StencilFn op) {
  const int last = grid.cells();
  assert(static_cast<int>(v.size()) == last + 1 && out.size() == v.size());
  const auto& h = grid.h();
  for (int i = 0; i <= last; ++i) {
    // Even reflection: the ghost slope mirrors the first interior slope.
    const double sr = i == last ? (v[last - 1] - v[last]) / h[last - 1] : (v[i + 1] - v[i]) / h[i];
    const double sl = i == 0 ? (v[0] - v[1]) / h[0] : (v[i] - v[i - 1]) / h[i - 1];
    out[i] = op(grid.h_left(i), grid.h_right(i), sl, sr);
  }
}

template <class StencilFn>
std::vector<double> apply_points(std::span<const double> x, std::span<const double> v, StencilFn op) {
  std::vector<double> out(v.size(), 0.0);
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    const double hm = x[i] - x[i - 1];
    const double hp = x[i + 1] - x[i];
    out[i] = op(hm, hp, (v[i] - v[i - 1]) / hm, (v[i + 1] - v[i]) / hp);
  }
  return out;
}

}  // namespace

Grid Grid::build(int N, double L, double p) {
  if (N < 16) throw DomainError("Grid::build: need N >= 16");
  if (!(L > 0.0) || !std::isfinite(L)) throw DomainError("Grid::build: need L > 0");
  if (!(p >= 1.0 && p <= 3.0)) throw DomainError("Grid::build: grading exponent must lie in [1, 3]");

  Grid g;
  g.L_ = L;
  g.p_ = p;
  g.x_.resize(N + 1);
  for (int i = 0; i <= N; ++i) {
    const double s = static_cast<double>(i) / N;
    g.x_[i] = p == 1.0 ? L * s : L * std::pow(s, p);
  }
  g.x_.front() = 0.0;
  g.x_.back() = L;

  g.h_.resize(N);
  for (int i = 0; i < N; ++i) g.h_[i] = g.x_[i + 1] - g.x_[i];

  g.w_.assign(N + 1, 0.0);
  for (int i = 0; i < N; ++i) {
    g.w_[i] += 0.5 * g.h_[i];
    g.w_[i + 1] += 0.5 * g.h_[i];
  }
  return g;
}

void d1_into(std::span<const double> v, const Grid& grid, std::span<double> out) {
  apply(v, grid, out, first_derivative);
}

void d2_into(std::span<const double> v, const Grid& grid, std::span<double> out) {
  apply(v, grid, out, second_derivative);
}

std::vector<double> d1(std::span<const double> v, const Grid& grid) {
  std::vector<double> out(v.size());
  d1_into(v, grid, out);
  return out;
}

std::vector<double> d2(std::span<const double> v, const Grid& grid) {
  std::vector<double> out(v.size());
  d2_into(v, grid, out);
  return out;
}

std::vector<double> d1_points(std::span<const double> x, std::span<const double> v) {
  return apply_points(x, v, first_derivative);
}

std::vector<double> d2_points(std::span<const double> x, std::span<const double> v) {
  return apply_points(x, v, second_derivative);
}

double quad(std::span<const double> weight, std::span<const double> f, const Grid& grid) {
  const auto& w = grid.weights();
  assert(weight.size() == w.size() && f.size() == w.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) sum += w[i] * weight[i] * f[i];
  return sum;
}

double quad(std::span<const double> f, const Grid& grid) {
  const auto& w = grid.weights();
  assert(f.size() == w.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) sum += w[i] * f[i];
  return sum;
}

}  // namespace bec

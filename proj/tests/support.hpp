#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bec/grid.hpp"
#include "bec/params.hpp"

namespace bec::testing {

inline RawParams physical(double eps = 0.05, int N = 128) {
  RawParams raw;
  raw.n = 2.0;
  raw.alpha = 6.5;
  raw.beta = 0.5;
  raw.gamma = 0.0;
  raw.L = 1.0;
  raw.eps = eps;
  raw.k = 100.0;
  raw.N = N;
  return raw;
}

inline std::vector<double> sample(const Grid& grid, double (*f)(double)) {
  std::vector<double> v;
  for (double x : grid.x()) v.push_back(f(x));
  return v;
}

template <class F>
std::vector<double> sample(const Grid& grid, F f) {
  std::vector<double> v;
  for (double x : grid.x()) v.push_back(f(x));
  return v;
}

/// Smooth positive state: 1 + sum of a few random cosine modes with amplitude <= 0.3.
inline std::vector<double> random_positive_state(const Grid& grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-0.1, 0.1);
  const double a1 = coef(rng), a2 = coef(rng), a3 = coef(rng);
  const double pi = 3.141592653589793;
  return sample(grid, [&](double x) {
    const double t = pi * x / grid.L();
    return 1.0 + a1 * std::cos(t) + a2 * std::cos(2 * t) + a3 * std::cos(3 * t);
  });
}

inline double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("bec_tests_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace bec::testing

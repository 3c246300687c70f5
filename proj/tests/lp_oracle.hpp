#pragma once

// Brute-force LP oracle: enumerate every basic solution (n linearly
// independent active constraints, all equalities among them), keep the
// feasible ones, return the best objective. Exponential, fine for n <= 8.

#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "diamond/linprog.hpp"

namespace lp_oracle {

using diamond::lp::LinearProgramSpec;

// Gaussian elimination with partial pivoting; nullopt when singular.
inline std::optional<std::vector<double>> solve_square(
    std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[p][c])) p = r;
    if (std::fabs(a[p][c]) < 1e-10) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      if (f == 0.0) continue;
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

// Best objective over basic feasible solutions; nullopt when none exists.
inline std::optional<double> vertex_optimum(const LinearProgramSpec& lp,
                                            double feas_tol = 1e-9) {
  const std::size_t n = lp.num_vars;
  // Inequalities as rows "g x <= h"; x >= 0 becomes -x_i <= 0.
  std::vector<std::vector<double>> g;
  std::vector<double> h;
  for (const auto& c : lp.leq_constraints) {
    g.push_back(c.coeffs);
    h.push_back(c.bound);
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(n, 0.0);
    row[i] = -1.0;
    g.push_back(row);
    h.push_back(0.0);
  }
  const std::size_t p = lp.eq_constraints.size();
  if (p > n) return std::nullopt;
  const std::size_t pick = n - p;

  std::optional<double> best;
  std::vector<std::size_t> idx(pick);
  for (std::size_t i = 0; i < pick; ++i) idx[i] = i;
  if (pick > g.size()) return std::nullopt;

  auto feasible = [&](const std::vector<double>& x) {
    for (std::size_t r = 0; r < g.size(); ++r) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += g[r][j] * x[j];
      if (s > h[r] + feas_tol * (1.0 + std::fabs(h[r]))) return false;
    }
    for (const auto& c : lp.eq_constraints) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += c.coeffs[j] * x[j];
      if (std::fabs(s - c.bound) > feas_tol * (1.0 + std::fabs(c.bound))) return false;
    }
    return true;
  };

  while (true) {
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    for (const auto& c : lp.eq_constraints) {
      a.push_back(c.coeffs);
      b.push_back(c.bound);
    }
    for (std::size_t i : idx) {
      a.push_back(g[i]);
      b.push_back(h[i]);
    }
    if (auto x = solve_square(a, b); x && feasible(*x)) {
      double v = 0.0;
      for (std::size_t j = 0; j < n; ++j) v += lp.objective[j] * (*x)[j];
      if (!best || v > *best) best = v;
    }
    // Next combination.
    std::size_t i = pick;
    while (i > 0 && idx[i - 1] == g.size() - pick + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < pick; ++j) idx[j] = idx[j - 1] + 1;
  }
  return best;
}

// Random bounded LP: up to max_vars variables, up to max_rows constraints
// (one of them a box row keeping the feasible set bounded), optionally one
// equality. Integer coefficients in half of the draws to force degeneracy.
inline LinearProgramSpec random_lp(std::mt19937_64& rng, std::size_t max_vars,
                                   std::size_t max_rows) {
  std::uniform_int_distribution<std::size_t> nv(2, max_vars);
  std::uniform_int_distribution<std::size_t> nr(2, max_rows - 1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> ui(-3, 3);
  std::bernoulli_distribution coin(0.5);

  LinearProgramSpec lp;
  lp.num_vars = nv(rng);
  const bool integer = coin(rng);
  auto draw = [&] { return integer ? static_cast<double>(ui(rng)) : u(rng); };
  lp.objective.resize(lp.num_vars);
  for (auto& c : lp.objective) c = draw();
  const std::size_t rows = nr(rng);
  for (std::size_t r = 0; r < rows; ++r) {
    auto row = lp.zero_row();
    for (auto& c : row) c = draw();
    // Mostly nonnegative right-hand sides, occasionally negative ones that
    // need phase 1.
    const double rhs = integer ? static_cast<double>(ui(rng) + 2) : u(rng) + 0.8;
    lp.add_leq(std::move(row), rhs);
  }
  auto box = lp.zero_row();
  for (auto& c : box) c = 1.0;
  lp.add_leq(std::move(box), integer ? 5.0 : 3.0);
  if (coin(rng) && lp.num_vars > 2) {
    auto row = lp.zero_row();
    for (auto& c : row) c = std::fabs(draw());
    row[0] = 1.0;
    lp.add_eq(std::move(row), integer ? 1.0 : 0.5);
  }
  return lp;
}

}  // namespace lp_oracle

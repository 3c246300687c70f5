#include "diamond/linprog.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

namespace diamond::lp {

namespace {

constexpr double kPivotTol = 1e-11;     // smallest usable pivot magnitude
constexpr double kOptimalityTol = 1e-11;
constexpr double kFeasibilityTol = 1e-9;  // on unit max-norm rows

enum class Outcome { optimal, unbounded, iteration_limit };

// Dense simplex tableau. Row i holds B^-1 A | B^-1 b for basic variable
// basis[i]; `reduced` holds c_j - c_B B^-1 A_j and the current objective
// value in its last entry.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * (cols + 1), 0.0),
        basis_(rows, 0), reduced_(cols + 1, 0.0) {}

  double& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const {
    return data_[r * (cols_ + 1) + c];
  }
  double& rhs(std::size_t r) { return at(r, cols_); }
  double rhs(std::size_t r) const { return at(r, cols_); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }
  const std::vector<std::size_t>& basis() const { return basis_; }

  // Install cost vector `cost` (length cols) and price out the basis.
  void set_objective(const std::vector<double>& cost) {
    for (std::size_t j = 0; j <= cols_; ++j) reduced_[j] = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) reduced_[j] = cost[j];
    for (std::size_t i = 0; i < rows_; ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) reduced_[j] -= cb * at(i, j);
    }
    // reduced_[cols_] now holds -c_B x_B.
  }

  double objective() const { return -reduced_[cols_]; }

  void pivot(std::size_t r, std::size_t c) {
    const double inv = 1.0 / at(r, c);
    for (std::size_t j = 0; j <= cols_; ++j) at(r, j) *= inv;
    at(r, c) = 1.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) at(i, j) -= f * at(r, j);
      at(i, c) = 0.0;
    }
    const double f = reduced_[c];
    if (f != 0.0) {
      for (std::size_t j = 0; j <= cols_; ++j) reduced_[j] -= f * at(r, j);
      reduced_[c] = 0.0;
    }
    basis_[r] = c;
  }

  // Bland's rule over columns [0, allowed_cols).
  Outcome run(std::size_t allowed_cols, std::size_t max_iter,
              std::size_t& iterations, int verbosity, std::ostream& log) {
    for (;;) {
      std::size_t enter = allowed_cols;
      for (std::size_t j = 0; j < allowed_cols; ++j) {
        if (reduced_[j] > kOptimalityTol) {
          enter = j;
          break;
        }
      }
      if (enter == allowed_cols) return Outcome::optimal;

      std::size_t leave = rows_;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < rows_; ++i) {
        const double a = at(i, enter);
        if (a <= kPivotTol) continue;
        const double ratio = std::max(rhs(i), 0.0) / a;
        if (leave == rows_) {
          leave = i;
          best_ratio = ratio;
          continue;
        }
        // Ties (up to round-off) go to the lowest basic index.
        const double slack = 1e-12 * (1.0 + best_ratio);
        if (ratio < best_ratio - slack) {
          leave = i;
          best_ratio = ratio;
        } else if (ratio <= best_ratio + slack && basis_[i] < basis_[leave]) {
          leave = i;
          best_ratio = std::min(best_ratio, ratio);
        }
      }
      if (leave == rows_) return Outcome::unbounded;
      if (iterations >= max_iter) return Outcome::iteration_limit;
      ++iterations;
      if (verbosity >= 2) {
        log << "pivot " << iterations << ": enter x" << enter << " leave x"
            << basis_[leave] << " (row " << leave << ")\n";
      }
      pivot(leave, enter);
      if (verbosity >= 3) dump(log);
    }
  }

  void dump(std::ostream& log) const {
    std::ios::fmtflags saved = log.flags();
    log << std::setprecision(5);
    for (std::size_t i = 0; i < rows_; ++i) {
      log << "  x" << std::setw(3) << std::left << basis_[i] << std::right
          << " |";
      for (std::size_t j = 0; j <= cols_; ++j)
        log << ' ' << std::setw(11) << at(i, j);
      log << '\n';
    }
    log << "  z    |";
    for (std::size_t j = 0; j <= cols_; ++j)
      log << ' ' << std::setw(11) << reduced_[j];
    log << '\n';
    log.flags(saved);
  }

  void remove_row(std::size_t r) {
    data_.erase(data_.begin() + static_cast<std::ptrdiff_t>(r * (cols_ + 1)),
                data_.begin() +
                    static_cast<std::ptrdiff_t>((r + 1) * (cols_ + 1)));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --rows_;
  }

  // Keep only the first `keep` columns (plus the RHS).
  void truncate_columns(std::size_t keep) {
    std::vector<double> next(rows_ * (keep + 1));
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < keep; ++j) next[i * (keep + 1) + j] = at(i, j);
      next[i * (keep + 1) + keep] = rhs(i);
    }
    data_ = std::move(next);
    cols_ = keep;
    reduced_.assign(keep + 1, 0.0);
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
  std::vector<std::size_t> basis_;
  std::vector<double> reduced_;
};

// Standard form: A x = b, x >= 0, b >= 0, with rows scaled to unit max-norm.
struct StandardForm {
  std::size_t num_orig = 0;
  std::size_t num_slack = 0;
  std::size_t num_art = 0;
  std::vector<std::vector<double>> rows;  // length num_orig+num_slack+num_art
  std::vector<double> rhs;
  std::vector<std::size_t> initial_basis;
  bool trivially_infeasible = false;
};

StandardForm to_standard_form(const LinearProgramSpec& spec) {
  StandardForm sf;
  sf.num_orig = spec.num_vars;

  struct Row {
    std::vector<double> a;
    double b;
    bool is_leq;
  };
  std::vector<Row> kept;
  auto normalize = [&](const Constraint& c, bool is_leq) {
    double scale = 0.0;
    for (double v : c.coeffs) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) {
      // 0 <= b or 0 = b: either vacuous or infeasible.
      const bool ok = is_leq ? c.bound >= -kFeasibilityTol
                             : std::abs(c.bound) <= kFeasibilityTol;
      if (!ok) sf.trivially_infeasible = true;
      return;
    }
    Row r{c.coeffs, c.bound / scale, is_leq};
    for (double& v : r.a) v /= scale;
    kept.push_back(std::move(r));
  };
  for (const auto& c : spec.leq_constraints) normalize(c, true);
  for (const auto& c : spec.eq_constraints) normalize(c, false);

  for (const auto& r : kept)
    if (r.is_leq) ++sf.num_slack;
  for (const auto& r : kept)
    if (!r.is_leq || r.b < 0.0) ++sf.num_art;

  const std::size_t width = sf.num_orig + sf.num_slack + sf.num_art;
  std::size_t slack = sf.num_orig;
  std::size_t art = sf.num_orig + sf.num_slack;
  for (const auto& r : kept) {
    std::vector<double> row(width, 0.0);
    const double sign = r.b < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < sf.num_orig; ++j) row[j] = sign * r.a[j];
    std::size_t basic;
    if (r.is_leq) {
      row[slack] = sign;
      if (sign > 0) {
        basic = slack;
      } else {
        row[art] = 1.0;
        basic = art++;
      }
      ++slack;
    } else {
      row[art] = 1.0;
      basic = art++;
    }
    sf.rows.push_back(std::move(row));
    sf.rhs.push_back(sign * r.b);
    sf.initial_basis.push_back(basic);
  }
  return sf;
}

// Solve the square system B x = b (dense, partial pivoting). Returns false
// when B is numerically singular.
bool solve_dense(std::vector<std::vector<double>> m, std::vector<double> b,
                 std::vector<double>& x) {
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(m[i][k]) > std::abs(m[p][k])) p = i;
    if (std::abs(m[p][k]) < 1e-13) return false;
    std::swap(m[p], m[k]);
    std::swap(b[p], b[k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = m[i][k] / m[k][k];
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
      b[i] -= f * b[k];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t k = n; k-- > 0;) {
    double s = b[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= m[k][j] * x[j];
    x[k] = s / m[k][k];
  }
  return true;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

std::string to_string(Status s) {
  switch (s) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
  }
  return "?";
}

void LinearProgramSpec::validate() const {
  auto bad = [](const std::string& what) { throw ValidationError("LP: " + what); };
  if (objective.size() != num_vars) bad("objective length != num_vars");
  for (double v : objective)
    if (!std::isfinite(v)) bad("non-finite objective coefficient");
  auto check = [&](const std::vector<Constraint>& cs, const char* kind) {
    for (std::size_t i = 0; i < cs.size(); ++i) {
      if (cs[i].coeffs.size() != num_vars)
        bad(std::string(kind) + " row " + std::to_string(i) +
            " has wrong length");
      for (double v : cs[i].coeffs)
        if (!std::isfinite(v))
          bad(std::string(kind) + " row " + std::to_string(i) +
              " has a non-finite coefficient");
      if (!std::isfinite(cs[i].bound))
        bad(std::string(kind) + " row " + std::to_string(i) +
            " has a non-finite bound");
    }
  };
  check(leq_constraints, "leq");
  check(eq_constraints, "eq");
}

double max_violation(const LinearProgramSpec& spec,
                     const std::vector<double>& x) {
  double worst = 0.0;
  for (double v : x) worst = std::max(worst, -v);
  for (const auto& c : spec.leq_constraints)
    worst = std::max(worst, dot(c.coeffs, x) - c.bound);
  for (const auto& c : spec.eq_constraints)
    worst = std::max(worst, std::abs(dot(c.coeffs, x) - c.bound));
  return worst;
}

LpSolution solve(const LinearProgramSpec& spec, const SolveOptions& opts) {
  spec.validate();
  std::ostream& log = opts.log ? *opts.log : std::cerr;

  LpSolution out;
  out.assignment.assign(spec.num_vars, 0.0);

  StandardForm sf = to_standard_form(spec);
  if (sf.trivially_infeasible) {
    out.status = Status::infeasible;
    return out;
  }

  const std::size_t m = sf.rows.size();
  const std::size_t width = sf.num_orig + sf.num_slack + sf.num_art;
  const std::size_t structural = sf.num_orig + sf.num_slack;
  const std::size_t max_iter = opts.max_iterations
                                   ? opts.max_iterations
                                   : 10000 + 200 * (m + width);

  Tableau t(m, width);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < width; ++j) t.at(i, j) = sf.rows[i][j];
    t.rhs(i) = sf.rhs[i];
    t.basis()[i] = sf.initial_basis[i];
  }

  auto basic_point = [&](const Tableau& tab) {
    std::vector<double> x(spec.num_vars, 0.0);
    for (std::size_t i = 0; i < tab.rows(); ++i)
      if (tab.basis()[i] < spec.num_vars) x[tab.basis()[i]] = tab.rhs(i);
    return x;
  };
  auto fail = [&](const char* phase, const Tableau& tab) {
    std::ostringstream os;
    os << "simplex iteration limit (" << max_iter << ") exceeded in "
       << phase;
    throw SolverError(os.str(), basic_point(tab));
  };

  // Phase 1: maximize -sum(artificials).
  if (sf.num_art > 0) {
    std::vector<double> cost(width, 0.0);
    for (std::size_t j = structural; j < width; ++j) cost[j] = -1.0;
    t.set_objective(cost);
    if (opts.verbosity >= 2) {
      log << "phase 1: " << m << " rows, " << width << " columns\n";
      t.dump(log);
    }
    const Outcome r = t.run(width, max_iter, out.iterations, opts.verbosity, log);
    if (r == Outcome::iteration_limit) fail("phase 1", t);
    if (t.objective() < -kFeasibilityTol * (1.0 + static_cast<double>(m))) {
      out.status = Status::infeasible;
      out.assignment = basic_point(t);
      out.max_residual = max_violation(spec, out.assignment);
      return out;
    }
    // Drive remaining artificials out of the basis; drop redundant rows.
    for (std::size_t i = t.rows(); i-- > 0;) {
      if (t.basis()[i] < structural) continue;
      std::size_t col = structural;
      double best = 1e-9;
      for (std::size_t j = 0; j < structural; ++j) {
        if (std::abs(t.at(i, j)) > best) {
          best = std::abs(t.at(i, j));
          col = j;
        }
      }
      if (col < structural) {
        t.pivot(i, col);
      } else {
        t.remove_row(i);
        sf.rows.erase(sf.rows.begin() + static_cast<std::ptrdiff_t>(i));
        sf.rhs.erase(sf.rhs.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
    t.truncate_columns(structural);
  }

  // Phase 2.
  std::vector<double> cost(structural, 0.0);
  for (std::size_t j = 0; j < spec.num_vars; ++j) cost[j] = spec.objective[j];
  t.set_objective(cost);
  if (opts.verbosity >= 2) {
    log << "phase 2: " << t.rows() << " rows, " << structural << " columns\n";
    t.dump(log);
  }
  const Outcome r = t.run(structural, max_iter, out.iterations, opts.verbosity, log);
  if (r == Outcome::iteration_limit) fail("phase 2", t);
  if (r == Outcome::unbounded) {
    out.status = Status::unbounded;
    out.assignment = basic_point(t);
    out.objective_value = std::numeric_limits<double>::infinity();
    out.max_residual = max_violation(spec, out.assignment);
    return out;
  }

  // Recompute the basic solution from the normalized data to shed the
  // round-off accumulated across pivots.
  std::vector<double> x = basic_point(t);
  {
    const std::size_t rows = t.rows();
    std::vector<std::vector<double>> bmat(rows, std::vector<double>(rows));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t k = 0; k < rows; ++k)
        bmat[i][k] = sf.rows[i][t.basis()[k]];
    std::vector<double> xb;
    if (rows > 0 && solve_dense(bmat, sf.rhs, xb)) {
      std::vector<double> refined(spec.num_vars, 0.0);
      bool ok = true;
      for (std::size_t k = 0; k < rows; ++k) {
        if (xb[k] < -kFeasibilityTol) ok = false;
        if (t.basis()[k] < spec.num_vars) refined[t.basis()[k]] = xb[k];
      }
      if (ok && max_violation(spec, refined) <= max_violation(spec, x))
        x = std::move(refined);
    }
  }
  for (double& v : x)
    if (v < 0.0 && v > -kFeasibilityTol) v = 0.0;

  out.status = Status::optimal;
  out.assignment = std::move(x);
  out.objective_value = dot(spec.objective, out.assignment);
  out.max_residual = max_violation(spec, out.assignment);
  if (opts.verbosity >= 1) {
    log << "lp: optimal " << out.objective_value << " after "
        << out.iterations << " pivots, residual " << out.max_residual << '\n';
  }
  return out;
}

}  // namespace diamond::lp

#pragma once

// Dense two-phase primal simplex with Bland's anti-cycling rule.
//
//   maximize    c . x
//   subject to  A_le x <= b_le,  A_eq x = b_eq,  x >= 0
//
// Sized for the small, highly degenerate LPs of the rate-region code (tens
// of variables), where exact termination matters more than speed.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "diamond/error.hpp"

namespace diamond::lp {

struct Constraint {
  std::vector<double> coeffs;
  double bound = 0.0;
};

struct LinearProgramSpec {
  std::size_t num_vars = 0;
  std::vector<double> objective;  // maximized
  std::vector<Constraint> leq_constraints;
  std::vector<Constraint> eq_constraints;

  // Throws ValidationError on ragged rows or non-finite entries.
  void validate() const;

  // Helpers for building sparse-looking rows in place.
  std::vector<double> zero_row() const {
    return std::vector<double>(num_vars, 0.0);
  }
  void add_leq(std::vector<double> row, double bound) {
    leq_constraints.push_back({std::move(row), bound});
  }
  void add_eq(std::vector<double> row, double bound) {
    eq_constraints.push_back({std::move(row), bound});
  }
};

enum class Status { optimal, infeasible, unbounded };

std::string to_string(Status s);

struct LpSolution {
  Status status = Status::infeasible;
  double objective_value = 0.0;
  std::vector<double> assignment;
  double max_residual = 0.0;  // largest constraint violation of assignment
  std::size_t iterations = 0;
};

struct SolveOptions {
  std::size_t max_iterations = 0;  // 0: automatic, scaled with problem size
  int verbosity = 0;               // >= 2 dumps the tableau at each pivot
  std::ostream* log = nullptr;     // defaults to std::cerr
};

// Thrown when the iteration limit is hit; carries the last basic point.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, std::vector<double> best)
      : Error(what), best_known_(std::move(best)) {}
  const std::vector<double>& best_known() const { return best_known_; }

 private:
  std::vector<double> best_known_;
};

LpSolution solve(const LinearProgramSpec& spec, const SolveOptions& opts = {});

// Largest violation of any constraint (including x >= 0) by x.
double max_violation(const LinearProgramSpec& spec,
                     const std::vector<double>& x);

}  // namespace diamond::lp

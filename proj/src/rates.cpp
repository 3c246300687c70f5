#include "diamond/rates.hpp"

#include <sstream>

namespace diamond {

void check_ratio(double k) {
  if (std::isnan(k) || k < 0.0) {
    std::ostringstream os;
    os << "direction ratio k must be >= 0, got " << k;
    throw ValidationError(os.str());
  }
}

double schedule_total(const StateSchedule& s) {
  double t = 0.0;
  for (const auto& [id, mu] : s) t += mu;
  return t;
}

double FlowAllocation::at(int state, Node from, Node to) const {
  auto it = flows.find(FlowKey{state, from, to});
  return it == flows.end() ? 0.0 : it->second;
}

void apply_ray(lp::LinearProgramSpec& spec, std::size_t ra, std::size_t rb,
               double k) {
  check_ratio(k);
  std::fill(spec.objective.begin(), spec.objective.end(), 0.0);
  auto row = spec.zero_row();
  if (is_b_axis(k)) {
    row[ra] = 1.0;
    spec.objective[rb] = 1.0;
  } else {
    row[ra] = k;
    row[rb] = -1.0;
    spec.objective[ra] = 1.0;
  }
  spec.add_eq(std::move(row), 0.0);
}

RatePair ray_point_in_box(double ra_max, double rb_max, double k) {
  if (is_b_axis(k)) return {0.0, rb_max};
  if (k == 0.0) return {ra_max, 0.0};
  const double ra = std::min(ra_max, rb_max / k);
  return {ra, k * ra};
}

lp::LpSolution solve_or_throw(const lp::LinearProgramSpec& spec,
                              const std::string& what) {
  lp::LpSolution sol = lp::solve(spec);
  if (sol.status != lp::Status::optimal) {
    throw lp::SolverError(what + ": LP is " + lp::to_string(sol.status),
                          sol.assignment);
  }
  return sol;
}

}  // namespace diamond

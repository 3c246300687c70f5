#pragma once

// Types shared by the bound builders, the protocols and the region code.
//
// A boundary point is addressed by its direction ratio k >= 0: the point on
// the ray R_b = k * R_a that lies furthest from the origin. k = 0 is the
// one-way A->B axis point (R_b = 0); k = +infinity is the one-way B->A axis
// point (R_a = 0).

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "diamond/channel.hpp"
#include "diamond/linprog.hpp"

namespace diamond {

inline constexpr double kBAxis = std::numeric_limits<double>::infinity();

inline bool is_b_axis(double k) { return std::isinf(k) && k > 0; }

// Throws ValidationError unless k is >= 0 (infinity allowed).
void check_ratio(double k);

struct RatePair {
  double r_a = 0.0;
  double r_b = 0.0;

  // Distance-like scalar along a fixed ray; used to compare support points
  // of different regions at the same k.
  double support() const { return r_a + r_b; }
};

// Time-share fraction per state id. Fractions are >= 0 and sum to 1.
using StateSchedule = std::map<int, double>;

double schedule_total(const StateSchedule& s);

// F^s_{t,r}: information flow from node t to node r during state s.
struct FlowKey {
  int state = 0;
  Node from = Node::A;
  Node to = Node::B;
  friend auto operator<=>(const FlowKey&, const FlowKey&) = default;
};

struct FlowAllocation {
  std::map<FlowKey, double> flows;
  RatePair rate_pair;

  double at(int state, Node from, Node to) const;
};

// Power / rate-split parameters of the alternating-relay DF protocol.
struct ArdfParams {
  std::array<double, 4> alpha{1.0, 1.0, 1.0, 1.0};
  std::array<double, 4> beta{1.0, 1.0, 1.0, 1.0};
};

struct SupportPoint {
  double k = 0.0;
  RatePair rates;
  StateSchedule schedule;
  std::optional<FlowAllocation> flows;
  std::optional<ArdfParams> ardf;
  double residual = 0.0;  // constraint violation of the LP optimum
};

// Adds "R_b = k R_a" (or "R_a = 0" on the B axis) and the matching objective
// to an LP whose rate variables sit at indices ra and rb.
void apply_ray(lp::LinearProgramSpec& spec, std::size_t ra, std::size_t rb,
               double k);

// The point of the box [0, ra_max] x [0, rb_max] furthest along ray k.
RatePair ray_point_in_box(double ra_max, double rb_max, double k);

// Solves an LP and throws lp::SolverError unless it is optimal.
lp::LpSolution solve_or_throw(const lp::LinearProgramSpec& spec,
                              const std::string& what);

}  // namespace diamond

#pragma once

// Half-duplex cut-set outer bounds on the two-way capacity region.

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "diamond/channel.hpp"
#include "diamond/linprog.hpp"
#include "diamond/rates.hpp"

namespace diamond::cutset {

enum class Direction { a_to_b, b_to_a };

// A source-side node set S separating the direction's source from its
// destination: {A}, {A,R1}, {A,R2}, {A,R1,R2} for a_to_b, mirrored for b_to_a.
class CutId {
 public:
  CutId(Direction d, bool with_r1, bool with_r2);

  Direction direction() const { return direction_; }
  NodeSet members() const { return members_; }
  Node source() const { return direction_ == Direction::a_to_b ? Node::A : Node::B; }

  friend bool operator==(const CutId&, const CutId&) = default;

 private:
  Direction direction_;
  NodeSet members_;
};

// The eight cuts in the row order of the bound: four bounding R_a
// ({A}, {A,R1}, {A,R2}, {A,R1,R2}) then the four mirrored ones bounding R_b.
const std::array<CutId, 8>& standard_cuts();

// Per-unit-time capacity across `cut` while the network sits in `st`.
// Plain variant only; throws UnsupportedVariantError otherwise.
double state_cut_capacity(const HalfDuplexState& st, const CutId& cut,
                          const ChannelConfig& channel);

// Cut values of one state over the eight standard cuts.
std::array<double, 8> cut_vector(const HalfDuplexState& st,
                                 const ChannelConfig& channel);

// The LP behind one support point of an outer bound. Variables are one mu
// per state (in `states` order) followed by R_a and R_b.
struct OuterBoundLp {
  ChannelConfig channel;
  std::vector<int> states;
  lp::LinearProgramSpec lp;
  std::size_t ra_index = 0;
  std::size_t rb_index = 0;
  // Per state, the coefficient of mu_s in each of the eight rate rows.
  std::vector<std::array<double, 8>> coefficients;
};

// States carried by the bound of each variant.
std::vector<int> outer_states(Variant v);

// Bound LP for ratio k (R_b = k R_a; k = kBAxis maximizes R_b with R_a = 0).
OuterBoundLp build_outer_lp(const ChannelConfig& channel, double k);

// Plain-variant bound over an arbitrary state set, with every coefficient
// taken from state_cut_capacity.
OuterBoundLp build_plain_outer_lp(const ChannelConfig& channel, double k,
                                  const std::vector<int>& states);

SupportPoint solve_outer(const OuterBoundLp& bound, double k);

// build_outer_lp + solve.
SupportPoint outer_support(const ChannelConfig& channel, double k);

// For each state 1..14: a state among {13, 14} whose cut vector dominates it
// componentwise, or nullopt. Plain variant only.
std::vector<std::pair<int, std::optional<int>>> dominance_report(
    const ChannelConfig& channel);

}  // namespace diamond::cutset

#pragma once

// Closed-form "box" evaluators used to cross-check the region LPs.
//
// For a fixed time-sharing vector mu every region in this library
// decouples: the constraints on R_a and those on R_b share no flow
// variable, so the rate pairs reachable with mu form the box
// [0, ra_max(mu)] x [0, rb_max(mu)]. The evaluators below compute that box
// directly (mins of linear caps), without building an LP. They are written
// from the region definitions separately from the LP builders.

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "diamond/channel.hpp"
#include "diamond/rates.hpp"

namespace diamond::oracle {

// Time fraction per state, indexed by state id (entry 0 unused).
using Mu = std::array<double, kNumStates + 1>;

using BoxEvaluator = std::function<RatePair(const Mu&)>;

struct Family {
  std::string name;
  std::vector<int> states;
  BoxEvaluator box;
};

// Outer bound of the channel's variant.
Family outer_family(const ChannelConfig& channel);

// Two-way MDF over states 1-8 with fixed broadcast splits for the two
// directions (fraction of power on the stronger relay's layer).
Family mdf_family(const ChannelConfig& channel, double theta_a, double theta_b);

Family cf_cmac_family(const ChannelConfig& channel);
Family cf_bc_family(const ChannelConfig& channel);
Family comabc_family(const ChannelConfig& channel);
Family ardf_family(const ChannelConfig& channel, const ArdfParams& params);

}  // namespace diamond::oracle

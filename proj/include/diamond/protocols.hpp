#pragma once

// Achievable-rate generators for the two-way relaying protocols. Every
// generator returns, for a direction ratio k, the boundary rate pair of the
// protocol's region along R_b = k R_a together with the schedule reaching it.

#include <functional>
#include <string_view>

#include "diamond/channel.hpp"
#include "diamond/cutset.hpp"
#include "diamond/rates.hpp"

namespace diamond::protocols {

// ---------------------------------------------------------------------------
// Multihop decode-and-forward, time-shared between the two directions.

struct MdfOptions {
  int theta_points = 101;  // power-split grid of the state-3 broadcast
};

struct OneWayResult {
  double rate = 0.0;
  StateSchedule schedule;  // states 1-4 (a_to_b) or 5-8 (b_to_a)
  double theta = 0.0;      // broadcast power split at the optimum
  double residual = 0.0;
};

OneWayResult mdf_one_way(const ChannelConfig& channel,
                         cutset::Direction direction,
                         const MdfOptions& opts = {});

// Point of the triangle spanned by the two one-way MDF axis points.
SupportPoint mdf_two_way_support(const OneWayResult& a_to_b,
                                 const OneWayResult& b_to_a, double k);
SupportPoint mdf_two_way_support(const ChannelConfig& channel, double k,
                                 const MdfOptions& opts = {});

// ---------------------------------------------------------------------------
// Compute-and-forward.

struct ComputeRates {
  double a = 0.0;  // per-unit-time bound on the A -> relay flow
  double b = 0.0;  // per-unit-time bound on the B -> relay flow
};

// Lattice compute-phase rates at relay 1 or 2:
//   [c log2(g_a / (g_a + g_b) + g_a)]^+  and the same with a, b exchanged,
// with c = 1/2 under Convention::as_printed and c = 1 under complex.
ComputeRates cf_compute_phase_bounds(const ChannelConfig& channel, int relay);

// Relays decode the sum in states 9/10 and forward over the compound MAC of
// state 13.
SupportPoint cf_cmac_support(const ChannelConfig& channel, double k);

// Relays decode the sum in states 9/10 and broadcast one at a time in
// states 11/12.
SupportPoint cf_bc_support(const ChannelConfig& channel, double k);

// ---------------------------------------------------------------------------
// Two-relay cooperative MAC/broadcast protocol for the direct-link network.

// State used for cooperative transmission with relay 1 or 2: 2 / 1 when the
// A-side link of that relay is at least as strong as the B-side one, else
// 6 / 5.
int comabc_cooperative_state(const ChannelConfig& channel, int relay);

SupportPoint comabc_support(const ChannelConfig& channel, double k);

// ---------------------------------------------------------------------------
// Two-way alternating-relay decode-and-forward for interfering relays.

// Region LP for fixed power/rate splits.
SupportPoint ardf_support_with(const ChannelConfig& channel, double k,
                               const ArdfParams& params);

struct ArdfSearch {
  ArdfParams params;       // best grid point, per direction
  double one_way_a = 0.0;  // best A->B rate per unit time
  double one_way_b = 0.0;  // best B->A rate per unit time
};

// Grid search over the split parameters with `grid_resolution` uniformly
// spaced values per parameter in [0, 1].
ArdfSearch ardf_search(const ChannelConfig& channel, int grid_resolution);

SupportPoint ardf_support(const ChannelConfig& channel, double k,
                          int grid_resolution = 11);

}  // namespace diamond::protocols

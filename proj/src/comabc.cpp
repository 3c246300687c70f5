#include "diamond/protocols.hpp"

#include <cmath>
#include <sstream>

#include "diamond/error.hpp"
#include "lp_builder.hpp"

namespace diamond::protocols {

namespace {

// [C(g - h / (g + h))]^+ ; zero when both SNRs vanish.
double relay_decode_rate(double g, double h) {
  if (g + h <= 0.0) return 0.0;
  const double x = g - h / (g + h);
  return x > 0.0 ? std::log2(1.0 + x) : 0.0;
}

}  // namespace

int comabc_cooperative_state(const ChannelConfig& channel, int relay) {
  if (relay == 1) return channel.gamma_a1 >= channel.gamma_b1 ? 2 : 6;
  if (relay == 2) return channel.gamma_a2 >= channel.gamma_b2 ? 1 : 5;
  throw ValidationError("relay must be 1 or 2");
}

SupportPoint comabc_support(const ChannelConfig& channel, double k) {
  channel.validate();
  check_ratio(k);
  if (channel.variant != Variant::direct_link)
    throw UnsupportedVariantError(
        "CoMABC needs the direct-link variant, channel is " +
        std::string(to_string(channel.variant)));
  const double c_ab = capacity(*channel.gamma_ab);

  detail::LpBuilder b;
  const auto ra = b.var("R_a"), rb = b.var("R_b");

  struct RelayVars {
    int mac_state, bc_state, coop_state;
    std::size_t mu_mac, mu_bc, mu_coop, sub_a, sub_b;
  };
  std::array<RelayVars, 2> relays{};

  for (int relay = 1; relay <= 2; ++relay) {
    auto& r = relays[static_cast<std::size_t>(relay - 1)];
    r.mac_state = relay == 1 ? 9 : 10;
    r.bc_state = relay == 1 ? 11 : 12;
    r.coop_state = comabc_cooperative_state(channel, relay);
    r.mu_mac = b.var("mu_" + std::to_string(r.mac_state));
    r.mu_bc = b.var("mu_" + std::to_string(r.bc_state));
    r.mu_coop = b.var("mu_" + std::to_string(r.coop_state));
    r.sub_a = b.var("R_a" + std::to_string(relay));
    r.sub_b = b.var("R_b" + std::to_string(relay));

    const double ga = relay == 1 ? channel.gamma_a1 : channel.gamma_a2;
    const double gb = relay == 1 ? channel.gamma_b1 : channel.gamma_b2;
    const double star_a = relay_decode_rate(ga, gb);
    const double star_b = relay_decode_rate(gb, ga);

    // The stronger terminal finishes decoding first and then helps the
    // relay reach the weaker one over the direct link.
    const bool a_strong = ga >= gb;
    const auto strong = a_strong ? r.sub_a : r.sub_b;
    const auto weak = a_strong ? r.sub_b : r.sub_a;
    const double star_strong = a_strong ? star_a : star_b;
    const double star_weak = a_strong ? star_b : star_a;
    // Relay -> destination of the strong terminal's flow, and back.
    const double g_to_weak_end = a_strong ? gb : ga;
    const double g_to_strong_end = a_strong ? ga : gb;

    b.leq({{strong, 1}, {r.mu_mac, -star_strong}, {r.mu_coop, -c_ab}});
    b.leq({{strong, 1},
           {r.mu_bc, -capacity(g_to_weak_end)},
           {r.mu_coop, -capacity(g_to_weak_end + *channel.gamma_ab)}});
    b.leq({{weak, 1}, {r.mu_mac, -star_weak}});
    b.leq({{weak, 1}, {r.mu_bc, -capacity(g_to_strong_end)}});
  }

  b.eq({{ra, 1}, {relays[0].sub_a, -1}, {relays[1].sub_a, -1}});
  b.eq({{rb, 1}, {relays[0].sub_b, -1}, {relays[1].sub_b, -1}});
  b.eq({{relays[0].mu_mac, 1},
        {relays[0].mu_bc, 1},
        {relays[0].mu_coop, 1},
        {relays[1].mu_mac, 1},
        {relays[1].mu_bc, 1},
        {relays[1].mu_coop, 1}},
       1.0);

  std::ostringstream what;
  what << "CoMABC (k=" << k << ")";
  const lp::LpSolution sol = solve_or_throw(b.build(ra, rb, k), what.str());
  const auto& x = sol.assignment;

  SupportPoint p;
  p.k = k;
  p.residual = sol.max_residual;
  p.rates = {std::max(0.0, x[ra]), std::max(0.0, x[rb])};
  for (const auto& r : relays) {
    p.schedule[r.mac_state] += x[r.mu_mac];
    p.schedule[r.bc_state] += x[r.mu_bc];
    p.schedule[r.coop_state] += x[r.mu_coop];
  }
  return p;
}

}  // namespace diamond::protocols

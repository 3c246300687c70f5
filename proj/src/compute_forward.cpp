#include "diamond/protocols.hpp"

#include <cmath>
#include <sstream>

#include "diamond/error.hpp"
#include "lp_builder.hpp"

namespace diamond::protocols {

namespace {

// [c log2(g / (g + h) + g)]^+, with 0/0 read as 0.
double lattice_rate(double g, double h, double c) {
  const double share = (g + h) > 0.0 ? g / (g + h) : 0.0;
  const double arg = share + g;
  return arg > 1.0 ? c * std::log2(arg) : 0.0;
}

std::string label(const char* protocol, double k) {
  std::ostringstream os;
  os << protocol << " (k=" << k << ")";
  return os.str();
}

// Variables and constraints common to both compute-and-forward protocols:
// the state-9/10 compute phase and the end-to-end rates.
struct ComputePhase {
  std::size_t mu9, mu10;
  std::size_t a_r1, b_r1, a_r2, b_r2;  // F^9_{a,r1}, F^9_{b,r1}, F^10_{...}
  std::size_t ra, rb;
};

ComputePhase add_compute_phase(detail::LpBuilder& b, const ChannelConfig& c) {
  ComputePhase v{};
  v.mu9 = b.var("mu_9");
  v.mu10 = b.var("mu_10");
  v.a_r1 = b.var("F9_a_r1");
  v.b_r1 = b.var("F9_b_r1");
  v.a_r2 = b.var("F10_a_r2");
  v.b_r2 = b.var("F10_b_r2");
  v.ra = b.var("R_a");
  v.rb = b.var("R_b");
  const ComputeRates r1 = cf_compute_phase_bounds(c, 1);
  const ComputeRates r2 = cf_compute_phase_bounds(c, 2);
  b.leq({{v.a_r1, 1}, {v.mu9, -r1.a}});
  b.leq({{v.b_r1, 1}, {v.mu9, -r1.b}});
  b.leq({{v.a_r2, 1}, {v.mu10, -r2.a}});
  b.leq({{v.b_r2, 1}, {v.mu10, -r2.b}});
  b.eq({{v.ra, 1}, {v.a_r1, -1}, {v.a_r2, -1}});
  b.eq({{v.rb, 1}, {v.b_r1, -1}, {v.b_r2, -1}});
  return v;
}

void record_compute_flows(FlowAllocation& f, const ComputePhase& v,
                          const std::vector<double>& x) {
  f.flows[{9, Node::A, Node::R1}] = x[v.a_r1];
  f.flows[{9, Node::B, Node::R1}] = x[v.b_r1];
  f.flows[{10, Node::A, Node::R2}] = x[v.a_r2];
  f.flows[{10, Node::B, Node::R2}] = x[v.b_r2];
}

}  // namespace

ComputeRates cf_compute_phase_bounds(const ChannelConfig& channel, int relay) {
  channel.validate();
  if (relay != 1 && relay != 2)
    throw ValidationError("relay must be 1 or 2");
  const double c = channel.convention == Convention::as_printed ? 0.5 : 1.0;
  const double ga = relay == 1 ? channel.gamma_a1 : channel.gamma_a2;
  const double gb = relay == 1 ? channel.gamma_b1 : channel.gamma_b2;
  return {lattice_rate(ga, gb, c), lattice_rate(gb, ga, c)};
}

SupportPoint cf_cmac_support(const ChannelConfig& channel, double k) {
  channel.validate();
  check_ratio(k);
  const ChannelConfig& c = channel;

  detail::LpBuilder b;
  const ComputePhase v = add_compute_phase(b, c);
  const auto mu13 = b.var("mu_13");
  const auto r1_a = b.var("F13_r1_a"), r1_b = b.var("F13_r1_b");
  const auto r2_a = b.var("F13_r2_a"), r2_b = b.var("F13_r2_b");

  // Compound MAC: both MAC regions at A and at B must hold.
  b.leq({{r1_a, 1}, {mu13, -capacity(c.gamma_a1)}});
  b.leq({{r1_b, 1}, {mu13, -capacity(c.gamma_b1)}});
  b.leq({{r2_a, 1}, {mu13, -capacity(c.gamma_a2)}});
  b.leq({{r2_b, 1}, {mu13, -capacity(c.gamma_b2)}});
  b.leq({{r1_a, 1}, {r2_a, 1}, {mu13, -capacity(c.gamma_a1 + c.gamma_a2)}});
  b.leq({{r1_b, 1}, {r2_b, 1}, {mu13, -capacity(c.gamma_b1 + c.gamma_b2)}});

  // What a relay learns from one terminal it forwards to the other.
  b.eq({{v.a_r1, 1}, {r1_b, -1}});
  b.eq({{v.b_r1, 1}, {r1_a, -1}});
  b.eq({{v.a_r2, 1}, {r2_b, -1}});
  b.eq({{v.b_r2, 1}, {r2_a, -1}});

  b.eq({{v.mu9, 1}, {v.mu10, 1}, {mu13, 1}}, 1.0);

  const lp::LpSolution sol =
      solve_or_throw(b.build(v.ra, v.rb, k), label("CF-CMAC", k));
  const auto& x = sol.assignment;

  SupportPoint p;
  p.k = k;
  p.residual = sol.max_residual;
  p.rates = {std::max(0.0, x[v.ra]), std::max(0.0, x[v.rb])};
  p.schedule = {{9, x[v.mu9]}, {10, x[v.mu10]}, {13, x[mu13]}};
  FlowAllocation f;
  record_compute_flows(f, v, x);
  f.flows[{13, Node::R1, Node::A}] = x[r1_a];
  f.flows[{13, Node::R1, Node::B}] = x[r1_b];
  f.flows[{13, Node::R2, Node::A}] = x[r2_a];
  f.flows[{13, Node::R2, Node::B}] = x[r2_b];
  f.rate_pair = p.rates;
  p.flows = std::move(f);
  return p;
}

SupportPoint cf_bc_support(const ChannelConfig& channel, double k) {
  channel.validate();
  check_ratio(k);
  const ChannelConfig& c = channel;

  detail::LpBuilder b;
  const ComputePhase v = add_compute_phase(b, c);
  const auto mu11 = b.var("mu_11"), mu12 = b.var("mu_12");
  const auto r1_a = b.var("F11_r1_a"), r1_b = b.var("F11_r1_b");
  const auto r2_a = b.var("F12_r2_a"), r2_b = b.var("F12_r2_b");

  b.leq({{r1_a, 1}, {mu11, -capacity(c.gamma_a1)}});
  b.leq({{r1_b, 1}, {mu11, -capacity(c.gamma_b1)}});
  b.leq({{r2_a, 1}, {mu12, -capacity(c.gamma_a2)}});
  b.leq({{r2_b, 1}, {mu12, -capacity(c.gamma_b2)}});

  b.eq({{v.a_r1, 1}, {r1_b, -1}});
  b.eq({{v.b_r1, 1}, {r1_a, -1}});
  b.eq({{v.a_r2, 1}, {r2_b, -1}});
  b.eq({{v.b_r2, 1}, {r2_a, -1}});

  b.eq({{v.mu9, 1}, {v.mu10, 1}, {mu11, 1}, {mu12, 1}}, 1.0);

  const lp::LpSolution sol =
      solve_or_throw(b.build(v.ra, v.rb, k), label("CF-BC", k));
  const auto& x = sol.assignment;

  SupportPoint p;
  p.k = k;
  p.residual = sol.max_residual;
  p.rates = {std::max(0.0, x[v.ra]), std::max(0.0, x[v.rb])};
  p.schedule = {{9, x[v.mu9]}, {10, x[v.mu10]}, {11, x[mu11]}, {12, x[mu12]}};
  FlowAllocation f;
  record_compute_flows(f, v, x);
  f.flows[{11, Node::R1, Node::A}] = x[r1_a];
  f.flows[{11, Node::R1, Node::B}] = x[r1_b];
  f.flows[{12, Node::R2, Node::A}] = x[r2_a];
  f.flows[{12, Node::R2, Node::B}] = x[r2_b];
  f.rate_pair = p.rates;
  p.flows = std::move(f);
  return p;
}

}  // namespace diamond::protocols

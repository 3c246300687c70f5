#include "diamond/cutset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "diamond/error.hpp"

namespace diamond::cutset {

namespace {

// C((sqrt(x) + sqrt(y) + ...)^2): coherent combining at one receiver.
double coherent(std::initializer_list<double> snrs) {
  double s = 0.0;
  for (double g : snrs) s += std::sqrt(g);
  return capacity(s * s);
}

using Row = std::vector<std::pair<int, double>>;  // (state id, coefficient)

// Cut-set rows for the network with a direct A-B link, states 1-8, 13, 14.
std::array<Row, 8> direct_link_rows(const ChannelConfig& c) {
  const double a1 = c.gamma_a1, a2 = c.gamma_a2, b1 = c.gamma_b1,
               b2 = c.gamma_b2, ab = *c.gamma_ab;
  auto C = capacity;
  return {{
      {{14, C(a1 + a2)}, {4, C(ab)}, {2, C(a2 + ab)}, {1, C(a1 + ab)},
       {3, C(a1 + a2 + ab)}},
      {{14, C(a2)}, {13, C(b1)}, {4, coherent({b1, ab})},
       {2, C(b1) + C(a2 + ab)}, {1, C(ab)}, {3, C(a2 + ab)}},
      {{14, C(a1)}, {13, C(b2)}, {4, coherent({b2, ab})}, {2, C(ab)},
       {1, C(b2) + C(a1 + ab)}, {3, C(a1 + ab)}},
      {{13, coherent({b1, b2})}, {4, coherent({b1, b2, ab})},
       {2, coherent({b1, ab})}, {1, coherent({b2, ab})}, {3, C(ab)}},
      {{14, C(b1 + b2)}, {8, C(ab)}, {6, C(b2 + ab)}, {5, C(b1 + ab)},
       {7, C(b1 + b2 + ab)}},
      {{14, C(b2)}, {13, C(a1)}, {8, coherent({a1, ab})},
       {6, C(a1) + C(b2 + ab)}, {5, C(ab)}, {7, C(b2 + ab)}},
      {{14, C(b1)}, {13, C(a2)}, {8, coherent({a2, ab})}, {6, C(ab)},
       {5, C(a2) + C(b1 + ab)}, {7, C(b1 + ab)}},
      {{13, coherent({a1, a2})}, {8, coherent({a1, a2, ab})},
       {6, coherent({a1, ab})}, {5, coherent({a2, ab})}, {7, C(ab)}},
  }};
}

// Cut-set rows for interfering relays, states 1, 2, 5, 6, 9-14. In the
// second and third B rows each mu multiplies a single capacity term, as on
// every other row.
std::array<Row, 8> interfering_rows(const ChannelConfig& c) {
  const double a1 = c.gamma_a1, a2 = c.gamma_a2, b1 = c.gamma_b1,
               b2 = c.gamma_b2, r = *c.gamma_12;
  auto C = capacity;
  return {{
      {{14, C(a1 + a2)}, {10, C(a2)}, {2, C(a2)}, {9, C(a1)}, {1, C(a1)}},
      {{14, C(a2)}, {13, C(b1)}, {10, coherent({a2, r})},
       {2, C(a2) + C(b1 + r)}, {11, C(b1 + r)}, {6, C(r)}},
      {{14, C(a1)}, {13, C(b2)}, {9, coherent({a1, r})},
       {1, C(a1) + C(b2 + r)}, {12, C(b2 + r)}, {5, C(r)}},
      {{13, coherent({b1, b2})}, {2, C(b1)}, {1, C(b2)}, {11, C(b1)},
       {12, C(b2)}},
      {{14, C(b1 + b2)}, {10, C(b2)}, {9, C(b1)}, {5, C(b1)}, {6, C(b2)}},
      {{14, C(b2)}, {13, C(a1)}, {10, coherent({b2, r})}, {2, C(r)},
       {11, C(a1 + r)}, {6, C(b2) + C(a1 + r)}},
      {{14, C(b1)}, {13, C(a2)}, {9, coherent({b1, r})}, {1, C(r)},
       {5, C(b1) + C(a2 + r)}, {12, C(a2 + r)}},
      {{13, coherent({a1, a2})}, {11, C(a1)}, {5, C(a2)}, {12, C(a2)},
       {6, C(a1)}},
  }};
}

OuterBoundLp assemble(const ChannelConfig& channel, double k,
                      std::vector<int> states,
                      std::vector<std::array<double, 8>> coefficients) {
  OuterBoundLp out;
  out.channel = channel;
  out.states = std::move(states);
  out.coefficients = std::move(coefficients);
  const std::size_t n = out.states.size();
  out.ra_index = n;
  out.rb_index = n + 1;

  auto& spec = out.lp;
  spec.num_vars = n + 2;
  spec.objective.assign(spec.num_vars, 0.0);
  for (std::size_t row = 0; row < 8; ++row) {
    auto r = spec.zero_row();
    r[row < 4 ? out.ra_index : out.rb_index] = 1.0;
    for (std::size_t s = 0; s < n; ++s) r[s] = -out.coefficients[s][row];
    spec.add_leq(std::move(r), 0.0);
  }
  auto simplex = spec.zero_row();
  for (std::size_t s = 0; s < n; ++s) simplex[s] = 1.0;
  spec.add_eq(std::move(simplex), 1.0);
  apply_ray(spec, out.ra_index, out.rb_index, k);
  return out;
}

void require_plain(const ChannelConfig& channel, const char* what) {
  if (channel.variant != Variant::plain)
    throw UnsupportedVariantError(std::string(what) +
                                  " is defined for the plain diamond only");
}

}  // namespace

CutId::CutId(Direction d, bool with_r1, bool with_r2) : direction_(d) {
  members_ = NodeSet{d == Direction::a_to_b ? Node::A : Node::B};
  if (with_r1) members_ = members_.with(Node::R1);
  if (with_r2) members_ = members_.with(Node::R2);
}

const std::array<CutId, 8>& standard_cuts() {
  static const std::array<CutId, 8> cuts = {
      CutId(Direction::a_to_b, false, false),
      CutId(Direction::a_to_b, true, false),
      CutId(Direction::a_to_b, false, true),
      CutId(Direction::a_to_b, true, true),
      CutId(Direction::b_to_a, false, false),
      CutId(Direction::b_to_a, true, false),
      CutId(Direction::b_to_a, false, true),
      CutId(Direction::b_to_a, true, true),
  };
  return cuts;
}

double state_cut_capacity(const HalfDuplexState& st, const CutId& cut,
                          const ChannelConfig& channel) {
  require_plain(channel, "state_cut_capacity");
  const NodeSet inside = cut.members();
  const NodeSet tx = st.transmitters;

  // Links from a transmitter inside the cut to a receiver outside it.
  struct Link {
    Node t, r;
    double snr;
  };
  std::vector<Link> crossing;
  for (Node t : kAllNodes) {
    if (!tx.contains(t) || !inside.contains(t)) continue;
    for (Node r : kAllNodes) {
      if (tx.contains(r) || inside.contains(r)) continue;
      if (auto g = channel.link(t, r)) crossing.push_back({t, r, *g});
    }
  }

  // Group crossing links into connected components.
  std::array<int, 4> parent{0, 1, 2, 3};
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x)
      x = parent[static_cast<std::size_t>(x)];
    return x;
  };
  for (const auto& l : crossing)
    parent[static_cast<std::size_t>(find(static_cast<int>(l.t)))] =
        find(static_cast<int>(l.r));

  double total = 0.0;
  for (int root = 0; root < 4; ++root) {
    NodeSet txs, rxs;
    double snr_sum = 0.0, amp_sum = 0.0;
    for (const auto& l : crossing) {
      if (find(static_cast<int>(l.t)) != root) continue;
      txs = txs.with(l.t);
      rxs = rxs.with(l.r);
      snr_sum += l.snr;
      amp_sum += std::sqrt(l.snr);
    }
    if (txs.empty()) continue;
    if (txs.size() == 1) {
      total += capacity(snr_sum);  // broadcast, receivers pooled
    } else if (rxs.size() == 1) {
      total += capacity(amp_sum * amp_sum);  // coherent MAC
    } else {
      throw Error("state_cut_capacity: shared multi-antenna crossing");
    }
  }
  return total;
}

std::array<double, 8> cut_vector(const HalfDuplexState& st,
                                 const ChannelConfig& channel) {
  std::array<double, 8> v{};
  const auto& cuts = standard_cuts();
  for (std::size_t i = 0; i < 8; ++i)
    v[i] = state_cut_capacity(st, cuts[i], channel);
  return v;
}

std::vector<int> outer_states(Variant v) {
  switch (v) {
    case Variant::plain: return {1, 2, 5, 6, 13, 14};
    case Variant::direct_link: return {1, 2, 3, 4, 5, 6, 7, 8, 13, 14};
    case Variant::interfering_relays:
      return {1, 2, 5, 6, 9, 10, 11, 12, 13, 14};
  }
  return {};
}

OuterBoundLp build_plain_outer_lp(const ChannelConfig& channel, double k,
                                  const std::vector<int>& states) {
  channel.validate();
  require_plain(channel, "build_plain_outer_lp");
  std::vector<std::array<double, 8>> coeffs;
  coeffs.reserve(states.size());
  for (int id : states) coeffs.push_back(cut_vector(state(id), channel));
  return assemble(channel, k, states, std::move(coeffs));
}

OuterBoundLp build_outer_lp(const ChannelConfig& channel, double k) {
  channel.validate();
  check_ratio(k);
  if (channel.variant == Variant::plain)
    return build_plain_outer_lp(channel, k, outer_states(Variant::plain));

  const std::vector<int> states = outer_states(channel.variant);
  const std::array<Row, 8> rows = channel.variant == Variant::direct_link
                                      ? direct_link_rows(channel)
                                      : interfering_rows(channel);
  std::vector<std::array<double, 8>> coeffs(states.size(),
                                            std::array<double, 8>{});
  for (std::size_t row = 0; row < 8; ++row) {
    for (const auto& [id, value] : rows[row]) {
      auto it = std::find(states.begin(), states.end(), id);
      coeffs[static_cast<std::size_t>(it - states.begin())][row] += value;
    }
  }
  return assemble(channel, k, states, std::move(coeffs));
}

SupportPoint solve_outer(const OuterBoundLp& bound, double k) {
  std::ostringstream what;
  what << "outer bound (" << to_string(bound.channel.variant) << ", k=" << k
       << ")";
  const lp::LpSolution sol = solve_or_throw(bound.lp, what.str());
  SupportPoint p;
  p.k = k;
  p.residual = sol.max_residual;
  p.rates = {std::max(0.0, sol.assignment[bound.ra_index]),
             std::max(0.0, sol.assignment[bound.rb_index])};
  for (std::size_t s = 0; s < bound.states.size(); ++s)
    p.schedule[bound.states[s]] = sol.assignment[s];
  return p;
}

SupportPoint outer_support(const ChannelConfig& channel, double k) {
  return solve_outer(build_outer_lp(channel, k), k);
}

std::vector<std::pair<int, std::optional<int>>> dominance_report(
    const ChannelConfig& channel) {
  channel.validate();
  require_plain(channel, "dominance_report");
  std::array<std::array<double, 8>, kNumStates> vectors{};
  for (const auto& st : all_states())
    vectors[static_cast<std::size_t>(st.id - 1)] = cut_vector(st, channel);

  auto dominates = [&](int j, int i) {
    const auto& vj = vectors[static_cast<std::size_t>(j - 1)];
    const auto& vi = vectors[static_cast<std::size_t>(i - 1)];
    for (std::size_t c = 0; c < 8; ++c)
      if (vj[c] < vi[c] - 1e-12) return false;
    return true;
  };

  std::vector<std::pair<int, std::optional<int>>> out;
  for (int i = 1; i <= kNumStates; ++i) {
    std::optional<int> by;
    for (int j : {13, 14}) {
      if (j != i && dominates(j, i)) {
        by = j;
        break;
      }
    }
    out.emplace_back(i, by);
  }
  return out;
}

}  // namespace diamond::cutset

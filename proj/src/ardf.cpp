#include "diamond/protocols.hpp"

#include <cmath>
#include <sstream>

#include "diamond/error.hpp"
#include "lp_builder.hpp"

namespace diamond::protocols {

namespace {

void require_interfering(const ChannelConfig& channel) {
  if (channel.variant != Variant::interfering_relays)
    throw UnsupportedVariantError(
        "AR-DF needs the interfering-relays variant, channel is " +
        std::string(to_string(channel.variant)));
}

void check_params(const ArdfParams& p) {
  for (std::size_t i = 0; i < 4; ++i) {
    if (!(p.alpha[i] >= 0.0 && p.alpha[i] <= 1.0) ||
        !(p.beta[i] >= 0.0 && p.beta[i] <= 1.0))
      throw DomainError("AR-DF split parameters must lie in [0, 1]");
  }
}

// Capacity coefficients of one direction's alternating-path block. For the
// A->B flow, "first" is the state where A sends to R2 while R1 forwards to
// B (state 2) and "second" the one where A sends to R1 while R2 forwards
// (state 1). For B->A the roles of the labels are exchanged.
struct DirectionCaps {
  double first_direct;     // sub-rate 1 <= mu_first * first_direct
  double second_direct;    // sub-rate 2 <= mu_second * second_direct
  double first_fwd;        // sub-rate 1 <= mu_first*first_fwd + mu_second*second_res
  double second_res;
  double second_fwd;       // sub-rate 2 <= mu_second*second_fwd + mu_first*first_res
  double first_res;
  double first_sum;        // sum <= mu_first * first_sum
  double second_sum;       // sum <= mu_second * second_sum
};

// Source links (s1 to R1, s2 to R2), destination links (d1, d2), relay link
// r, and the (alpha, beta) pairs of the two states.
DirectionCaps direction_caps(double s1, double s2, double d1, double d2,
                             double r, double al1, double be1, double al2,
                             double be2) {
  auto C = capacity;
  DirectionCaps c{};
  c.first_direct = C(al1 * s2);
  c.second_direct = C(al2 * s1);
  c.first_fwd = C(be1 * d1 / (1.0 + (1.0 - be1) * d1));
  c.second_res = C((1.0 - be2) * d2);
  c.second_fwd = C(be2 * d2 / (1.0 + (1.0 - be2) * d2));
  c.first_res = C((1.0 - be1) * d1);
  c.first_sum =
      C(s2 + (1.0 - be1) * r + 2.0 * std::sqrt((1.0 - al1) * (1.0 - be1) * s2 * r));
  c.second_sum =
      C(s1 + (1.0 - be2) * r + 2.0 * std::sqrt((1.0 - al2) * (1.0 - be2) * s1 * r));
  return c;
}

DirectionCaps a_side(const ChannelConfig& c, const ArdfParams& p) {
  return direction_caps(c.gamma_a1, c.gamma_a2, c.gamma_b1, c.gamma_b2,
                        *c.gamma_12, p.alpha[0], p.beta[0], p.alpha[1],
                        p.beta[1]);
}

DirectionCaps b_side(const ChannelConfig& c, const ArdfParams& p) {
  return direction_caps(c.gamma_b1, c.gamma_b2, c.gamma_a1, c.gamma_a2,
                        *c.gamma_12, p.alpha[2], p.beta[2], p.alpha[3],
                        p.beta[3]);
}

void add_direction(detail::LpBuilder& b, const DirectionCaps& c,
                   std::size_t mu_first, std::size_t mu_second,
                   std::size_t sub1, std::size_t sub2) {
  b.leq({{sub1, 1}, {mu_first, -c.first_direct}});
  b.leq({{sub2, 1}, {mu_second, -c.second_direct}});
  b.leq({{sub1, 1}, {mu_first, -c.first_fwd}, {mu_second, -c.second_res}});
  b.leq({{sub2, 1}, {mu_second, -c.second_fwd}, {mu_first, -c.first_res}});
  b.leq({{sub1, 1}, {sub2, 1}, {mu_first, -c.first_sum}});
  b.leq({{sub1, 1}, {sub2, 1}, {mu_second, -c.second_sum}});
}

// Best one-way rate per unit time of one direction's block.
double one_way_rate(const DirectionCaps& caps) {
  detail::LpBuilder b;
  const auto m1 = b.var("mu_first"), m2 = b.var("mu_second");
  const auto s1 = b.var("sub_1"), s2 = b.var("sub_2");
  add_direction(b, caps, m1, m2, s1, s2);
  b.eq({{m1, 1}, {m2, 1}}, 1.0);
  return solve_or_throw(b.build_max({s1, s2}), "AR-DF one-way").objective_value;
}

}  // namespace

SupportPoint ardf_support_with(const ChannelConfig& channel, double k,
                               const ArdfParams& params) {
  channel.validate();
  check_ratio(k);
  require_interfering(channel);
  check_params(params);

  detail::LpBuilder b;
  const auto mu1 = b.var("mu_1"), mu2 = b.var("mu_2");
  const auto mu5 = b.var("mu_5"), mu6 = b.var("mu_6");
  const auto ra1 = b.var("R_a1"), ra2 = b.var("R_a2");
  const auto rb1 = b.var("R_b1"), rb2 = b.var("R_b2");
  const auto ra = b.var("R_a"), rb = b.var("R_b");

  // A->B: state 2 (A->R2, R1->B) then state 1 (A->R1, R2->B).
  add_direction(b, a_side(channel, params), mu2, mu1, ra1, ra2);
  // B->A: state 6 (B->R2, R1->A) then state 5 (B->R1, R2->A).
  add_direction(b, b_side(channel, params), mu6, mu5, rb1, rb2);

  b.eq({{ra, 1}, {ra1, -1}, {ra2, -1}});
  b.eq({{rb, 1}, {rb1, -1}, {rb2, -1}});
  b.eq({{mu1, 1}, {mu2, 1}, {mu5, 1}, {mu6, 1}}, 1.0);

  std::ostringstream what;
  what << "AR-DF (k=" << k << ")";
  const lp::LpSolution sol = solve_or_throw(b.build(ra, rb, k), what.str());
  const auto& x = sol.assignment;

  SupportPoint p;
  p.k = k;
  p.residual = sol.max_residual;
  p.rates = {std::max(0.0, x[ra]), std::max(0.0, x[rb])};
  p.schedule = {{1, x[mu1]}, {2, x[mu2]}, {5, x[mu5]}, {6, x[mu6]}};
  p.ardf = params;
  return p;
}

ArdfSearch ardf_search(const ChannelConfig& channel, int grid_resolution) {
  channel.validate();
  require_interfering(channel);
  if (grid_resolution < 2)
    throw ValidationError("AR-DF grid resolution must be >= 2");

  // The A-side parameters only enter the R_a rows and the B-side ones only
  // the R_b rows. Both blocks are positively homogeneous in their mu's, so
  // for every k the joint optimum uses the split that maximizes each
  // direction's one-way rate per unit time: two 4-d searches replace the
  // 8-d one.
  const auto n = static_cast<std::size_t>(grid_resolution);
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i)
    grid[i] = static_cast<double>(i) / static_cast<double>(n - 1);

  ArdfSearch out;
  out.one_way_a = -1.0;
  out.one_way_b = -1.0;
  ArdfParams trial;
  for (double al1 : grid)
    for (double be1 : grid)
      for (double al2 : grid)
        for (double be2 : grid) {
          trial.alpha = {al1, al2, al1, al2};
          trial.beta = {be1, be2, be1, be2};
          const double ra = one_way_rate(a_side(channel, trial));
          if (ra > out.one_way_a + 1e-12) {
            out.one_way_a = ra;
            out.params.alpha[0] = al1;
            out.params.beta[0] = be1;
            out.params.alpha[1] = al2;
            out.params.beta[1] = be2;
          }
          const double rb = one_way_rate(b_side(channel, trial));
          if (rb > out.one_way_b + 1e-12) {
            out.one_way_b = rb;
            out.params.alpha[2] = al1;
            out.params.beta[2] = be1;
            out.params.alpha[3] = al2;
            out.params.beta[3] = be2;
          }
        }
  return out;
}

SupportPoint ardf_support(const ChannelConfig& channel, double k,
                          int grid_resolution) {
  return ardf_support_with(channel, k,
                           ardf_search(channel, grid_resolution).params);
}

}  // namespace diamond::protocols

#include "diamond/protocols.hpp"

#include <algorithm>
#include <sstream>

#include "diamond/error.hpp"
#include "lp_builder.hpp"

namespace diamond::protocols {

namespace {

// Rates (to R1, to R2) of the degraded Gaussian broadcast from A in state 3
// with a fraction theta of the power on the stronger relay's private layer.
std::pair<double, double> broadcast_rates(double g1, double g2, double theta) {
  const bool r1_strong = g1 >= g2;
  const double strong = r1_strong ? g1 : g2;
  const double weak = r1_strong ? g2 : g1;
  const double r_strong = capacity(theta * strong);
  const double r_weak = capacity((1.0 - theta) * weak / (1.0 + theta * weak));
  return r1_strong ? std::pair{r_strong, r_weak} : std::pair{r_weak, r_strong};
}

// One-way A->B MDF over states 1-4 for a fixed broadcast split.
lp::LpSolution solve_one_way(const ChannelConfig& c, double theta) {
  detail::LpBuilder b;
  const auto mu1 = b.var("mu_1"), mu2 = b.var("mu_2"), mu3 = b.var("mu_3"),
             mu4 = b.var("mu_4");
  const auto f1 = b.var("f_r1"), f2 = b.var("f_r2");
  const auto m1 = b.var("mac_r1"), m2 = b.var("mac_r2");
  const auto [bc1, bc2] = broadcast_rates(c.gamma_a1, c.gamma_a2, theta);

  // Reception at the relays: state 1 (A->R1), state 2 (A->R2), state 3 (BC).
  b.leq({{f1, 1}, {mu1, -capacity(c.gamma_a1)}, {mu3, -bc1}});
  b.leq({{f2, 1}, {mu2, -capacity(c.gamma_a2)}, {mu3, -bc2}});
  // Delivery to B: state 2 (R1->B), state 1 (R2->B), state 4 (MAC).
  b.leq({{f1, 1}, {mu2, -capacity(c.gamma_b1)}, {m1, -1}});
  b.leq({{f2, 1}, {mu1, -capacity(c.gamma_b2)}, {m2, -1}});
  b.leq({{m1, 1}, {mu4, -capacity(c.gamma_b1)}});
  b.leq({{m2, 1}, {mu4, -capacity(c.gamma_b2)}});
  b.leq({{m1, 1}, {m2, 1}, {mu4, -capacity(c.gamma_b1 + c.gamma_b2)}});
  b.eq({{mu1, 1}, {mu2, 1}, {mu3, 1}, {mu4, 1}}, 1.0);

  std::ostringstream what;
  what << "MDF one-way (theta=" << theta << ")";
  return solve_or_throw(b.build_max({f1, f2}), what.str());
}

}  // namespace

OneWayResult mdf_one_way(const ChannelConfig& channel,
                         cutset::Direction direction, const MdfOptions& opts) {
  channel.validate();
  if (opts.theta_points < 2)
    throw ValidationError("MDF theta grid needs at least 2 points");
  const bool reverse = direction == cutset::Direction::b_to_a;
  const ChannelConfig c = reverse ? channel.swapped() : channel;

  OneWayResult best;
  bool first = true;
  for (int i = 0; i < opts.theta_points; ++i) {
    const double theta =
        static_cast<double>(i) / static_cast<double>(opts.theta_points - 1);
    const lp::LpSolution sol = solve_one_way(c, theta);
    if (first || sol.objective_value > best.rate + 1e-12) {
      first = false;
      best.rate = sol.objective_value;
      best.theta = theta;
      best.residual = sol.max_residual;
      best.schedule.clear();
      for (int s = 1; s <= 4; ++s) {
        const int id = reverse ? mirror_state(s) : s;
        best.schedule[id] = sol.assignment[static_cast<std::size_t>(s - 1)];
      }
    }
  }
  return best;
}

SupportPoint mdf_two_way_support(const OneWayResult& a_to_b,
                                 const OneWayResult& b_to_a, double k) {
  check_ratio(k);
  const double ra_max = a_to_b.rate, rb_max = b_to_a.rate;
  SupportPoint p;
  p.k = k;

  // Fraction of time spent on the A->B one-way schedule.
  double tau = 1.0;
  if (is_b_axis(k)) {
    tau = 0.0;
  } else if (k > 0.0) {
    // A degenerate triangle meets an interior ray only at the origin.
    tau = (ra_max > 0.0 && rb_max > 0.0) ? rb_max / (rb_max + k * ra_max)
                                         : (ra_max > 0.0 ? 0.0 : 1.0);
  }
  p.rates = {tau * ra_max, (1.0 - tau) * rb_max};
  p.residual = std::max(a_to_b.residual, b_to_a.residual);

  for (const auto& [id, mu] : a_to_b.schedule) p.schedule[id] += tau * mu;
  for (const auto& [id, mu] : b_to_a.schedule)
    p.schedule[id] += (1.0 - tau) * mu;
  return p;
}

SupportPoint mdf_two_way_support(const ChannelConfig& channel, double k,
                                 const MdfOptions& opts) {
  return mdf_two_way_support(
      mdf_one_way(channel, cutset::Direction::a_to_b, opts),
      mdf_one_way(channel, cutset::Direction::b_to_a, opts), k);
}

}  // namespace diamond::protocols

#include "diamond/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "diamond/error.hpp"

namespace diamond::oracle {

namespace {

double C(double x) { return std::log2(1.0 + x); }

// Two transmitters combining coherently at one receiver.
double Cc(double x, double y) {
  const double s = std::sqrt(x) + std::sqrt(y);
  return C(s * s);
}
double Cc(double x, double y, double z) {
  const double s = std::sqrt(x) + std::sqrt(y) + std::sqrt(z);
  return C(s * s);
}

double min4(double a, double b, double c, double d) {
  return std::min(std::min(a, b), std::min(c, d));
}

// Two sub-flows with individual caps u and a joint cap.
double two_flow(double u1, double u2, double joint) {
  return std::min(u1 + u2, joint);
}

RatePair plain_outer(const ChannelConfig& ch, const Mu& m) {
  const double a1 = ch.gamma_a1, a2 = ch.gamma_a2, b1 = ch.gamma_b1,
               b2 = ch.gamma_b2;
  const double ra = min4(
      m[14] * C(a1 + a2) + m[1] * C(a1) + m[2] * C(a2),
      m[14] * C(a2) + m[13] * C(b1) + m[2] * (C(a2) + C(b1)),
      m[14] * C(a1) + m[13] * C(b2) + m[1] * (C(a1) + C(b2)),
      m[13] * Cc(b1, b2) + m[1] * C(b2) + m[2] * C(b1));
  const double rb = min4(
      m[14] * C(b1 + b2) + m[5] * C(b1) + m[6] * C(b2),
      m[14] * C(b2) + m[13] * C(a1) + m[6] * (C(a1) + C(b2)),
      m[14] * C(b1) + m[13] * C(a2) + m[5] * (C(b1) + C(a2)),
      m[13] * Cc(a1, a2) + m[5] * C(a2) + m[6] * C(a1));
  return {ra, rb};
}

RatePair direct_outer(const ChannelConfig& ch, const Mu& m) {
  const double a1 = ch.gamma_a1, a2 = ch.gamma_a2, b1 = ch.gamma_b1,
               b2 = ch.gamma_b2, ab = *ch.gamma_ab;
  const double ra = min4(
      m[14] * C(a1 + a2) + m[4] * C(ab) + m[2] * C(a2 + ab) +
          m[1] * C(a1 + ab) + m[3] * C(a1 + a2 + ab),
      m[14] * C(a2) + m[13] * C(b1) + m[4] * Cc(b1, ab) +
          m[2] * (C(b1) + C(a2 + ab)) + m[1] * C(ab) + m[3] * C(a2 + ab),
      m[14] * C(a1) + m[13] * C(b2) + m[4] * Cc(b2, ab) + m[2] * C(ab) +
          m[1] * (C(b2) + C(a1 + ab)) + m[3] * C(a1 + ab),
      m[13] * Cc(b1, b2) + m[4] * Cc(b1, b2, ab) + m[2] * Cc(b1, ab) +
          m[1] * Cc(b2, ab) + m[3] * C(ab));
  const double rb = min4(
      m[14] * C(b1 + b2) + m[8] * C(ab) + m[6] * C(b2 + ab) +
          m[5] * C(b1 + ab) + m[7] * C(b1 + b2 + ab),
      m[14] * C(b2) + m[13] * C(a1) + m[8] * Cc(a1, ab) +
          m[6] * (C(a1) + C(b2 + ab)) + m[5] * C(ab) + m[7] * C(b2 + ab),
      m[14] * C(b1) + m[13] * C(a2) + m[8] * Cc(a2, ab) + m[6] * C(ab) +
          m[5] * (C(a2) + C(b1 + ab)) + m[7] * C(b1 + ab),
      m[13] * Cc(a1, a2) + m[8] * Cc(a1, a2, ab) + m[6] * Cc(a1, ab) +
          m[5] * Cc(a2, ab) + m[7] * C(ab));
  return {ra, rb};
}

RatePair interfering_outer(const ChannelConfig& ch, const Mu& m) {
  const double a1 = ch.gamma_a1, a2 = ch.gamma_a2, b1 = ch.gamma_b1,
               b2 = ch.gamma_b2, r = *ch.gamma_12;
  const double ra = min4(
      m[14] * C(a1 + a2) + m[10] * C(a2) + m[2] * C(a2) + m[9] * C(a1) +
          m[1] * C(a1),
      m[14] * C(a2) + m[13] * C(b1) + m[10] * Cc(a2, r) +
          m[2] * (C(a2) + C(b1 + r)) + m[11] * C(b1 + r) + m[6] * C(r),
      m[14] * C(a1) + m[13] * C(b2) + m[9] * Cc(a1, r) +
          m[1] * (C(a1) + C(b2 + r)) + m[12] * C(b2 + r) + m[5] * C(r),
      m[13] * Cc(b1, b2) + m[2] * C(b1) + m[1] * C(b2) + m[11] * C(b1) +
          m[12] * C(b2));
  const double rb = min4(
      m[14] * C(b1 + b2) + m[10] * C(b2) + m[9] * C(b1) + m[5] * C(b1) +
          m[6] * C(b2),
      m[14] * C(b2) + m[13] * C(a1) + m[10] * Cc(b2, r) + m[2] * C(r) +
          m[11] * C(a1 + r) + m[6] * (C(b2) + C(a1 + r)),
      m[14] * C(b1) + m[13] * C(a2) + m[9] * Cc(b1, r) + m[1] * C(r) +
          m[5] * (C(b1) + C(a2 + r)) + m[12] * C(a2 + r),
      m[13] * Cc(a1, a2) + m[11] * C(a1) + m[5] * C(a2) + m[12] * C(a2) +
          m[6] * C(a1));
  return {ra, rb};
}

// One-way MDF flow from a source with links (s1, s2) to the relays and
// relays with links (d1, d2) to the destination. Time fractions: p1 (source
// to R1, R2 to destination), p2 (source to R2, R1 to destination), p3
// (broadcast), p4 (relay MAC).
double mdf_flow(double s1, double s2, double d1, double d2, double theta,
                double p1, double p2, double p3, double p4) {
  double bc1, bc2;
  if (s1 >= s2) {
    bc1 = C(theta * s1);
    bc2 = C((1.0 - theta) * s2 / (1.0 + theta * s2));
  } else {
    bc2 = C(theta * s2);
    bc1 = C((1.0 - theta) * s1 / (1.0 + theta * s1));
  }
  const double in1 = p1 * C(s1) + p3 * bc1;
  const double in2 = p2 * C(s2) + p3 * bc2;
  const double out1 = p2 * C(d1);
  const double out2 = p1 * C(d2);
  const double left1 = std::max(0.0, in1 - out1);
  const double left2 = std::max(0.0, in2 - out2);
  // Leftovers drain through the relay MAC (a polymatroid).
  const double mac = std::min({left1 + left2,
                               std::min(left1, p4 * C(d1)) +
                                   std::min(left2, p4 * C(d2)),
                               p4 * C(d1 + d2)});
  return std::min(in1, out1) + std::min(in2, out2) + mac;
}

double lattice(double g, double h, double c) {
  const double share = g + h > 0.0 ? g / (g + h) : 0.0;
  const double v = share + g;
  return v > 1.0 ? c * std::log2(v) : 0.0;
}

double star(double g, double h) {
  if (g + h <= 0.0) return 0.0;
  const double x = g - h / (g + h);
  return x > 0.0 ? C(x) : 0.0;
}

struct Lattice {
  double a1, b1, a2, b2;  // A->R1, B->R1, A->R2, B->R2 compute rates
};

Lattice lattice_rates(const ChannelConfig& ch) {
  const double c = ch.convention == Convention::as_printed ? 0.5 : 1.0;
  return {lattice(ch.gamma_a1, ch.gamma_b1, c),
          lattice(ch.gamma_b1, ch.gamma_a1, c),
          lattice(ch.gamma_a2, ch.gamma_b2, c),
          lattice(ch.gamma_b2, ch.gamma_a2, c)};
}

}  // namespace

Family outer_family(const ChannelConfig& channel) {
  channel.validate();
  const ChannelConfig ch = channel;
  switch (ch.variant) {
    case Variant::plain:
      return {"outer", {1, 2, 5, 6, 13, 14},
              [ch](const Mu& m) { return plain_outer(ch, m); }};
    case Variant::direct_link:
      return {"outer", {1, 2, 3, 4, 5, 6, 7, 8, 13, 14},
              [ch](const Mu& m) { return direct_outer(ch, m); }};
    case Variant::interfering_relays:
      return {"outer", {1, 2, 5, 6, 9, 10, 11, 12, 13, 14},
              [ch](const Mu& m) { return interfering_outer(ch, m); }};
  }
  throw ValidationError("unknown variant");
}

Family mdf_family(const ChannelConfig& channel, double theta_a,
                  double theta_b) {
  channel.validate();
  const ChannelConfig ch = channel;
  return {"mdf", {1, 2, 3, 4, 5, 6, 7, 8}, [=](const Mu& m) {
            const double ra = mdf_flow(ch.gamma_a1, ch.gamma_a2, ch.gamma_b1,
                                       ch.gamma_b2, theta_a, m[1], m[2], m[3],
                                       m[4]);
            const double rb = mdf_flow(ch.gamma_b1, ch.gamma_b2, ch.gamma_a1,
                                       ch.gamma_a2, theta_b, m[5], m[6], m[7],
                                       m[8]);
            return RatePair{ra, rb};
          }};
}

Family cf_cmac_family(const ChannelConfig& channel) {
  channel.validate();
  const ChannelConfig ch = channel;
  const Lattice L = lattice_rates(ch);
  return {"cf-cmac", {9, 10, 13}, [=](const Mu& m) {
            const double ra = two_flow(
                std::min(m[9] * L.a1, m[13] * C(ch.gamma_b1)),
                std::min(m[10] * L.a2, m[13] * C(ch.gamma_b2)),
                m[13] * C(ch.gamma_b1 + ch.gamma_b2));
            const double rb = two_flow(
                std::min(m[9] * L.b1, m[13] * C(ch.gamma_a1)),
                std::min(m[10] * L.b2, m[13] * C(ch.gamma_a2)),
                m[13] * C(ch.gamma_a1 + ch.gamma_a2));
            return RatePair{ra, rb};
          }};
}

Family cf_bc_family(const ChannelConfig& channel) {
  channel.validate();
  const ChannelConfig ch = channel;
  const Lattice L = lattice_rates(ch);
  return {"cf-bc", {9, 10, 11, 12}, [=](const Mu& m) {
            const double ra = std::min(m[9] * L.a1, m[11] * C(ch.gamma_b1)) +
                              std::min(m[10] * L.a2, m[12] * C(ch.gamma_b2));
            const double rb = std::min(m[9] * L.b1, m[11] * C(ch.gamma_a1)) +
                              std::min(m[10] * L.b2, m[12] * C(ch.gamma_a2));
            return RatePair{ra, rb};
          }};
}

Family comabc_family(const ChannelConfig& channel) {
  channel.validate();
  if (channel.variant != Variant::direct_link)
    throw UnsupportedVariantError("comabc oracle needs a direct link");
  const ChannelConfig ch = channel;
  const double ab = *ch.gamma_ab;
  const double a1 = ch.gamma_a1, b1 = ch.gamma_b1, a2 = ch.gamma_a2,
               b2 = ch.gamma_b2;
  const bool a1_ge = a1 >= b1, a2_ge = a2 >= b2;
  const int coop1 = a1_ge ? 2 : 6;
  const int coop2 = a2_ge ? 1 : 5;
  return {"comabc", {9, 10, 11, 12, coop1, coop2}, [=](const Mu& m) {
            double ra1, rb1, ra2, rb2;
            if (a1_ge) {
              ra1 = std::min(m[9] * star(a1, b1) + m[2] * C(ab),
                             m[11] * C(b1) + m[2] * C(b1 + ab));
              rb1 = std::min(m[9] * star(b1, a1), m[11] * C(a1));
            } else {
              rb1 = std::min(m[9] * star(b1, a1) + m[6] * C(ab),
                             m[11] * C(a1) + m[6] * C(a1 + ab));
              ra1 = std::min(m[9] * star(a1, b1), m[11] * C(b1));
            }
            if (a2_ge) {
              ra2 = std::min(m[10] * star(a2, b2) + m[1] * C(ab),
                             m[12] * C(b2) + m[1] * C(b2 + ab));
              rb2 = std::min(m[10] * star(b2, a2), m[12] * C(a2));
            } else {
              rb2 = std::min(m[10] * star(b2, a2) + m[5] * C(ab),
                             m[12] * C(a2) + m[5] * C(a2 + ab));
              ra2 = std::min(m[10] * star(a2, b2), m[12] * C(b2));
            }
            return RatePair{ra1 + ra2, rb1 + rb2};
          }};
}

Family ardf_family(const ChannelConfig& channel, const ArdfParams& params) {
  channel.validate();
  if (channel.variant != Variant::interfering_relays)
    throw UnsupportedVariantError("ar-df oracle needs interfering relays");
  const double a1 = channel.gamma_a1, a2 = channel.gamma_a2,
               b1 = channel.gamma_b1, b2 = channel.gamma_b2,
               r = *channel.gamma_12;
  const auto& al = params.alpha;
  const auto& be = params.beta;
  auto fwd = [](double beta, double g) {
    return C(beta * g / (1.0 + (1.0 - beta) * g));
  };
  auto coh = [r](double alpha, double beta, double g) {
    return C(g + (1.0 - beta) * r +
             2.0 * std::sqrt((1.0 - alpha) * (1.0 - beta) * g * r));
  };
  return {"ar-df", {1, 2, 5, 6}, [=](const Mu& m) {
            const double u1 = std::min(
                m[2] * C(al[0] * a2),
                m[2] * fwd(be[0], b1) + m[1] * C((1.0 - be[1]) * b2));
            const double u2 = std::min(
                m[1] * C(al[1] * a1),
                m[1] * fwd(be[1], b2) + m[2] * C((1.0 - be[0]) * b1));
            const double ra =
                std::min({u1 + u2, m[2] * coh(al[0], be[0], a2),
                          m[1] * coh(al[1], be[1], a1)});
            // B->A: the state with B->R2 and R1->A is state 6, the one with
            // B->R1 and R2->A is state 5.
            const double v1 = std::min(
                m[6] * C(al[2] * b2),
                m[6] * fwd(be[2], a1) + m[5] * C((1.0 - be[3]) * a2));
            const double v2 = std::min(
                m[5] * C(al[3] * b1),
                m[5] * fwd(be[3], a2) + m[6] * C((1.0 - be[2]) * a1));
            const double rb =
                std::min({v1 + v2, m[6] * coh(al[2], be[2], b2),
                          m[5] * coh(al[3], be[3], b1)});
            return RatePair{ra, rb};
          }};
}

}  // namespace diamond::oracle

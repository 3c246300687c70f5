#include <doctest.h>

#include <cmath>
#include <random>

#include "diamond/cutset.hpp"
#include "diamond/error.hpp"
#include "diamond/protocols.hpp"

using namespace diamond;
using namespace diamond::protocols;

namespace {

double C(double x) { return std::log2(1.0 + x); }

ChannelConfig random_plain(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> db(0.0, 30.0);
  return make_plain(snr_from_db(db(rng)), snr_from_db(db(rng)),
                    snr_from_db(db(rng)), snr_from_db(db(rng)));
}

const std::vector<double> kRatios = {0.0, 0.1, 0.2, 0.35, 0.5, 0.7, 1.0,
                                     1.4, 2.0, 3.0, 5.0, 10.0, kBAxis};

// k2 point on or outside the chord through the k1 and k3 points.
bool outside_chord(RatePair p1, RatePair p2, RatePair p3, double tol) {
  const double ex = p3.r_a - p1.r_a, ey = p3.r_b - p1.r_b;
  const double side_p2 = ex * (p2.r_b - p1.r_b) - ey * (p2.r_a - p1.r_a);
  const double side_o = ex * (0.0 - p1.r_b) - ey * (0.0 - p1.r_a);
  if (std::fabs(side_p2) <= tol) return true;
  return side_p2 * side_o <= 0.0;
}

template <class F>
void check_concave(F support) {
  std::vector<RatePair> pts;
  for (double k : kRatios) pts.push_back(support(k).rates);
  for (std::size_t i = 0; i + 2 < pts.size(); ++i) {
    CAPTURE(kRatios[i + 1]);
    CHECK(outside_chord(pts[i], pts[i + 1], pts[i + 2], 1e-6));
  }
}

void check_on_ray(const SupportPoint& p, double k) {
  CHECK(p.rates.r_a >= 0.0);
  CHECK(p.rates.r_b >= 0.0);
  if (is_b_axis(k)) {
    CHECK(p.rates.r_a == 0.0);
  } else {
    CHECK(p.rates.r_b == doctest::Approx(k * p.rates.r_a).epsilon(1e-9).scale(1.0));
  }
  CHECK(schedule_total(p.schedule) == doctest::Approx(1.0).epsilon(1e-9));
  for (const auto& [id, mu] : p.schedule) CHECK(mu >= -1e-12);
}

}  // namespace

// ---------------------------------------------------------------- MDF

TEST_CASE("one-way MDF on channel I reaches the equalizing vertex") {
  const auto ch = channel_from_caption("I");
  const double c10 = C(10.0), c15 = C(std::pow(10.0, 1.5));
  const auto ab = mdf_one_way(ch, cutset::Direction::a_to_b);
  CHECK(ab.rate == doctest::Approx(2 * c10 * c15 / (c10 + c15)).epsilon(1e-9));
  CHECK(ab.rate == doctest::Approx(4.0987).epsilon(3e-5));
  CHECK(ab.schedule.at(1) == doctest::Approx(0.4076).epsilon(1e-3));
  CHECK(ab.schedule.at(2) == doctest::Approx(0.5924).epsilon(1e-3));
  CHECK(ab.schedule.at(3) == doctest::Approx(0.0).scale(1.0));
  CHECK(ab.schedule.at(4) == doctest::Approx(0.0).scale(1.0));
  const auto ba = mdf_one_way(ch, cutset::Direction::b_to_a);
  CHECK(ba.rate == doctest::Approx(ab.rate).epsilon(1e-12));
  CHECK(ba.schedule.count(5) == 1);
  CHECK(ba.schedule.count(1) == 0);
}

TEST_CASE("two-way MDF is the triangle") {
  const auto ch = channel_from_caption("II");
  const auto ab = mdf_one_way(ch, cutset::Direction::a_to_b);
  const auto ba = mdf_one_way(ch, cutset::Direction::b_to_a);
  for (double k : kRatios) {
    const auto p = mdf_two_way_support(ab, ba, k);
    check_on_ray(p, k);
    // On the line R_a / ra_max + R_b / rb_max = 1.
    CHECK(p.rates.r_a / ab.rate + p.rates.r_b / ba.rate == doctest::Approx(1.0).epsilon(1e-12));
  }
  const auto sym = mdf_two_way_support(channel_from_caption("I"), 1.0);
  CHECK(sym.rates.r_a == doctest::Approx(2.049).epsilon(1e-3));
  CHECK(sym.rates.r_b == doctest::Approx(2.049).epsilon(1e-3));
}

TEST_CASE("MDF broadcast split matters on asymmetric relays") {
  // With the state-3 broadcast disabled (one theta point at 0 still allows
  // it, so compare against a 2-point grid) the rate cannot increase.
  const auto ch = channel_from_caption("III");
  const auto fine = mdf_one_way(ch, cutset::Direction::a_to_b, {101});
  const auto coarse = mdf_one_way(ch, cutset::Direction::a_to_b, {2});
  CHECK(fine.rate >= coarse.rate - 1e-12);
  CHECK(fine.theta >= 0.0);
  CHECK(fine.theta <= 1.0);
  CHECK_THROWS_AS(mdf_one_way(ch, cutset::Direction::a_to_b, {1}), ValidationError);
}

TEST_CASE("MDF stays inside the outer bound") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 15; ++t) {
    const auto ch = random_plain(rng);
    for (double k : kRatios)
      CHECK(mdf_two_way_support(ch, k).rates.support() <=
            cutset::outer_support(ch, k).rates.support() + 1e-9);
  }
}

// ------------------------------------------------- compute-and-forward

TEST_CASE("lattice compute rates") {
  const auto ch = channel_from_caption("I");
  const double g15 = std::pow(10.0, 1.5), g10 = 10.0;
  const auto r1 = cf_compute_phase_bounds(ch, 1);
  CHECK(r1.a == doctest::Approx(std::log2(g15 / (g15 + g10) + g15)));
  CHECK(r1.a == doctest::Approx(5.017).epsilon(1e-4));
  CHECK(r1.b == doctest::Approx(3.356).epsilon(1e-4));
  const auto r2 = cf_compute_phase_bounds(ch, 2);
  CHECK(r2.a == doctest::Approx(r1.b));
  CHECK(r2.b == doctest::Approx(r1.a));

  auto half = ch;
  half.convention = Convention::as_printed;
  CHECK(cf_compute_phase_bounds(half, 1).a == doctest::Approx(r1.a / 2));

  // Weak links: log2(share + g) <= 0 clips to zero; 0/0 reads as zero.
  CHECK(cf_compute_phase_bounds(make_plain(0.1, 0.1, 5, 5), 1).a == 0.0);
  CHECK(cf_compute_phase_bounds(make_plain(0, 0, 0, 0), 1).a == 0.0);
  CHECK_THROWS_AS(cf_compute_phase_bounds(ch, 3), ValidationError);
}

TEST_CASE("CF-CMAC symmetric rate on channel I") {
  const auto ch = channel_from_caption("I");
  const auto r1 = cf_compute_phase_bounds(ch, 1);
  const auto r2 = cf_compute_phase_bounds(ch, 2);
  // B-side sum constraint binds: (L1 + L2) m = C(b1 + b2) (1 - 2m).
  const double mac = C(ch.gamma_b1 + ch.gamma_b2);
  const double m = mac / (r1.a + r2.a + 2 * mac);
  const auto p = cf_cmac_support(ch, 1.0);
  CHECK(p.rates.r_a == doctest::Approx((r1.a + r2.a) * m).epsilon(1e-9));
  CHECK(p.rates.r_a == doctest::Approx(2.360).epsilon(1e-3));
  CHECK(p.rates.r_b == doctest::Approx(p.rates.r_a).epsilon(1e-12));
  CHECK(p.schedule.at(9) == doctest::Approx(0.2819).epsilon(1e-3));
  CHECK(p.schedule.at(13) == doctest::Approx(0.4362).epsilon(1e-3));
  check_on_ray(p, 1.0);

  REQUIRE(p.flows);
  const auto& f = *p.flows;
  CHECK(f.at(9, Node::A, Node::R1) == doctest::Approx(f.at(13, Node::R1, Node::B)));
  CHECK(f.at(9, Node::B, Node::R1) == doctest::Approx(f.at(13, Node::R1, Node::A)));
  CHECK(f.at(10, Node::A, Node::R2) + f.at(9, Node::A, Node::R1) ==
        doctest::Approx(p.rates.r_a));
  CHECK(f.at(13, Node::R1, Node::B) + f.at(13, Node::R2, Node::B) <=
        p.schedule.at(13) * mac + 1e-9);
}

TEST_CASE("CF-BC symmetric rate on channel I") {
  const auto ch = channel_from_caption("I");
  const auto r1 = cf_compute_phase_bounds(ch, 1);
  const double ca1 = C(ch.gamma_a1), cb1 = C(ch.gamma_b1);
  // Symmetric schedule: mu9 = mu10 = m, mu11 = mu12 = t, m + t = 1/2; scan.
  double best = 0.0;
  const int n = 200000;
  for (int i = 0; i <= n; ++i) {
    const double m = 0.5 * i / n, t = 0.5 - m;
    best = std::max(best, std::min(r1.a * m, cb1 * t) + std::min(r1.b * m, ca1 * t));
  }
  const auto p = cf_cmac_support(ch, 1.0);
  const auto q = cf_bc_support(ch, 1.0);
  CHECK(q.rates.r_a == doctest::Approx(best).epsilon(1e-5));
  CHECK(q.rates.r_a == doctest::Approx(1.709).epsilon(1e-3));
  CHECK(q.rates.r_a < p.rates.r_a);
  check_on_ray(q, 1.0);
}

TEST_CASE("CF-BC never beats CF-CMAC") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 25; ++t) {
    auto ch = random_plain(rng);
    if (t % 2) ch.convention = Convention::as_printed;
    for (double k : kRatios) {
      const auto a = cf_cmac_support(ch, k);
      const auto b = cf_bc_support(ch, k);
      CHECK(b.rates.r_a <= a.rates.r_a + 1e-9);
      CHECK(b.rates.r_b <= a.rates.r_b + 1e-9);
      CHECK(a.rates.support() <= cutset::outer_support(ch, k).rates.support() + 1e-9);
    }
  }
}

TEST_CASE("compute-and-forward ignores the extra links") {
  const auto p = channel_from_caption("I");
  const auto d = channel_from_caption("direct_fig6");
  const auto r = make_interfering(p.gamma_a1, p.gamma_a2, p.gamma_b1, p.gamma_b2, 50.0);
  for (double k : kRatios) {
    CHECK(cf_cmac_support(d, k).rates.support() == doctest::Approx(cf_cmac_support(p, k).rates.support()).epsilon(1e-12));
    CHECK(cf_bc_support(r, k).rates.support() == doctest::Approx(cf_bc_support(p, k).rates.support()).epsilon(1e-12));
  }
}

TEST_CASE("region boundaries are concave") {
  const auto I = channel_from_caption("II");
  check_concave([&](double k) { return cf_cmac_support(I, k); });
  check_concave([&](double k) { return cf_bc_support(I, k); });
  check_concave([&](double k) { return mdf_two_way_support(I, k); });
  const auto f6 = channel_from_caption("direct_fig6");
  check_concave([&](double k) { return comabc_support(f6, k); });
  const auto f7 = channel_from_caption("interfering_fig7");
  const auto params = ardf_search(f7, 5).params;
  check_concave([&](double k) { return ardf_support_with(f7, k, params); });
}

// --------------------------------------------------------------- CoMABC

TEST_CASE("CoMABC cooperative state choice") {
  CHECK(comabc_cooperative_state(make_direct_link(5, 1, 1, 5, 1), 1) == 2);
  CHECK(comabc_cooperative_state(make_direct_link(5, 1, 1, 5, 1), 2) == 5);
  CHECK(comabc_cooperative_state(make_direct_link(1, 5, 5, 1, 1), 1) == 6);
  CHECK(comabc_cooperative_state(make_direct_link(1, 5, 5, 1, 1), 2) == 1);
  CHECK_THROWS_AS(comabc_cooperative_state(make_direct_link(1, 1, 1, 1, 1), 0), ValidationError);
}

TEST_CASE("CoMABC on the direct-link preset") {
  const auto ch = channel_from_caption("direct_fig6");
  const auto p = comabc_support(ch, 1.0);
  // Frozen from the grid oracle / independent prototype.
  CHECK(p.rates.r_a == doctest::Approx(1.9014840).epsilon(1e-6));
  check_on_ray(p, 1.0);
  for (double k : kRatios) {
    const auto c = comabc_support(ch, k);
    CHECK(c.rates.support() >= cf_bc_support(ch, k).rates.support() - 1e-9);
    CHECK(c.rates.support() <= cutset::outer_support(ch, k).rates.support() + 1e-9);
  }
  CHECK_THROWS_AS(comabc_support(channel_from_caption("I"), 1.0), UnsupportedVariantError);
}

TEST_CASE("CoMABC with a silent direct link still covers the CF-BC axis points") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 10; ++t) {
    const auto p = random_plain(rng);
    auto d = make_direct_link(p.gamma_a1, p.gamma_a2, p.gamma_b1, p.gamma_b2, 0.0);
    for (auto conv : {Convention::complex, Convention::as_printed}) {
      d.convention = conv;
      auto pc = p;
      pc.convention = conv;
      for (double k : {0.0, kBAxis})
        CHECK(comabc_support(d, k).rates.support() >=
              cf_bc_support(pc, k).rates.support() - 1e-9);
    }
  }
}

// ---------------------------------------------------------------- AR-DF

TEST_CASE("AR-DF on the interfering-relay preset") {
  const auto ch = channel_from_caption("interfering_fig7");
  const auto s11 = ardf_search(ch, 11);
  const auto s21 = ardf_search(ch, 21);
  CHECK(s11.one_way_a == doctest::Approx(3.8217015).epsilon(1e-6));
  CHECK(s11.one_way_b == doctest::Approx(s11.one_way_a).epsilon(1e-9));
  CHECK(s21.one_way_a >= s11.one_way_a - 1e-12);  // 11-point grid is nested in 21
  CHECK(std::fabs(s21.one_way_a - s11.one_way_a) < 0.02);

  const auto p = ardf_support_with(ch, 1.0, s11.params);
  CHECK(p.rates.support() == doctest::Approx(3.8217015).epsilon(1e-6));
  check_on_ray(p, 1.0);
  REQUIRE(p.ardf);
  CHECK(p.rates.support() <= cutset::outer_support(ch, 1.0).rates.support());
  // Axis points are the one-way rates.
  CHECK(ardf_support_with(ch, 0.0, s11.params).rates.r_a == doctest::Approx(s11.one_way_a));
  CHECK(ardf_support_with(ch, kBAxis, s11.params).rates.r_b == doctest::Approx(s11.one_way_b));
}

TEST_CASE("AR-DF split search equals the joint search") {
  // Brute force over all 8 parameters on a 3-point grid.
  const auto ch = make_interfering(snr_from_db(18), snr_from_db(7), snr_from_db(12),
                                   snr_from_db(16), snr_from_db(14));
  const auto split = ardf_search(ch, 3);
  const double g[] = {0.0, 0.5, 1.0};
  for (double k : {0.3, 1.0, 2.0}) {
    double best = 0.0;
    ArdfParams prm;
    for (int code = 0; code < 6561; ++code) {
      int c = code;
      for (int i = 0; i < 4; ++i) {
        prm.alpha[i] = g[c % 3];
        c /= 3;
        prm.beta[i] = g[c % 3];
        c /= 3;
      }
      best = std::max(best, ardf_support_with(ch, k, prm).rates.support());
    }
    CHECK(ardf_support_with(ch, k, split.params).rates.support() ==
          doctest::Approx(best).epsilon(1e-9));
  }
}

TEST_CASE("AR-DF argument checks") {
  const auto ch = channel_from_caption("interfering_fig7");
  ArdfParams bad;
  bad.alpha[2] = 1.5;
  CHECK_THROWS_AS(ardf_support_with(ch, 1.0, bad), DomainError);
  CHECK_THROWS_AS(ardf_search(ch, 1), ValidationError);
  CHECK_THROWS_AS(ardf_support(channel_from_caption("I"), 1.0), UnsupportedVariantError);
  CHECK_THROWS_AS(ardf_support_with(ch, -2.0, ArdfParams{}), ValidationError);
}

// ------------------------------------------------------------ degeneracy

TEST_CASE("all-zero channels give the origin") {
  const auto p = make_plain(0, 0, 0, 0);
  const auto d = make_direct_link(0, 0, 0, 0, 0);
  const auto r = make_interfering(0, 0, 0, 0, 0);
  for (double k : {0.0, 1.0, kBAxis}) {
    for (const auto& s : {mdf_two_way_support(p, k), cf_cmac_support(p, k),
                          cf_bc_support(p, k), comabc_support(d, k),
                          ardf_support(r, k, 3)}) {
      CHECK(s.rates.r_a == 0.0);
      CHECK(s.rates.r_b == 0.0);
    }
  }
}

#include <cmath>
#include <random>

#include "claw/constructions.hpp"
#include "claw/errors.hpp"
#include "claw/lax_oleinik.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace claw;
using claw::testing::rel_err;

TEST_SUITE("constructions") {

TEST_CASE("sawtooth nodes and variation") {
    const PLFunction s = sawtooth(1.0, 3);
    REQUIRE(s.size() == 4);
    const double xs[] = {0.25, 1.0 / 3.0, 0.5, 1.0};
    for (int i = 0; i < 4; ++i) CHECK(s.nodes()[i].x == doctest::Approx(xs[i]));
    CHECK(total_variation(s) == doctest::Approx(6.0));
    CHECK(s.support_hull().lo >= 0.0);
    CHECK(s.support_hull().hi <= 1.0);
    CHECK(s.eval(0.75) == doctest::Approx(0.5));
    CHECK_THROWS_AS(sawtooth(1.0, 1), std::domain_error);
    CHECK_THROWS_AS(sawtooth(0.0, 5), std::domain_error);
}

TEST_CASE("block solution at unit scale") {
    const BlockSolution s = block_solution({1.0, 1.0, 0.0}, 1.0);
    CHECK(s.L == doctest::Approx(std::sqrt(1.5)));
    CHECK(s.tv == doctest::Approx(2.0 * std::sqrt(2.0 / 3.0)));
    CHECK(s.profile.eval(0.6) == doctest::Approx(2.0 * 0.6 / 3.0));
}

TEST_CASE("block solution at shock birth") {
    const Block b{0.5, 2.0, 1.0};
    const BlockSolution s = block_solution(b, b.shock_time());
    CHECK(s.L == doctest::Approx(b.ell));
    CHECK(s.profile.eval(b.x0 + b.ell, Side::left) == doctest::Approx(b.h));
    CHECK_THROWS_AS(block_solution(b, 0.5 * b.shock_time()), std::domain_error);
    CHECK(block_tv(b, 0.5 * b.shock_time()) == doctest::Approx(2.0 * b.h));
}

TEST_CASE("block closed forms agree with the exact solver") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int i = 0; i < 40; ++i) {
        const Block b{0.1 + U(rng), 0.1 + 2.0 * U(rng), U(rng) - 0.5};
        const double t = b.shock_time() * (1.0 + 4.0 * U(rng));
        const BlockSolution s = block_solution(b, t);
        const SolveResult r = solve_burgers(b.materialize(), t);
        CHECK(l1_norm(subtract(r.solution, s.profile)) <= 1e-9 * (1.0 + l1_norm(s.profile)));
        CHECK(rel_err(total_variation(r.solution), s.tv) <= 1e-9);
        REQUIRE(r.shocks.size() == 1);
        CHECK(rel_err(r.shocks[0].x - b.x0, s.L) <= 1e-9);
        // decay and spreading bounds
        const double p = 0.5 * s.tv;
        CHECK(p >= std::sqrt(b.h * b.ell / (2.0 * t)) * (1.0 - 1e-12));
        CHECK(s.L <= std::sqrt(2.0 * b.ell * b.h * t) * (1.0 + 1e-12));
    }
}

TEST_CASE("packet parameters") {
    const double t = std::ldexp(1.0, -4);
    const Packet pk = make_packet(3, t);
    CHECK(pk.N == 27.0);
    CHECK(pk.ell == doctest::Approx(0.5 * std::pow(2.0, -1.5) / 27.0));
    CHECK(pk.h == doctest::Approx(8.0 * pk.ell));
    CHECK(pk.h <= 1.0);
    CHECK(pk.L >= pk.ell);
    CHECK(2.0 * pk.N * pk.h == doctest::Approx(std::pow(2.0, 1.5)));
    CHECK(pk.extent() == doctest::Approx(std::sqrt(2.0 * t) * std::pow(2.0, 1.5) * pk.N * pk.ell));
    CHECK(packet_tv(pk, t) >=
          std::sqrt(2.0) * std::pow(2.0, 1.5) * pk.ell * pk.N / std::sqrt(t) * (1.0 - 1e-12));
    CHECK(packet_tv(pk, t) ==
          doctest::Approx(2.0 * pk.N * pk.h * std::sqrt(2.0 * pk.ell / (2.0 * pk.h * t + pk.ell))));
    CHECK_THROWS_AS(make_packet(3, std::ldexp(1.0, -5)), std::domain_error);
    CHECK_THROWS_AS(make_packet(0, 0.5), std::domain_error);
    CHECK_THROWS_AS(packet_tv(pk, 2.0 * t), std::domain_error);
}

TEST_CASE("materialized packets match the symbolic variation") {
    for (int k : {2, 3, 4}) {
        const double t = std::ldexp(1.0, -k);
        const Packet pk = make_packet(k, t);
        const PLFunction u = packet_materialize(pk);
        CHECK(total_variation(u) == doctest::Approx(std::pow(2.0, 0.5 * k)));
        const SolveResult r = solve_burgers(u, t);
        CHECK(rel_err(total_variation(r.solution), packet_tv(pk, t)) <= 1e-9);
        // blocks stay apart: one component per block, with positive gaps
        const auto comps = nonzero_components(r.solution);
        CHECK(static_cast<double>(comps.size()) == pk.N);
        for (std::size_t i = 1; i < comps.size(); ++i) CHECK(comps[i].lo - comps[i - 1].hi > 0.0);
    }
    CHECK_THROWS_AS(packet_materialize(make_packet(8, 0.01)), ResourceError);
}

TEST_CASE("hat_u level range and support") {
    const HatU hu = hat_u(std::ldexp(1.0, -6));
    CHECK(hu.k1 == 6);
    CHECK(hu.k2 == 16);
    CHECK(hu.packets.size() == 11);
    CHECK(hu.support_length() <= 1.0);
    CHECK(hu.support_length() ==
          doctest::Approx(std::sqrt(hu.t / 2.0) * (hu.k2 - hu.k1 + 1)));
    CHECK(hu.tv(hu.t) >= std::sqrt(1.0 / (2.0 * hu.t)) * (hu.k2 - hu.k1 + 1));
    CHECK_THROWS_AS(hat_u(1.0), std::domain_error);
    // exact powers of two and perfect squares are not bumped up
    CHECK(hat_u(0.5).k1 == 1);
    CHECK(hat_u(0.5).k2 == 1);
}

TEST_CASE("hat_u variation constant is stable") {
    double lo = 1e300, hi = 0.0;
    for (int m = 4; m <= 8; ++m) {
        const HatU hu = hat_u(std::ldexp(1.0, -m));
        CHECK(hu.support_length() <= 1.0);
        const double c = 1.0 / (hu.t * hu.tv(hu.t));
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    }
    CHECK(hi / lo <= 2.0);
}

TEST_CASE("small hat_u materializes and solves to its symbolic variation") {
    const HatU hu = hat_u(0.3);
    REQUIRE(hu.materializable());
    const PLFunction u = hu.materialize();
    CHECK(total_variation(u) == doctest::Approx(hu.tv_initial()));
    CHECK(u.width() <= hu.support_length() * (1.0 + 1e-12));
    const SolveResult r = solve_burgers(u, hu.t);
    CHECK(rel_err(total_variation(r.solution), hu.tv(hu.t)) <= 1e-9);
}

TEST_CASE("Hoelder quotients of hat_u blocks stay below the bound") {
    for (double sigma : {0.25, 0.5, 0.75, 0.9}) {
        for (int m = 1; m <= 12; ++m) {
            const HatU hu = hat_u(std::ldexp(1.0, -m) * 0.99);
            CHECK(hat_u_block_holder(hu, sigma) <= holder_bound(sigma));
        }
    }
    CHECK(holder_bound(0.5) == doctest::Approx(std::exp(4.0 * 0.5 / std::exp(1.0))));
}

TEST_CASE("multi-scale datum layout") {
    const auto ts = default_multiscale_schedule(3);
    REQUIRE(ts.size() == 3);
    CHECK(ts[2] == doctest::Approx(std::exp(-4.0)));
    const MultiScaleDatum d = multiscale_datum(3, ts);
    REQUIRE(d.levels.size() == 3);
    CHECK(d.levels[0].hat.k1 == 2);
    CHECK(d.levels[0].hat.k2 == 3);
    CHECK(d.levels[1].hat.k1 == 3);
    CHECK(d.levels[1].hat.k2 == 5);
    CHECK(d.levels[2].hat.k1 == 6);
    CHECK(d.levels[2].hat.k2 == 15);
    CHECK(d.materializable_levels == 2);
    CHECK(d.tail_factor == doctest::Approx(0.25));
    for (const auto& lv : d.levels) {
        CHECK(lv.x == doctest::Approx(4.0 * (1.0 - std::ldexp(1.0, -lv.j))));
        // support of the level's solution up to t = 1
        CHECK(lv.scale * lv.hat.support_length() + lv.scale * 1.0 <= lv.interval().length());
    }
    const double bad[] = {0.5, 0.6};
    CHECK_THROWS_AS(multiscale_datum(2, bad), std::domain_error);
}

TEST_CASE("multi-scale levels scale like rescaled hat_u") {
    const auto ts = default_multiscale_schedule(2);
    const MultiScaleDatum d = multiscale_datum(2, ts);
    const PLFunction u = d.materialize_prefix();
    for (const auto& lv : d.levels) {
        const Interval I = lv.interval();
        CHECK(total_variation(u, I) == doctest::Approx(lv.scale * lv.hat.tv_initial()));
        const SolveResult r = solve_burgers(u, lv.t);
        CHECK(rel_err(total_variation(r.solution, I), lv.tv_at_design()) <= 1e-9);
    }
}

TEST_CASE("random multi-scale datum") {
    const PLFunction a = random_palpha_datum(0.75, 8, 3);
    const PLFunction b = random_palpha_datum(0.75, 8, 3);
    CHECK(a == b);
    CHECK(one_sided_excess(a, 256.0) <= 1e-12);
    CHECK(max_abs_slope(a) == doctest::Approx(256.0));
    double expected_tv = 0.0;
    for (int k = 0; k <= 8; ++k) expected_tv += std::pow(2.0, 0.25 * k);
    CHECK(total_variation(a) == doctest::Approx(expected_tv));
    CHECK(random_palpha_datum(0.75, 8, 4) != a);
}

}  // TEST_SUITE

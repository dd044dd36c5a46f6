#include <doctest.h>

#include <cmath>
#include <random>

#include "claw/json_io.hpp"
#include "claw/pwl.hpp"
#include "oracles.hpp"

using namespace claw;
using claw::testing::random_pl;
using claw::testing::triangle;

TEST_SUITE("pwl") {

TEST_CASE("eval one-sided limits") {
    const PLFunction tri = triangle(0.0, 1.0, 1.0);
    CHECK(tri.eval(0.5, Side::left) == 1.0);
    CHECK(tri.eval(0.5, Side::right) == 1.0);
    CHECK(PLFunction().eval(3.7, Side::left) == 0.0);

    const PLFunction step({{0.0, 0.0, 1.0}, {1.0, 1.0, 0.0}});
    CHECK(step.eval(0.0, Side::left) == 0.0);
    CHECK(step.eval(0.0, Side::right) == 1.0);
    CHECK(step.eval(0.5) == 1.0);
    CHECK(step.eval(-1.0) == 0.0);
    CHECK(step.eval(2.0) == 0.0);
}

TEST_CASE("constructor validation") {
    CHECK_THROWS_AS(PLFunction({{0.0, 1.0, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(PLFunction({{0.0, 0.0, 1.0}, {0.0, 1.0, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(PLFunction({{0.0, 0.0, 1.0}, {1.0, 1.0, 2.0}}), std::invalid_argument);
}

TEST_CASE("variation and norms of a triangle") {
    const PLFunction tri = triangle(0.0, 1.0, 1.0);
    CHECK(total_variation(tri) == doctest::Approx(2.0));
    CHECK(positive_variation(tri) == doctest::Approx(1.0));
    CHECK(negative_variation(tri) == doctest::Approx(1.0));
    CHECK(l1_norm(tri) == doctest::Approx(0.5));
    CHECK(linf_norm(tri) == 1.0);
    CHECK(support_measure(tri) == 1.0);
    CHECK(total_variation(tri, Interval{0.25, 0.75}) == doctest::Approx(0.5 + 0.5));
    const PLFunction ramp_down({{0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}});
    CHECK(positive_variation(negate(ramp_down)) == doctest::Approx(1.0));
}

TEST_CASE("lp norms") {
    const PLFunction tri = triangle(0.0, 1.0, 1.0);
    CHECK(lp_norm(tri, 1.0) == doctest::Approx(0.5));
    CHECK(lp_norm(tri, 2.0) == doctest::Approx(std::sqrt(1.0 / 3.0)));
    const PLFunction box({{0.0, 0.0, 2.0}, {1.0, 2.0, 0.0}});
    CHECK(lp_norm(box, 3.0) == doctest::Approx(2.0));
    const PLFunction g({{0.0, 0.0, -1.0}, {2.0, 1.0, 0.0}});
    CHECK(lp_norm(g, 2.0) == doctest::Approx(std::sqrt(2.0 / 3.0)));
}

TEST_CASE("l1 of a sign-changing segment") {
    const PLFunction f({{0.0, 0.0, -1.0}, {2.0, 1.0, 0.0}});
    CHECK(l1_norm(f) == doctest::Approx(1.0));
    CHECK(integral(f) == doctest::Approx(0.0));
}

TEST_CASE("add and scale") {
    std::mt19937_64 rng(1);
    const PLFunction f = random_pl(rng, 12);
    CHECK(add(f, negate(f)).is_zero());
    CHECK(add(f, negate(f)).empty());
    CHECK(rescale(f, 1.0, 0.3) == f);
    const PLFunction g = scale_values(f, 2.5);
    CHECK(g.eval(0.37) == doctest::Approx(2.5 * f.eval(0.37)));
}

TEST_CASE("rescale of a block") {
    const PLFunction tri = triangle(0.0, 1.0, 1.0);
    const PLFunction r = rescale(tri, 2.0, 0.5);
    CHECK(r.width() == doctest::Approx(0.5));
    CHECK(linf_norm(r) == doctest::Approx(2.0));
    CHECK(total_variation(r) == doctest::Approx(4.0));
    // direct substitution: 2 * tri(2x)
    for (double x : {0.05, 0.2, 0.3, 0.45}) CHECK(r.eval(x) == doctest::Approx(2.0 * tri.eval(2.0 * x)));
}

TEST_CASE("one-sided excess") {
    const PLFunction tri = triangle(0.0, 1.0, 1.0);
    CHECK(one_sided_excess(tri, 2.0) == 0.0);
    CHECK(one_sided_excess(tri, 1.0) == doctest::Approx(0.5));
    const PLFunction box({{0.0, 0.0, 1.0}, {1.0, 1.0, 0.0}});
    CHECK(one_sided_excess(box, 100.0) == doctest::Approx(1.0));
    CHECK(one_sided_excess(negate(tri), 0.5) == doctest::Approx(0.75));
}

TEST_CASE("nonzero components") {
    const PLFunction f = add(triangle(0.0, 1.0, 1.0), triangle(3.0, 1.0, 1.0));
    const auto comps = nonzero_components(f);
    REQUIRE(comps.size() == 2);
    CHECK(comps[0] == Interval{0.0, 1.0});
    CHECK(comps[1] == Interval{3.0, 4.0});
    CHECK(nonzero_components(triangle(0.0, 1.0, 1.0)).size() == 1);
    CHECK(nonzero_components(PLFunction()).empty());
    // zero crossing inside a segment splits the component
    const PLFunction g({{0.0, 0.0, -1.0}, {2.0, 1.0, 0.0}});
    const auto gc = nonzero_components(g);
    REQUIRE(gc.size() == 2);
    CHECK(gc[0].hi == doctest::Approx(1.0));
}

TEST_CASE("bridge and restrict") {
    const PLFunction tri = triangle(0.0, 1.0, 1.0);
    const Interval iv{0.25, 0.75};
    const PLFunction b = bridge(tri, std::span<const Interval>(&iv, 1));
    CHECK(b.eval(0.5) == doctest::Approx(0.5));
    CHECK(b.eval(0.1) == doctest::Approx(tri.eval(0.1)));
    CHECK(total_variation(b) == doctest::Approx(1.0));

    const PLFunction r = restrict_to(tri, iv);
    CHECK(r.eval(0.5) == doctest::Approx(1.0));
    CHECK(r.eval(0.1) == 0.0);
    CHECK(r.eval(0.25, Side::left) == 0.0);
    CHECK(r.eval(0.25, Side::right) == doctest::Approx(0.5));
}

TEST_CASE("positive part inserts crossings") {
    const PLFunction g({{0.0, 0.0, -1.0}, {2.0, 1.0, 0.0}});
    const PLFunction p = positive_part(g);
    CHECK(p.eval(0.5) == 0.0);
    CHECK(p.eval(1.5) == doctest::Approx(0.5));
    CHECK(l1_norm(p) == doctest::Approx(0.5));
    CHECK(l1_norm(negative_part(g)) == doctest::Approx(0.5));
}

TEST_CASE("potential of a block and a box") {
    const PWQuadratic U = potential(triangle(0.0, 1.0, 1.0));
    CHECK(U.right_tail() == doctest::Approx(0.5));
    CHECK(U.continuity_defect() < 1e-15);
    const PWQuadratic B = potential(PLFunction({{0.0, 0.0, 1.0}, {1.0, 1.0, 0.0}}));
    CHECK(B(0.3) == doctest::Approx(0.3));
    CHECK(B(-1.0) == 0.0);
    CHECK(B(5.0) == doctest::Approx(1.0));
    CHECK(potential(PLFunction())(1.0) == 0.0);
}

TEST_CASE("json round trip is bit stable") {
    std::mt19937_64 rng(7);
    const PLFunction f = random_pl(rng, 30);
    const std::string s = nlohmann::json(f).dump();
    const PLFunction g = nlohmann::json::parse(s).get<PLFunction>();
    CHECK(f == g);
}

TEST_CASE("invariants on random data") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> U(-0.5, 1.5);
    for (int rep = 0; rep < 200; ++rep) {
        const PLFunction f = random_pl(rng, 2 + rep % 15);
        const PLFunction g = random_pl(rng, 2 + rep % 9);
        const double tf = total_variation(f), tg = total_variation(g);
        CHECK(total_variation(add(f, g)) <= (tf + tg) * (1 + 1e-12) + 1e-15);
        CHECK(l1_norm(f) <= linf_norm(f) * support_measure(f) * (1 + 1e-12));
        CHECK(positive_variation(f) + negative_variation(f) == doctest::Approx(tf).epsilon(1e-12));
        CHECK(positive_variation(f) == doctest::Approx(negative_variation(f)).epsilon(1e-9));

        const PLFunction n1 = normalize(f);
        CHECK(normalize(n1) == n1);
        for (int i = 0; i < 500; ++i) {
            const double x = U(rng);
            CHECK(n1.eval(x) == doctest::Approx(f.eval(x)).epsilon(1e-9));
        }
    }
}

TEST_CASE("sum agrees with pairwise add") {
    std::mt19937_64 rng(5);
    std::vector<PLFunction> fs;
    for (int i = 0; i < 6; ++i) fs.push_back(random_pl(rng, 8));
    PLFunction acc;
    for (const auto& f : fs) acc = add(acc, f);
    const PLFunction s = sum(fs);
    for (double x = -0.1; x < 1.1; x += 0.0137) CHECK(s.eval(x) == doctest::Approx(acc.eval(x)).epsilon(1e-9));
}

}

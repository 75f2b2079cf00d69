#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "bz/lattice_model.hpp"

using namespace bz;

TEST_CASE("integer windows")
{
    CHECK(window_size(1) == 8);
    CHECK(window_size(9) == 360);
    const GeneratorSet g = integer_window(1);
    REQUIRE(g.size() == 8);
    CHECK(g.points.front() == IPoint{-1, -1});
    CHECK(g.points[3] == IPoint{-1, 0});
    CHECK(g.points[4] == IPoint{1, 0});
    CHECK(g.points.back() == IPoint{1, 1});
    CHECK(g.is_window_derived());

    const GeneratorSet w = integer_window(9);
    std::set<IPoint> distinct(w.points.begin(), w.points.end());
    CHECK(distinct.size() == 360);
    CHECK(distinct.count(IPoint{0, 0}) == 0);
    for (std::size_t i = 0; i < w.size(); ++i) CHECK(window_point(9, i) == w.points[i]);
    CHECK_THROWS_AS(integer_window(0), std::invalid_argument);
}

TEST_CASE("generator set validation")
{
    GeneratorSet g;
    g.points = {{1, 0}, {0, 1}};
    CHECK_NOTHROW(g.validate());
    g.points.push_back({1, 0});
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
    g.points = {{0, 0}};
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
    g.points.clear();
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
    g.points = {{1, 0}};
    g.scale = 0;
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
}

TEST_CASE("counter rng is reproducible and unbiased enough")
{
    CounterRng a(42), b(42), c(43);
    for (int i = 0; i < 10; ++i) {
        const auto va = a.next();
        CHECK(va == b.next());
        CHECK(va != c.next());
    }
    CounterRng r(7);
    std::vector<int> bins(10, 0);
    for (int i = 0; i < 20000; ++i) {
        const auto v = r.uniform(-5, 4);
        REQUIRE(v >= -5);
        REQUIRE(v <= 4);
        ++bins[static_cast<std::size_t>(v + 5)];
    }
    for (int n : bins) {
        CHECK(n > 1800);
        CHECK(n < 2200);
    }
    CHECK(r.uniform(3, 3) == 3);
    CHECK_THROWS_AS(r.uniform(1, 0), std::invalid_argument);
}

TEST_CASE("perturbation")
{
    const PerturbationConfig cfg{9, 10000, 1000, 12345};
    const GeneratorSet g = perturb(cfg);
    const GeneratorSet h = perturb(cfg);
    CHECK(g.points == h.points);
    CHECK(g.points != perturb({9, 10000, 1000, 12346}).points);
    REQUIRE(g.size() == 360);
    std::set<IPoint> distinct(g.points.begin(), g.points.end());
    CHECK(distinct.size() == 360);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const IPoint a = window_point(9, i);
        CHECK(std::llabs(g.points[i].x - 10000 * a.x) <= 1000);
        CHECK(std::llabs(g.points[i].y - 10000 * a.y) <= 1000);
    }
    const Magnitude mag = magnitude(g);
    CHECK(mag.sq <= BigRat(2) * make_rat(1, 100));
    CHECK(mag.value > 0.05);

    const GeneratorSet z = perturb({3, 10000, 0, 9});
    for (std::size_t i = 0; i < z.size(); ++i) {
        CHECK(z.points[i].x == 10000 * window_point(3, i).x);
        CHECK(z.points[i].y == 10000 * window_point(3, i).y);
    }
    CHECK(magnitude(z).sq == 0);

    CHECK_NOTHROW(perturb({9, 10000, 5000, 7}));
    CHECK_THROWS_AS(perturb({9, 10000, 5001, 7}), std::invalid_argument);
    CHECK_THROWS_AS(perturb({9, 10000, -1, 7}), std::invalid_argument);
    CHECK_THROWS_AS(perturb({0, 10000, 10, 7}), std::invalid_argument);
}

TEST_CASE("reliability cut-off")
{
    CHECK(reliable_k(9, 0, 10000).kmax == 57);
    CHECK(reliable_k(9, 200, 10000).kmax == 56);
    CHECK(reliable_k(9, 1000, 10000).kmax == 52);
    CHECK(reliable_k(9, 5000, 10000).kmax == 34);
    CHECK(reliable_k(9, 200, 10000).tau == make_rat(1, 50));
    CHECK_THROWS_AS(reliable_k(9, 5001, 10000), std::invalid_argument);

    // Against a long double evaluation away from integer boundaries, and
    // monotone in the strength.
    for (int m = 1; m <= 20; ++m) {
        long prev = reliable_k(m, 0, 1000).kmax;
        for (int q = 0; q <= 500; q += 25) {
            const long k = reliable_k(m, q, 1000).kmax;
            CHECK(k <= prev);
            prev = k;
            const long double tau = q / 1000.0L;
            const long double br = m + 1 - std::sqrt(2.0L) - (2 * std::sqrt(2.0L) + 1) * tau;
            const long double v = br > 0 ? 3.14159265358979323846L / 4 * br * br : 0;
            if (std::fabs(v - std::round(v)) > 1e-9L) CHECK(k == std::max(0L, static_cast<long>(std::ceil(v)) - 1));
        }
    }
}

TEST_CASE("adversarial perturbation clears the shell")
{
    // x inside zone 4 of Z^2: closer generators (1,0), (0,1), (1,1).
    const QPoint x(make_rat(9, 10), make_rat(13, 20));
    const BigRat tau = make_rat(2, 5);
    const GeneratorSet g = adversarial_perturbation(4, tau, x, 4);
    REQUIRE(g.size() == window_size(4));
    const BigRat p(10000);
    int moved = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const QPoint a(BigRat(window_point(4, i).x), BigRat(window_point(4, i).y));
        const QPoint b = g.position(i);
        const bool outside = sq_dist(x, a) > sq_norm(x);
        CHECK(clears_shell(x, b, tau, outside));
        CHECK((sq_dist(x, b) > sq_norm(x)) == outside);
        if (!(a == b)) ++moved;
        // Overshoot of 1/p plus rounding to the grid.
        CHECK(std::sqrt(to_double(sq_dist(a, b))) < 0.4 + 2.0 / 10000);
    }
    CHECK(moved > 0);

    CHECK_THROWS_AS(adversarial_perturbation(5, tau, x, 4), std::invalid_argument);
    CHECK_THROWS_AS(adversarial_perturbation(4, make_rat(1, 2), x, 4), std::invalid_argument);
    CHECK_THROWS_AS(adversarial_perturbation(1, tau, QPoint(make_rat(1, 2), BigRat(0)), 4), std::invalid_argument);
}

TEST_CASE("shell clearance is exact")
{
    const QPoint x(1, 0);
    // Sphere through 0 centred at (1, 0) has radius 1.
    CHECK(clears_shell(x, QPoint(3, 0), BigRat(1), true));
    CHECK_FALSE(clears_shell(x, QPoint(make_rat(29, 10), BigRat(0)), BigRat(1), true));
    CHECK(clears_shell(x, QPoint(make_rat(3, 2), BigRat(0)), make_rat(1, 2), false));
    CHECK_FALSE(clears_shell(x, QPoint(make_rat(8, 5), BigRat(0)), make_rat(1, 2), false));
}

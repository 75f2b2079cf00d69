#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <unordered_set>

#include "bz/exact_geom.hpp"

using namespace bz;

namespace {

QPoint qp(long xn, long xd, long yn, long yd) { return QPoint(make_rat(xn, xd), make_rat(yn, yd)); }

}  // namespace

TEST_CASE("rationals are canonical and round-trip through strings")
{
    CHECK(to_string(make_rat(6, -4)) == "-3/2");
    CHECK(to_string(BigRat(5)) == "5/1");
    CHECK_THROWS_AS(make_rat(1, 0), std::domain_error);

    for (const char* s : {"0/1", "-7/3", "123456789012345678901234567891/2"}) CHECK(to_string(parse_rat(s)) == s);
    CHECK(parse_rat("12") == 12);
    CHECK(parse_rat("0.4") == make_rat(2, 5));
    CHECK(parse_rat("-1.25") == make_rat(-5, 4));
    CHECK(parse_rat(".5") == make_rat(1, 2));
    CHECK_THROWS_AS(parse_rat("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rat("1.2e3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rat("1/0"), std::domain_error);
}

TEST_CASE("float conversions round to nearest")
{
    CHECK(to_double(make_rat(1, 3)) == 1.0 / 3.0);
    CHECK(to_double(make_rat(2, 3)) == 2.0 / 3.0);
    CHECK(sqrt_to_double(BigRat(2)) == std::sqrt(2.0));
    CHECK(sqrt_to_double(make_rat(1, 2)) == std::sqrt(0.5));
    CHECK(sqrt_to_double(BigRat(0)) == 0.0);
    CHECK_THROWS_AS(sqrt_to_double(BigRat(-1)), std::domain_error);

    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 1000000);
    for (int i = 0; i < 1000; ++i) {
        const long n = num(rng), d = den(rng);
        CHECK(to_double(make_rat(n, d)) == static_cast<double>(n) / static_cast<double>(d));
    }
}

TEST_CASE("equal points hash equally")
{
    std::unordered_set<QPoint, QPointHash> s;
    s.insert(qp(1, 2, 3, 4));
    s.insert(qp(2, 4, 6, 8));
    s.insert(qp(-1, 2, 3, 4));
    CHECK(s.size() == 2);
}

TEST_CASE("bisectors")
{
    const BisectorLine l = bisector_of(1, 0);
    CHECK(l.line().a == 2);
    CHECK(l.line().b == 0);
    CHECK(l.line().c == 1);
    CHECK(l.line().contains(qp(1, 2, 17, 1)));
    CHECK(l.line().side(QPoint(0, 0)) < 0);
    CHECK_THROWS_AS(bisector_of(0, 0), std::invalid_argument);
}

TEST_CASE("bisector intersection")
{
    auto p = line_intersect(bisector_of(1, 0), bisector_of(0, 1));
    REQUIRE(p);
    CHECK(*p == qp(1, 2, 1, 2));

    p = line_intersect(bisector_of(1, 0), bisector_of(1, 1));
    REQUIRE(p);
    CHECK(*p == qp(1, 2, 1, 2));

    CHECK_FALSE(line_intersect(bisector_of(1, 0), bisector_of(2, 0)));
    CHECK_FALSE(line_intersect(bisector_of(1, 1), bisector_of(-3, -3)));

    // The intersection must satisfy both equations exactly.
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> coord(-90000, 90000);
    for (int i = 0; i < 2000; ++i) {
        const long a1 = coord(rng), a2 = coord(rng), b1 = coord(rng), b2 = coord(rng);
        if ((a1 == 0 && a2 == 0) || (b1 == 0 && b2 == 0)) continue;
        const BisectorLine la = bisector_of(a1, a2), lb = bisector_of(b1, b2);
        const auto x = line_intersect(la, lb);
        if (BigInt(a1) * b2 == BigInt(a2) * b1) {
            CHECK_FALSE(x);
            continue;
        }
        REQUIRE(x);
        CHECK(la.line().contains(*x));
        CHECK(lb.line().contains(*x));
        // Equidistant from 0, a and b.
        const QPoint a(a1, a2), b(b1, b2), o(0, 0);
        CHECK(cmp_sq_dist(*x, o, a) == 0);
        CHECK(cmp_sq_dist(*x, o, b) == 0);
        const auto y = line_intersect(la.line(), lb.line());
        REQUIRE(y);
        CHECK(*x == *y);
    }
}

TEST_CASE("convex polygons")
{
    // Clockwise input with a collinear midpoint and a repeated vertex.
    ConvexPolygon sq({QPoint(0, 0), QPoint(0, 1), QPoint(1, 1), QPoint(1, 1), QPoint(1, 0), qp(1, 2, 0, 1)});
    CHECK(sq.size() == 4);
    CHECK(signed_double_area(sq.vertices()) == 2);
    CHECK(polygon_area(sq) == 1);
    CHECK(sq.centroid() == qp(1, 2, 1, 2));
    CHECK(sq.locate(qp(1, 2, 1, 3)) == 1);
    CHECK(sq.locate(QPoint(1, 0)) == 0);
    CHECK(sq.locate(qp(1, 2, 0, 1)) == 0);
    CHECK(sq.locate(QPoint(2, 0)) == -1);
    CHECK(polygon_diameter_sq(sq) == 2);

    CHECK_THROWS_AS(ConvexPolygon({QPoint(0, 0), QPoint(1, 1), QPoint(2, 2)}), std::invalid_argument);
    CHECK_THROWS_AS(ConvexPolygon({QPoint(0, 0), QPoint(4, 0), QPoint(1, 1), QPoint(0, 4)}), std::invalid_argument);
}

TEST_CASE("polygon measures agree with brute force on random convex polygons")
{
    // Points on a parabola are in convex position.
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> t(-60, 60);
    for (int iter = 0; iter < 200; ++iter) {
        std::set<long> ts;
        while (ts.size() < 6) ts.insert(t(rng));
        std::vector<QPoint> pts;
        for (long v : ts) pts.push_back(QPoint(make_rat(v, 7), make_rat(v * v, 49)));
        std::shuffle(pts.begin(), pts.end(), rng);
        std::sort(pts.begin(), pts.end(), lex_less);
        const ConvexPolygon poly(pts);

        BigRat best = 0;
        for (const auto& a : pts)
            for (const auto& b : pts) best = std::max(best, sq_dist(a, b));
        CHECK(polygon_diameter_sq(poly) == best);

        // Fan triangulation from the first vertex.
        BigRat fan = 0;
        for (std::size_t i = 1; i + 1 < poly.size(); ++i) fan += cross(poly[0], poly[i], poly[i + 1]) / 2;
        CHECK(polygon_area(poly) == fan);
        CHECK(poly.locate(poly.centroid()) == 1);
    }
}

TEST_CASE("distance to segments and origin distance range")
{
    CHECK(sq_dist_to_segment(QPoint(0, 1), QPoint(-1, 0), QPoint(1, 0)) == 1);
    CHECK(sq_dist_to_segment(QPoint(3, 4), QPoint(-1, 0), QPoint(0, 0)) == 25);
    CHECK(sq_dist_to_segment(QPoint(1, 1), QPoint(0, 0), QPoint(0, 0)) == 2);

    const ConvexPolygon cell({qp(-1, 2, -1, 2), qp(1, 2, -1, 2), qp(1, 2, 1, 2), qp(-1, 2, 1, 2)});
    const SqDistRange r = polygon_origin_dist_range(cell);
    CHECK(r.min_sq == make_rat(1, 4));
    CHECK(r.max_sq == make_rat(1, 2));

    const ConvexPolygon tri({QPoint(1, 0), QPoint(2, 0), QPoint(1, 1)});
    const SqDistRange t = polygon_origin_dist_range(tri);
    CHECK(t.min_sq == 1);
    CHECK(t.max_sq == 4);
}

TEST_CASE("orientation")
{
    CHECK(orientation(QPoint(0, 0), QPoint(1, 0), QPoint(0, 1)) == 1);
    CHECK(orientation(QPoint(0, 0), QPoint(0, 1), QPoint(1, 0)) == -1);
    CHECK(orientation(QPoint(0, 0), QPoint(1, 1), QPoint(2, 2)) == 0);
    CHECK(sign(make_rat(-1, 3)) == -1);
}

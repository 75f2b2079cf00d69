#pragma once

// Exact rational geometry in the plane: scalars, points, bisector lines and
// convex polygons. Everything here is exact; doubles only appear in the
// explicit to_double() conversions used for reporting.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace bz {

using BigInt = mpz_class;
using BigRat = mpq_class;

/// Builds num/den in canonical form. Throws std::domain_error on den == 0.
BigRat make_rat(const BigInt& num, const BigInt& den);

/// "num/den" with den > 0 (integers print as "n/1").
std::string to_string(const BigRat& q);
/// Inverse of to_string; also accepts a bare integer or a decimal such as
/// "0.4". Throws std::invalid_argument otherwise.
BigRat parse_rat(const std::string& s);

double to_double(const BigRat& q);
/// Round-to-nearest sqrt of a nonnegative rational.
double sqrt_to_double(const BigRat& q);

int sign(const BigRat& q);

struct QPoint {
    BigRat x;
    BigRat y;

    QPoint() = default;
    QPoint(BigRat x_, BigRat y_) : x(std::move(x_)), y(std::move(y_)) {}
    QPoint(std::int64_t x_, std::int64_t y_);

    friend bool operator==(const QPoint& a, const QPoint& b) { return a.x == b.x && a.y == b.y; }
};

/// Hash of the canonical coordinates; equal points hash equally.
struct QPointHash {
    std::size_t operator()(const QPoint& p) const noexcept;
};

/// Lexicographic (x, then y) order.
bool lex_less(const QPoint& a, const QPoint& b);

BigRat sq_norm(const QPoint& p);
BigRat sq_dist(const QPoint& a, const QPoint& b);
BigRat dot(const QPoint& a, const QPoint& b);
/// z-component of (b - a) x (c - a); sign is the orientation of (a, b, c).
BigRat cross(const QPoint& a, const QPoint& b, const QPoint& c);
int orientation(const QPoint& a, const QPoint& b, const QPoint& c);

/// Line a*x + b*y = c with (a, b) != (0, 0).
struct Line {
    BigInt a;
    BigInt b;
    BigInt c;

    /// Sign of a*x + b*y - c at p.
    int side(const QPoint& p) const;
    bool contains(const QPoint& p) const { return side(p) == 0; }
};

/// Perpendicular bisector of 0 and the integer point (a1, a2):
///     2*a1*x + 2*a2*y = c,  c = a1^2 + a2^2.
/// The origin is on the negative side (0 < c).
struct BisectorLine {
    BigInt a1;
    BigInt a2;
    BigInt c;

    Line line() const { return Line{2 * a1, 2 * a2, c}; }

    friend bool operator==(const BisectorLine& l, const BisectorLine& r)
    {
        return l.a1 == r.a1 && l.a2 == r.a2 && l.c == r.c;
    }
};

/// Throws std::invalid_argument for the origin.
BisectorLine bisector_of(const BigInt& a1, const BigInt& a2);
inline BisectorLine bisector_of(std::int64_t a1, std::int64_t a2)
{
    return bisector_of(BigInt(static_cast<long>(a1)), BigInt(static_cast<long>(a2)));
}

/// Cramer's rule on the two bisector equations; nullopt when parallel.
std::optional<QPoint> line_intersect(const BisectorLine& l1, const BisectorLine& l2);
/// Same for general lines.
std::optional<QPoint> line_intersect(const Line& l1, const Line& l2);

/// Sign of |x - p|^2 - |x - q|^2.
int cmp_sq_dist(const QPoint& x, const QPoint& p, const QPoint& q);

/// Strictly convex polygon, counterclockwise, positive area.
class ConvexPolygon {
public:
    /// Drops repeated and collinear vertices, reorients to counterclockwise and
    /// validates convexity. Throws std::invalid_argument when fewer than three
    /// distinct non-collinear vertices remain or the input is not convex.
    explicit ConvexPolygon(std::vector<QPoint> vertices);

    const std::vector<QPoint>& vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    const QPoint& operator[](std::size_t i) const { return vertices_[i]; }

    /// Exact vertex average; strictly interior.
    QPoint centroid() const;

    /// +1 strictly inside, 0 on the boundary, -1 outside.
    int locate(const QPoint& p) const;

private:
    std::vector<QPoint> vertices_;
};

BigRat polygon_area(const ConvexPolygon& poly);
/// Twice the signed shoelace area of an arbitrary closed vertex ring.
BigRat signed_double_area(std::span<const QPoint> ring);

BigRat polygon_diameter_sq(const ConvexPolygon& poly);

/// Squared distance from `p` to the closed segment [a, b].
BigRat sq_dist_to_segment(const QPoint& p, const QPoint& a, const QPoint& b);

struct SqDistRange {
    BigRat min_sq;
    BigRat max_sq;
};

/// Min and max squared distances from the origin to the polygon boundary.
SqDistRange polygon_origin_dist_range(const ConvexPolygon& poly);

}  // namespace bz

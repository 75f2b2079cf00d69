#include "bz/exact_geom.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <mpfr.h>

namespace bz {

namespace {

std::size_t hash_mpz(const mpz_t z) noexcept
{
    std::size_t h = static_cast<std::size_t>(mpz_sgn(z)) + 0x9e3779b97f4a7c15ULL;
    const std::size_t n = mpz_size(z);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= static_cast<std::size_t>(mpz_getlimbn(z, static_cast<mp_size_t>(i))) + 0x9e3779b97f4a7c15ULL +
             (h << 6) + (h >> 2);
    }
    return h;
}

std::size_t hash_mpq(const BigRat& q) noexcept
{
    std::size_t h = hash_mpz(q.get_num_mpz_t());
    return h ^ (hash_mpz(q.get_den_mpz_t()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

BigRat make_rat(const BigInt& num, const BigInt& den)
{
    if (den == 0) throw std::domain_error("rational with zero denominator");
    BigRat q(num, den);
    q.canonicalize();
    return q;
}

std::string to_string(const BigRat& q)
{
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

BigRat parse_rat(const std::string& s)
{
    const auto slash = s.find('/');
    const auto dot = s.find('.');
    try {
        if (dot != std::string::npos && slash == std::string::npos) {
            const std::string frac = s.substr(dot + 1);
            if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos) throw std::invalid_argument(s);
            BigInt den;
            mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
            const bool neg = !s.empty() && s[0] == '-';
            std::string whole = s.substr(0, dot);
            if (whole.empty() || whole == "-" || whole == "+") whole += "0";
            BigInt num = abs(BigInt(whole)) * den + BigInt(frac);
            return make_rat(neg ? BigInt(-num) : num, den);
        }
        if (slash == std::string::npos) return BigRat(BigInt(s));
        return make_rat(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("not a rational: '" + s + "'");
    }
}

double to_double(const BigRat& q)
{
    mpfr_t r;
    mpfr_init2(r, 53);
    mpfr_set_q(r, q.get_mpq_t(), MPFR_RNDN);
    const double d = mpfr_get_d(r, MPFR_RNDN);
    mpfr_clear(r);
    return d;
}

double sqrt_to_double(const BigRat& q)
{
    if (sgn(q) < 0) throw std::domain_error("sqrt of negative rational");
    // Two roundings (q to 128 bits, then sqrt to 53) stay well inside 1 ulp.
    mpfr_t r;
    mpfr_init2(r, 128);
    mpfr_set_q(r, q.get_mpq_t(), MPFR_RNDN);
    mpfr_sqrt(r, r, MPFR_RNDN);
    const double d = mpfr_get_d(r, MPFR_RNDN);
    mpfr_clear(r);
    return d;
}

int sign(const BigRat& q) { return sgn(q); }

QPoint::QPoint(std::int64_t x_, std::int64_t y_)
    : x(BigInt(static_cast<long>(x_))), y(BigInt(static_cast<long>(y_)))
{
}

std::size_t QPointHash::operator()(const QPoint& p) const noexcept
{
    const std::size_t h = hash_mpq(p.x);
    return h ^ (hash_mpq(p.y) * 0x100000001b3ULL);
}

bool lex_less(const QPoint& a, const QPoint& b)
{
    const int c = cmp(a.x, b.x);
    return c < 0 || (c == 0 && a.y < b.y);
}

BigRat sq_norm(const QPoint& p) { return p.x * p.x + p.y * p.y; }

BigRat sq_dist(const QPoint& a, const QPoint& b)
{
    const BigRat dx = a.x - b.x;
    const BigRat dy = a.y - b.y;
    return dx * dx + dy * dy;
}

BigRat dot(const QPoint& a, const QPoint& b) { return a.x * b.x + a.y * b.y; }

BigRat cross(const QPoint& a, const QPoint& b, const QPoint& c)
{
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

int orientation(const QPoint& a, const QPoint& b, const QPoint& c) { return sgn(cross(a, b, c)); }

int Line::side(const QPoint& p) const { return sgn(a * p.x + b * p.y - c); }

BisectorLine bisector_of(const BigInt& a1, const BigInt& a2)
{
    if (a1 == 0 && a2 == 0) throw std::invalid_argument("bisector_of: generator must differ from the origin");
    return BisectorLine{a1, a2, a1 * a1 + a2 * a2};
}

std::optional<QPoint> line_intersect(const BisectorLine& l1, const BisectorLine& l2)
{
    const BigInt delta = 2 * l1.a1 * l2.a2 - 2 * l2.a1 * l1.a2;
    if (delta == 0) return std::nullopt;
    const BigInt delta1 = l1.c * l2.a2 - l2.c * l1.a2;
    const BigInt delta2 = l1.a1 * l2.c - l2.a1 * l1.c;
    return QPoint(make_rat(delta1, delta), make_rat(delta2, delta));
}

std::optional<QPoint> line_intersect(const Line& l1, const Line& l2)
{
    const BigInt det = l1.a * l2.b - l2.a * l1.b;
    if (det == 0) return std::nullopt;
    return QPoint(make_rat(l1.c * l2.b - l2.c * l1.b, det), make_rat(l1.a * l2.c - l2.a * l1.c, det));
}

int cmp_sq_dist(const QPoint& x, const QPoint& p, const QPoint& q)
{
    return cmp(sq_dist(x, p), sq_dist(x, q));
}

ConvexPolygon::ConvexPolygon(std::vector<QPoint> vertices)
{
    std::vector<QPoint> ring;
    ring.reserve(vertices.size());
    for (auto& v : vertices) {
        if (ring.empty() || !(ring.back() == v)) ring.push_back(std::move(v));
    }
    while (ring.size() > 1 && ring.front() == ring.back()) ring.pop_back();

    bool changed = true;
    while (changed && ring.size() >= 3) {
        changed = false;
        for (std::size_t i = 0; i < ring.size() && ring.size() >= 3; ++i) {
            const std::size_t prev = (i + ring.size() - 1) % ring.size();
            const std::size_t next = (i + 1) % ring.size();
            if (orientation(ring[prev], ring[i], ring[next]) == 0) {
                ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }
    if (ring.size() < 3) throw std::invalid_argument("polygon needs at least 3 non-collinear vertices");

    if (sgn(signed_double_area(ring)) < 0) std::reverse(ring.begin(), ring.end());
    for (std::size_t i = 0; i < ring.size(); ++i) {
        const std::size_t next = (i + 1) % ring.size();
        const std::size_t after = (i + 2) % ring.size();
        if (orientation(ring[i], ring[next], ring[after]) <= 0)
            throw std::invalid_argument("polygon is not convex");
    }
    vertices_ = std::move(ring);
}

QPoint ConvexPolygon::centroid() const
{
    BigRat sx = 0;
    BigRat sy = 0;
    for (const auto& v : vertices_) {
        sx += v.x;
        sy += v.y;
    }
    const BigRat n(static_cast<long>(vertices_.size()));
    return QPoint(sx / n, sy / n);
}

int ConvexPolygon::locate(const QPoint& p) const
{
    bool on_boundary = false;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        const int o = orientation(vertices_[i], vertices_[(i + 1) % vertices_.size()], p);
        if (o < 0) return -1;
        if (o == 0) on_boundary = true;
    }
    return on_boundary ? 0 : 1;
}

BigRat signed_double_area(std::span<const QPoint> ring)
{
    BigRat twice = 0;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        const QPoint& a = ring[i];
        const QPoint& b = ring[(i + 1) % ring.size()];
        twice += a.x * b.y - a.y * b.x;
    }
    return twice;
}

BigRat polygon_area(const ConvexPolygon& poly)
{
    return signed_double_area(poly.vertices()) / 2;
}

BigRat polygon_diameter_sq(const ConvexPolygon& poly)
{
    // The diameter of a convex polygon is attained at a vertex pair.
    const auto& v = poly.vertices();
    BigRat best = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            BigRat d = sq_dist(v[i], v[j]);
            if (d > best) best = std::move(d);
        }
    return best;
}

BigRat sq_dist_to_segment(const QPoint& p, const QPoint& a, const QPoint& b)
{
    const QPoint ab(b.x - a.x, b.y - a.y);
    const QPoint ap(p.x - a.x, p.y - a.y);
    const BigRat len_sq = sq_norm(ab);
    if (len_sq == 0) return sq_norm(ap);
    BigRat t = dot(ap, ab) / len_sq;
    if (t <= 0) return sq_norm(ap);
    if (t >= 1) return sq_dist(p, b);
    const QPoint foot(a.x + t * ab.x, a.y + t * ab.y);
    return sq_dist(p, foot);
}

SqDistRange polygon_origin_dist_range(const ConvexPolygon& poly)
{
    const QPoint origin(0, 0);
    const auto& v = poly.vertices();
    SqDistRange range{sq_norm(v[0]), sq_norm(v[0])};
    for (std::size_t i = 0; i < v.size(); ++i) {
        BigRat far = sq_norm(v[i]);
        if (far > range.max_sq) range.max_sq = std::move(far);
        BigRat near = sq_dist_to_segment(origin, v[i], v[(i + 1) % v.size()]);
        if (near < range.min_sq) range.min_sq = std::move(near);
    }
    return range;
}

}  // namespace bz

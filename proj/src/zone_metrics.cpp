#include "bz/zone_metrics.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace bz {

namespace {

BigInt to_big(std::int64_t v) { return BigInt(static_cast<long>(v)); }

struct FaceMeasure {
    BigRat area;
    SqDistRange range;
    BigRat diameter_sq;
};

}  // namespace

std::vector<ZoneReport> zone_reports(const Arrangement& arr, int kmax)
{
    std::vector<ZoneReport> out;
    if (kmax <= 0) return out;
    const long reliable_kmax = arr.reliable_kmax();

    // Per-depth buckets of unclipped faces, only for the depths we report.
    std::vector<std::vector<FaceMeasure>> by_depth(static_cast<std::size_t>(kmax));
    for (const auto& f : arr.faces) {
        if (f.on_clip_boundary || f.depth >= kmax) continue;
        by_depth[static_cast<std::size_t>(f.depth)].push_back(
            FaceMeasure{polygon_area(f.polygon), polygon_origin_dist_range(f.polygon), polygon_diameter_sq(f.polygon)});
    }

    // Edge between depths d_lo < d_hi lies on the outer boundary of D_k for
    // d_lo <= k-1 < d_hi.
    std::vector<double> perimeter_delta(static_cast<std::size_t>(kmax) + 2, 0.0);
    for (const auto& e : arr.edges) {
        if (e.left == kNoFace || e.right == kNoFace) continue;
        const int a = arr.faces[static_cast<std::size_t>(e.left)].depth;
        const int b = arr.faces[static_cast<std::size_t>(e.right)].depth;
        const int lo = std::min(a, b);
        const int hi = std::max(a, b);
        if (lo == hi || lo + 1 > kmax) continue;
        const double len = sqrt_to_double(sq_dist(arr.vertices[e.v0], arr.vertices[e.v1]));
        perimeter_delta[static_cast<std::size_t>(lo + 1)] += len;
        perimeter_delta[static_cast<std::size_t>(std::min(hi, kmax) + 1)] -= len;
    }

    BigRat cum_area = 0;
    double perimeter = 0;
    out.reserve(static_cast<std::size_t>(kmax));
    for (int k = 1; k <= kmax; ++k) {
        perimeter += perimeter_delta[static_cast<std::size_t>(k)];
        const auto& faces = by_depth[static_cast<std::size_t>(k - 1)];
        ZoneReport rep;
        rep.k = k;
        rep.n_chambers = faces.size();
        rep.area = 0;
        rep.max_chamber_area = 0;
        rep.max_chamber_diameter_sq = 0;
        for (std::size_t i = 0; i < faces.size(); ++i) {
            const FaceMeasure& fm = faces[i];
            rep.area += fm.area;
            if (i == 0 || fm.range.min_sq < rep.r_sq) rep.r_sq = fm.range.min_sq;
            if (i == 0 || fm.range.max_sq > rep.R_sq) rep.R_sq = fm.range.max_sq;
            if (fm.area > rep.max_chamber_area) rep.max_chamber_area = fm.area;
            if (fm.diameter_sq > rep.max_chamber_diameter_sq) rep.max_chamber_diameter_sq = fm.diameter_sq;
        }
        cum_area += rep.area;
        rep.cum_area = cum_area;
        rep.cum_area_over_k = cum_area / BigRat(k);
        rep.r = sqrt_to_double(rep.r_sq);
        rep.R = sqrt_to_double(rep.R_sq);
        rep.W = rep.R - rep.r;
        rep.max_chamber_diameter = sqrt_to_double(rep.max_chamber_diameter_sq);
        rep.outer_perimeter = perimeter;
        rep.distortion = sgn(cum_area) > 0 ? perimeter / (2.0 * std::sqrt(M_PI * to_double(cum_area))) : 0.0;
        rep.reliable = k <= reliable_kmax && rep.n_chambers > 0;
        out.push_back(std::move(rep));
    }
    return out;
}

ZoneReport zone_report(const Arrangement& arr, int k)
{
    if (k < 1) throw std::invalid_argument("zone index k must be at least 1");
    return zone_reports(arr, k).back();
}

double unit_ball_volume(int d)
{
    if (d < 1) throw std::invalid_argument("dimension must be at least 1");
    return std::pow(M_PI, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
}

BoundSet lattice_bounds(int d, long k)
{
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    const double nu = unit_ball_volume(d);
    const double rho_k = std::pow(static_cast<double>(k) / nu, 1.0 / d);
    const double rho_km1 = std::pow(static_cast<double>(k - 1) / nu, 1.0 / d);
    const double half_diag = std::sqrt(static_cast<double>(d)) / 2.0;
    BoundSet b;
    b.d = d;
    b.k = k;
    b.r_lower = rho_k - half_diag;
    b.r_upper = rho_km1;
    b.R_lower = rho_k;
    b.R_upper = rho_k + half_diag;
    b.W_lower = rho_k - rho_km1;
    b.W_upper = std::sqrt(static_cast<double>(d));
    return b;
}

BoundSet perturbed_bounds(int d, long k, double tau)
{
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    if (tau < 0) throw std::invalid_argument("magnitude must be nonnegative");
    const double nu = unit_ball_volume(d);
    const double rho_k = std::pow(static_cast<double>(k) / nu, 1.0 / d);
    const double half_diag = std::sqrt(static_cast<double>(d)) / 2.0;
    BoundSet b;
    b.d = d;
    b.k = k;
    b.tau = tau;
    b.r_lower = rho_k - half_diag - tau;
    b.R_upper = rho_k + half_diag + tau;
    b.W_upper = std::sqrt(static_cast<double>(d)) + 2.0 * tau;
    return b;
}

DiameterBound chamber_diameter_bound(int d, long k)
{
    if (d < 2) throw std::invalid_argument("diameter bound needs d >= 2");
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    const double nu = unit_ball_volume(d);
    const double c = 18.0 * d * std::sqrt(static_cast<double>(d));
    const double exponent = (-1.0 + 1.0 / std::ldexp(1.0, d - 1)) / d;
    DiameterBound b;
    b.value = c * std::pow(nu, 1.0 / d) * std::pow(static_cast<double>(k), exponent);
    b.threshold = nu * std::pow(c, d);
    b.valid = static_cast<double>(k) >= b.threshold;
    return b;
}

BigRat RayProfile::lambda_sq(std::size_t k) const
{
    if (k < 1 || k > t.size()) throw std::out_of_range("ray crossing rank out of range");
    const BigRat& tk = t[k - 1];
    return tk * tk * BigRat(to_big(u.x * u.x + u.y * u.y));
}

double RayProfile::lambda(std::size_t k) const { return sqrt_to_double(lambda_sq(k)); }

namespace {

std::vector<BigRat> crossings(const GeneratorSet& g, IPoint u)
{
    if (u.x == 0 && u.y == 0) throw std::invalid_argument("ray direction must be nonzero");
    std::vector<BigRat> t;
    t.reserve(g.points.size());
    const BigInt two_p = to_big(2 * g.scale);
    for (const auto& a : g.points) {
        const BigInt ua = to_big(a.x) * to_big(u.x) + to_big(a.y) * to_big(u.y);
        if (sgn(ua) <= 0) continue;
        // The crossing of the bisector of a/p: t = |a|^2 / (2 p <u, a>).
        t.push_back(make_rat(to_big(a.x) * to_big(a.x) + to_big(a.y) * to_big(a.y), two_p * ua));
    }
    return t;
}

}  // namespace

RayProfile ray_profile(const GeneratorSet& g, IPoint u, std::size_t kmax)
{
    RayProfile prof{u, crossings(g, u)};
    std::sort(prof.t.begin(), prof.t.end());
    if (kmax > 0 && prof.t.size() > kmax) prof.t.resize(kmax);
    return prof;
}

BigRat kth_crossing(const GeneratorSet& g, IPoint u, std::size_t k) { return min_k(crossings(g, u), k); }

std::vector<IPoint> ray_directions(std::size_t n)
{
    std::vector<IPoint> out;
    if (n == 0) return out;
    const auto h = static_cast<std::int64_t>((n + 7) / 8);
    std::vector<IPoint> ring;
    for (std::int64_t y = 0; y <= h; ++y) ring.push_back({h, y});
    for (std::int64_t x = h - 1; x >= -h; --x) ring.push_back({x, h});
    for (std::int64_t y = h - 1; y >= -h; --y) ring.push_back({-h, y});
    for (std::int64_t x = -h + 1; x <= h; ++x) ring.push_back({x, -h});
    for (std::int64_t y = -h + 1; y < 0; ++y) ring.push_back({h, y});

    std::set<IPoint> seen;
    for (const auto& p : ring) {
        const std::int64_t g = std::gcd(p.x, p.y);
        const IPoint prim{p.x / g, p.y / g};
        if (seen.insert(prim).second) out.push_back(prim);
        if (out.size() == n) break;
    }
    return out;
}

StabilityResult stability_gap(const GeneratorSet& base, const GeneratorSet& perturbed, int k,
                              std::span<const IPoint> directions)
{
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    StabilityResult res;
    res.k = k;
    for (const IPoint& u : directions) {
        DirectionGap dg;
        dg.u = u;
        dg.alpha_t = kth_crossing(base, u, static_cast<std::size_t>(k));
        dg.beta_t = kth_crossing(perturbed, u, static_cast<std::size_t>(k));
        const double norm = std::hypot(static_cast<double>(u.x), static_cast<double>(u.y));
        dg.alpha = to_double(dg.alpha_t) * norm;
        dg.beta = to_double(dg.beta_t) * norm;
        dg.gap = dg.alpha_t == dg.beta_t ? 0.0 : std::fabs(to_double(dg.beta_t - dg.alpha_t)) * norm;
        res.max_gap = std::max(res.max_gap, dg.gap);
        res.per_direction.push_back(std::move(dg));
    }
    return res;
}

long circle_lattice_count(const QPoint& center, const BigRat& rsq)
{
    if (sgn(rsq) <= 0) throw std::invalid_argument("squared radius must be positive");
    // Integer radius bound: isqrt(ceil(rsq)) + 1 >= sqrt(rsq).
    BigInt ceil_rsq;
    mpz_cdiv_q(ceil_rsq.get_mpz_t(), rsq.get_num_mpz_t(), rsq.get_den_mpz_t());
    BigInt reach;
    mpz_sqrt(reach.get_mpz_t(), ceil_rsq.get_mpz_t());
    reach += 1;
    BigInt x0, x1, y0, y1;
    mpz_fdiv_q(x0.get_mpz_t(), center.x.get_num_mpz_t(), center.x.get_den_mpz_t());
    mpz_cdiv_q(x1.get_mpz_t(), center.x.get_num_mpz_t(), center.x.get_den_mpz_t());
    mpz_fdiv_q(y0.get_mpz_t(), center.y.get_num_mpz_t(), center.y.get_den_mpz_t());
    mpz_cdiv_q(y1.get_mpz_t(), center.y.get_num_mpz_t(), center.y.get_den_mpz_t());
    x0 -= reach;
    x1 += reach;
    y0 -= reach;
    y1 += reach;

    long count = 0;
    for (BigInt x = x0; x <= x1; ++x) {
        const BigRat dx = BigRat(x) - center.x;
        const BigRat rest = rsq - dx * dx;
        if (sgn(rest) < 0) continue;
        for (BigInt y = y0; y <= y1; ++y) {
            const BigRat dy = BigRat(y) - center.y;
            if (dy * dy == rest) ++count;
        }
    }
    return count;
}

std::vector<IPoint> knear_points(const Arrangement& arr, int k)
{
    std::set<IPoint> near;
    const GeneratorSet& g = arr.generators;
    const BigRat two_p(to_big(2 * g.scale));
    for (const auto& f : arr.faces) {
        if (f.on_clip_boundary || f.depth < 1 || f.depth > k - 1) continue;
        const BigRat sx = two_p * f.interior_witness.x;
        const BigRat sy = two_p * f.interior_witness.y;
        for (const auto& a : g.points) {
            const BigRat lhs = sx * to_big(a.x) + sy * to_big(a.y);
            if (lhs > BigRat(to_big(a.x) * to_big(a.x) + to_big(a.y) * to_big(a.y))) near.insert(a);
        }
    }
    return {near.begin(), near.end()};
}

QPoint invert(const QPoint& x)
{
    const BigRat n = sq_norm(x);
    if (sgn(n) == 0) throw std::invalid_argument("cannot invert the origin");
    return QPoint(x.x / n, x.y / n);
}

namespace {

struct BigDir {
    BigInt x;
    BigInt y;
};

int half_of(const BigDir& d) { return (sgn(d.y) < 0 || (sgn(d.y) == 0 && sgn(d.x) < 0)) ? 1 : 0; }

int cross_sign(const BigDir& a, const BigDir& b) { return sgn(a.x * b.y - a.y * b.x); }

bool angle_less(const BigDir& a, const BigDir& b)
{
    const int ha = half_of(a);
    const int hb = half_of(b);
    if (ha != hb) return ha < hb;
    return cross_sign(a, b) > 0;
}

bool same_direction(const BigDir& a, const BigDir& b) { return half_of(a) == half_of(b) && cross_sign(a, b) == 0; }

}  // namespace

long ksets_count(std::span<const QPoint> points, std::size_t j)
{
    const std::size_t n = points.size();
    {
        std::vector<QPoint> sorted(points.begin(), points.end());
        std::sort(sorted.begin(), sorted.end(), lex_less);
        for (std::size_t i = 0; i + 1 < n; ++i)
            if (sorted[i] == sorted[i + 1]) throw std::invalid_argument("ksets_count needs distinct points");
    }
    if (j == 0 || j == n) return 1;
    if (j > n) return 0;

    // Critical normals: the ordering by projection only changes at directions
    // orthogonal to a difference of two points.
    std::vector<BigDir> critical;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            const BigRat wx = points[b].x - points[a].x;
            const BigRat wy = points[b].y - points[a].y;
            const BigInt den = lcm(wx.get_den(), wy.get_den());
            const BigInt ix = wx.get_num() * (den / wx.get_den());
            const BigInt iy = wy.get_num() * (den / wy.get_den());
            critical.push_back(BigDir{-iy, ix});
            critical.push_back(BigDir{iy, -ix});
        }
    std::sort(critical.begin(), critical.end(), angle_less);
    critical.erase(std::unique(critical.begin(), critical.end(), same_direction), critical.end());

    // One test direction strictly inside every open angular gap.
    std::vector<BigDir> tests;
    if (critical.empty()) tests.push_back(BigDir{1, 0});
    for (std::size_t i = 0; i < critical.size(); ++i) {
        const BigDir& a = critical[i];
        const BigDir& b = critical[(i + 1) % critical.size()];
        if (critical.size() > 1 && cross_sign(a, b) > 0) {
            tests.push_back(BigDir{a.x + b.x, a.y + b.y});
        } else {
            // Gap of exactly pi: the quarter turn of a sits in the middle.
            tests.push_back(BigDir{-a.y, a.x});
        }
    }

    std::set<std::vector<std::size_t>> subsets;
    std::vector<std::size_t> order(n);
    std::vector<BigRat> proj(n);
    for (const BigDir& v : tests) {
        for (std::size_t i = 0; i < n; ++i) proj[i] = BigRat(v.x) * points[i].x + BigRat(v.y) * points[i].y;
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return proj[a] > proj[b]; });
        if (!(proj[order[j - 1]] > proj[order[j]])) continue;
        std::vector<std::size_t> subset(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(j));
        std::sort(subset.begin(), subset.end());
        subsets.insert(std::move(subset));
    }
    return static_cast<long>(subsets.size());
}

}  // namespace bz

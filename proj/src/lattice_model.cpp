#include "bz/lattice_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include <mpfr.h>

namespace bz {

QPoint GeneratorSet::position(std::size_t i) const
{
    const BigInt s(static_cast<long>(scale));
    return QPoint(make_rat(BigInt(static_cast<long>(points[i].x)), s),
                  make_rat(BigInt(static_cast<long>(points[i].y)), s));
}

bool GeneratorSet::is_window_derived() const { return m >= 1 && points.size() == window_size(m); }

void GeneratorSet::validate() const
{
    if (scale < 1) throw std::invalid_argument("generator scale must be positive");
    if (points.empty()) throw std::invalid_argument("generator set is empty");
    std::set<IPoint> seen;
    const std::int64_t bound = scale * m + q;
    for (const auto& pt : points) {
        if (pt.x == 0 && pt.y == 0) throw std::invalid_argument("generator set lists the origin");
        if (!seen.insert(pt).second) throw std::invalid_argument("generator set has duplicate points");
        if (m >= 1 && (std::llabs(pt.x) > bound || std::llabs(pt.y) > bound))
            throw std::invalid_argument("generator outside [-pm-q, pm+q]^2");
    }
}

std::size_t window_size(int m)
{
    const auto side = static_cast<std::size_t>(2 * m + 1);
    return side * side - 1;
}

IPoint window_point(int m, std::size_t i)
{
    const auto side = static_cast<std::size_t>(2 * m + 1);
    const std::size_t centre = window_size(m) / 2;
    const std::size_t raw = i < centre ? i : i + 1;
    return IPoint{static_cast<std::int64_t>(raw % side) - m, static_cast<std::int64_t>(raw / side) - m};
}

GeneratorSet integer_window(int m)
{
    if (m < 1) throw std::invalid_argument("window half-width must be at least 1");
    GeneratorSet g;
    g.m = m;
    g.points.reserve(window_size(m));
    for (std::size_t i = 0; i < window_size(m); ++i) g.points.push_back(window_point(m, i));
    return g;
}

std::uint64_t CounterRng::next()
{
    ++counter_;
    std::uint64_t z = seed_ + counter_ * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::int64_t CounterRng::uniform(std::int64_t lo, std::int64_t hi)
{
    if (lo > hi) throw std::invalid_argument("empty uniform range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next());
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - (std::numeric_limits<std::uint64_t>::max() % span);
    std::uint64_t draw = next();
    while (draw >= limit) draw = next();
    return lo + static_cast<std::int64_t>(draw % span);
}

GeneratorSet perturb(const PerturbationConfig& cfg)
{
    if (cfg.m < 1) throw std::invalid_argument("window half-width must be at least 1");
    if (cfg.p < 1) throw std::invalid_argument("scale p must be at least 1");
    if (cfg.q < 0 || 2 * cfg.q > cfg.p) throw std::invalid_argument("perturbation needs 0 <= q <= p/2");

    GeneratorSet g;
    g.scale = cfg.p;
    g.m = cfg.m;
    g.q = cfg.q;
    g.seed = cfg.seed;
    g.points.reserve(window_size(cfg.m));
    CounterRng rng(cfg.seed);
    for (std::size_t i = 0; i < window_size(cfg.m); ++i) {
        const IPoint a = window_point(cfg.m, i);
        const std::int64_t dx = rng.uniform(-cfg.q, cfg.q);
        const std::int64_t dy = rng.uniform(-cfg.q, cfg.q);
        g.points.push_back(IPoint{cfg.p * a.x + dx, cfg.p * a.y + dy});
    }
    // Images can only meet on a shared cell boundary, which needs q = p/2.
    if (2 * cfg.q == cfg.p) {
        std::set<IPoint> seen(g.points.begin(), g.points.end());
        if (seen.size() != g.points.size()) throw std::runtime_error("perturbation collided two generators; pick another seed");
    }
    return g;
}

Magnitude magnitude(const GeneratorSet& g)
{
    if (!g.is_window_derived()) throw std::invalid_argument("magnitude needs a window-derived generator set");
    BigInt best = 0;
    for (std::size_t i = 0; i < g.points.size(); ++i) {
        const IPoint a = window_point(g.m, i);
        const BigInt dx = BigInt(static_cast<long>(g.points[i].x)) - BigInt(static_cast<long>(g.scale * a.x));
        const BigInt dy = BigInt(static_cast<long>(g.points[i].y)) - BigInt(static_cast<long>(g.scale * a.y));
        BigInt d = dx * dx + dy * dy;
        if (d > best) best = std::move(d);
    }
    const BigInt s(static_cast<long>(g.scale));
    Magnitude mag{make_rat(best, s * s), 0.0};
    mag.value = sqrt_to_double(mag.sq);
    return mag;
}

ReliabilityBound reliable_k(int m, std::int64_t q, std::int64_t p)
{
    if (p < 1 || q < 0 || 2 * q > p) throw std::invalid_argument("reliable_k needs 0 <= q/p <= 1/2");
    if (m < 1) throw std::invalid_argument("window half-width must be at least 1");

    const BigRat tau = make_rat(BigInt(static_cast<long>(q)), BigInt(static_cast<long>(p)));

    mpfr_t sqrt2_up, pi_down, tau_up, slope, bracket, value;
    for (auto* v : {&sqrt2_up, &pi_down, &tau_up, &slope, &bracket, &value}) mpfr_init2(*v, 128);

    mpfr_sqrt_ui(sqrt2_up, 2, MPFR_RNDU);
    mpfr_const_pi(pi_down, MPFR_RNDD);
    mpfr_set_q(tau_up, tau.get_mpq_t(), MPFR_RNDU);

    // slope = (2 sqrt2 + 1) tau, rounded up; bracket rounded down.
    mpfr_mul_ui(slope, sqrt2_up, 2, MPFR_RNDU);
    mpfr_add_ui(slope, slope, 1, MPFR_RNDU);
    mpfr_mul(slope, slope, tau_up, MPFR_RNDU);
    mpfr_set_si(bracket, m + 1, MPFR_RNDD);
    mpfr_sub(bracket, bracket, sqrt2_up, MPFR_RNDD);
    mpfr_sub(bracket, bracket, slope, MPFR_RNDD);

    long kmax = 0;
    if (mpfr_sgn(bracket) > 0) {
        mpfr_sqr(value, bracket, MPFR_RNDD);
        mpfr_mul(value, value, pi_down, MPFR_RNDD);
        mpfr_div_ui(value, value, 4, MPFR_RNDD);
        // Largest integer strictly below a lower bound of the true value.
        mpfr_ceil(value, value);
        kmax = std::max(0L, mpfr_get_si(value, MPFR_RNDD) - 1);
    }

    for (auto* v : {&sqrt2_up, &pi_down, &tau_up, &slope, &bracket, &value}) mpfr_clear(*v);
    return ReliabilityBound{m, tau, kmax};
}

namespace {

/// |a|^2 - |b|^2 - t^2 < 2 t |c| decided exactly, with c_sq = |c|^2.
bool diff_below(const BigRat& lhs, const BigRat& tau, const BigRat& c_sq)
{
    if (sgn(lhs) < 0) return true;
    return lhs * lhs < 4 * tau * tau * c_sq;
}

}  // namespace

bool clears_shell(const QPoint& x, const QPoint& point, const BigRat& tau, bool outside)
{
    const BigRat r_sq = sq_norm(x);
    const BigRat d_sq = sq_dist(x, point);
    if (outside) {
        // |x - point| >= |x| + tau
        return !diff_below(d_sq - r_sq - tau * tau, tau, r_sq);
    }
    // |x - point| <= |x| - tau
    return !diff_below(r_sq - d_sq - tau * tau, tau, d_sq);
}

GeneratorSet adversarial_perturbation(int k, const BigRat& tau, const QPoint& x, int m, std::int64_t p)
{
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    if (sgn(tau) < 0 || tau * 2 >= 1) throw std::invalid_argument("adversarial perturbation needs 0 <= tau < 1/2");
    if (p < 1) throw std::invalid_argument("scale p must be at least 1");
    if (m < 1) throw std::invalid_argument("window half-width must be at least 1");
    const BigRat r_sq = sq_norm(x);
    if (r_sq * 4 <= 1) throw std::invalid_argument("adversarial perturbation needs |x| > 1/2");

    const GeneratorSet window = integer_window(m);
    int closer = 0;
    std::vector<int> side(window.size());
    for (std::size_t i = 0; i < window.size(); ++i) {
        const QPoint a = window.position(i);
        side[i] = cmp(sq_dist(x, a), r_sq);
        if (side[i] == 0) throw std::invalid_argument("x lies on a bisector; it must be interior to a chamber");
        if (side[i] < 0) ++closer;
    }
    if (closer != k - 1) throw std::invalid_argument("x is not interior to the requested zone");

    GeneratorSet g;
    g.scale = p;
    g.m = m;
    g.seed = 0;
    const long double tau_f = mpq_get_d(tau.get_mpq_t());
    g.q = static_cast<std::int64_t>(std::ceil(tau_f * static_cast<long double>(p))) + 2;
    g.points.reserve(window.size());

    const long double xf = mpq_get_d(x.x.get_mpq_t());
    const long double yf = mpq_get_d(x.y.get_mpq_t());
    const long double radius = std::sqrt(static_cast<long double>(mpq_get_d(r_sq.get_mpq_t())));
    const BigRat bp(BigInt(static_cast<long>(p)));

    for (std::size_t i = 0; i < window.size(); ++i) {
        const IPoint a = window.points[i];
        const QPoint aq = window.position(i);
        const bool outside = side[i] > 0;
        const IPoint unmoved{p * a.x, p * a.y};
        if (clears_shell(x, aq, tau, outside) || sgn(tau) == 0) {
            g.points.push_back(unmoved);
            continue;
        }
        // Radial unit vector from a towards x; outside points move away from
        // x, inside points towards it.
        const long double ux = xf - static_cast<long double>(a.x);
        const long double uy = yf - static_cast<long double>(a.y);
        const long double dist = std::hypot(ux, uy);
        const long double delta = std::fabs(dist - radius);
        long double slack = 1.0L / static_cast<long double>(p);
        for (int attempt = 0;; ++attempt) {
            const long double shift = (tau_f - delta + slack) * (outside ? -1.0L : 1.0L);
            const long double tx = static_cast<long double>(a.x) + shift * ux / dist;
            const long double ty = static_cast<long double>(a.y) + shift * uy / dist;
            const IPoint snapped{static_cast<std::int64_t>(std::llround(tx * p)),
                                 static_cast<std::int64_t>(std::llround(ty * p))};
            const QPoint sq(BigRat(BigInt(static_cast<long>(snapped.x))) / bp,
                            BigRat(BigInt(static_cast<long>(snapped.y))) / bp);
            if (clears_shell(x, sq, tau, outside)) {
                g.points.push_back(snapped);
                break;
            }
            if (attempt > 8) throw std::runtime_error("adversarial snapping failed to clear the shell");
            slack *= 2;
        }
    }

    std::set<IPoint> seen(g.points.begin(), g.points.end());
    if (seen.size() != g.points.size() || seen.count(IPoint{0, 0}) != 0)
        throw std::runtime_error("adversarial perturbation is not injective");
    return g;
}

}  // namespace bz

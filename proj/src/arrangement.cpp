#include "bz/arrangement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace bz {

namespace {

struct Direction {
    std::int64_t dx;
    std::int64_t dy;
};

int half_of(const Direction& d) { return (d.dy < 0 || (d.dy == 0 && d.dx < 0)) ? 1 : 0; }

/// Strict counterclockwise angle order starting at the positive x-axis.
bool angle_less(const Direction& a, const Direction& b)
{
    const int ha = half_of(a);
    const int hb = half_of(b);
    if (ha != hb) return ha < hb;
    const __int128 c = static_cast<__int128>(a.dx) * b.dy - static_cast<__int128>(a.dy) * b.dx;
    return c > 0;
}

Direction reduced_direction(const Line& l)
{
    // Direction (-b, a) of the line a x + b y = c, reduced to a primitive vector.
    BigInt dx = -l.b;
    BigInt dy = l.a;
    BigInt g;
    mpz_gcd(g.get_mpz_t(), dx.get_mpz_t(), dy.get_mpz_t());
    dx /= g;
    dy /= g;
    if (!dx.fits_slong_p() || !dy.fits_slong_p()) throw std::overflow_error("line direction exceeds 64 bits");
    return Direction{dx.get_si(), dy.get_si()};
}

BigInt to_big(std::int64_t v) { return BigInt(static_cast<long>(v)); }

}  // namespace

long Arrangement::reliable_kmax() const
{
    if (!generators.is_window_derived()) return 0;
    if (2 * generators.q > generators.scale) return 0;
    long kmax = reliable_k(generators.m, generators.q, generators.scale).kmax;
    // Also demand that the zone cannot reach the clip box:
    // sqrt(k/pi) + sqrt2/2 + sqrt2 q/p < w.
    const double w = to_double(clip_half_width);
    const double tau = std::sqrt(2.0) * static_cast<double>(generators.q) / static_cast<double>(generators.scale);
    while (kmax > 0 && std::sqrt(static_cast<double>(kmax) / M_PI) + std::sqrt(2.0) / 2 + tau >= w) --kmax;
    return kmax;
}

ArrangementStats stats(const Arrangement& arr)
{
    ArrangementStats s;
    s.n_lines = arr.lines.size();
    s.n_vertices = arr.vertices.size();
    s.n_edges = arr.edges.size();
    s.n_faces = arr.faces.size();
    for (int mult : arr.vertex_multiplicity) s.max_multiplicity = std::max(s.max_multiplicity, mult);
    return s;
}

BigRat default_clip_half_width(const GeneratorSet& g)
{
    if (!g.is_window_derived()) throw std::invalid_argument("default clip box needs a window-derived generator set");
    long kmax = 0;
    if (2 * g.q <= g.scale) kmax = reliable_k(g.m, g.q, g.scale).kmax;
    const double tau = std::sqrt(2.0) * static_cast<double>(g.q) / static_cast<double>(g.scale);
    const double r_upper = std::sqrt(static_cast<double>(kmax) / M_PI) + std::sqrt(2.0) / 2 + tau;
    const auto quarters = static_cast<long>(std::ceil((r_upper + 1.0) * 4.0));
    return make_rat(BigInt(quarters), BigInt(4));
}

int depth_of_point(const GeneratorSet& g, const QPoint& x)
{
    // |x - a/p|^2 < |x|^2  <=>  2 p <a, x> > |a|^2
    const BigRat two_p(BigInt(static_cast<long>(2 * g.scale)));
    const BigRat sx = two_p * x.x;
    const BigRat sy = two_p * x.y;
    int depth = 0;
    for (const auto& a : g.points) {
        const BigRat lhs = sx * to_big(a.x) + sy * to_big(a.y);
        const BigInt rhs = to_big(a.x) * to_big(a.x) + to_big(a.y) * to_big(a.y);
        if (lhs > rhs) ++depth;
    }
    return depth;
}

namespace {

/// Depth of a lattice-unit witness with all generators, using a common
/// denominator so each comparison is integer arithmetic.
int witness_depth(const GeneratorSet& g, const QPoint& w)
{
    const BigInt X = w.x.get_num() * w.y.get_den();
    const BigInt Y = w.y.get_num() * w.x.get_den();
    const BigInt D = w.x.get_den() * w.y.get_den();
    BigInt lhs;
    BigInt rhs;
    int depth = 0;
    for (const auto& a : g.points) {
        // 2 p (a1 X + a2 Y) > |a|^2 D
        mpz_mul_si(lhs.get_mpz_t(), X.get_mpz_t(), a.x);
        mpz_mul_si(rhs.get_mpz_t(), Y.get_mpz_t(), a.y);
        mpz_add(lhs.get_mpz_t(), lhs.get_mpz_t(), rhs.get_mpz_t());
        mpz_mul_si(lhs.get_mpz_t(), lhs.get_mpz_t(), 2 * g.scale);
        const BigInt norm = to_big(a.x) * to_big(a.x) + to_big(a.y) * to_big(a.y);
        mpz_mul(rhs.get_mpz_t(), D.get_mpz_t(), norm.get_mpz_t());
        if (mpz_cmp(lhs.get_mpz_t(), rhs.get_mpz_t()) > 0) ++depth;
    }
    return depth;
}

}  // namespace

Arrangement build(const GeneratorSet& g, const BigRat& clip_half_width)
{
    g.validate();
    if (sgn(clip_half_width) <= 0) throw std::invalid_argument("clip half-width must be positive");

    Arrangement arr;
    arr.generators = g;
    arr.clip_half_width = clip_half_width;

    // Work in scaled coordinates X = p x so bisectors have integer coefficients.
    const BigRat scale(to_big(g.scale));
    const BigRat half = clip_half_width * scale;
    const BigInt& hn = half.get_num();
    const BigInt& hd = half.get_den();

    const std::size_t n_gen = g.points.size();
    arr.lines.reserve(n_gen);
    for (const auto& a : g.points) arr.lines.push_back(bisector_of(to_big(a.x), to_big(a.y)));

    // Active lines: bisectors that cross the open box, then the four sides.
    std::vector<Line> lines;
    std::vector<long> line_owner;  // bisector index, or kClipLine
    const std::vector<Line> sides{Line{hd, 0, hn}, Line{hd, 0, -hn}, Line{0, hd, hn}, Line{0, hd, -hn}};
    auto inside_box = [&](const QPoint& p) { return abs(p.x) <= half && abs(p.y) <= half; };

    arr.line_crosses_clip.assign(n_gen, false);
    for (std::size_t i = 0; i < n_gen; ++i) {
        const Line l = arr.lines[i].line();
        std::vector<QPoint> hits;
        bool on_side = false;
        for (const auto& s : sides) {
            if (s.a * l.b == s.b * l.a && s.a * l.c == s.c * l.a && s.b * l.c == s.c * l.b) on_side = true;
            if (auto p = line_intersect(l, s); p && inside_box(*p)) {
                if (std::find(hits.begin(), hits.end(), *p) == hits.end()) hits.push_back(std::move(*p));
            }
        }
        if (hits.size() >= 2 && !on_side) {
            arr.line_crosses_clip[i] = true;
            lines.push_back(l);
            line_owner.push_back(static_cast<long>(i));
        }
    }
    for (const auto& s : sides) {
        lines.push_back(s);
        line_owner.push_back(kClipLine);
    }

    // Vertices: pairwise intersections inside the closed box, deduplicated by
    // exact coordinates so concurrent lines share one vertex.
    std::unordered_map<QPoint, std::size_t, QPointHash> vertex_id;
    std::vector<QPoint> scaled_vertices;
    std::vector<std::vector<std::size_t>> on_line(lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i) {
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            std::optional<QPoint> p;
            if (line_owner[i] != kClipLine && line_owner[j] != kClipLine) {
                p = line_intersect(arr.lines[static_cast<std::size_t>(line_owner[i])],
                                   arr.lines[static_cast<std::size_t>(line_owner[j])]);
            } else {
                p = line_intersect(lines[i], lines[j]);
            }
            if (!p || !inside_box(*p)) continue;
            auto [it, fresh] = vertex_id.try_emplace(*p, scaled_vertices.size());
            if (fresh) scaled_vertices.push_back(std::move(*p));
            on_line[i].push_back(it->second);
            on_line[j].push_back(it->second);
        }
    }
    vertex_id.clear();

    arr.vertex_multiplicity.assign(scaled_vertices.size(), 0);

    // Edges: consecutive vertices along each line.
    std::vector<Direction> edge_dir;
    std::unordered_map<std::uint64_t, std::size_t> edge_of_pair;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        auto& ids = on_line[i];
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        if (line_owner[i] != kClipLine)
            for (std::size_t v : ids) ++arr.vertex_multiplicity[v];

        const Line& l = lines[i];
        const Direction dir = reduced_direction(l);
        std::vector<std::pair<BigRat, std::size_t>> keyed;
        keyed.reserve(ids.size());
        for (std::size_t v : ids) {
            const QPoint& p = scaled_vertices[v];
            keyed.emplace_back(-l.b * p.x + l.a * p.y, v);
        }
        std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t k = 0; k + 1 < keyed.size(); ++k) {
            const std::size_t u = keyed[k].second;
            const std::size_t v = keyed[k + 1].second;
            const std::uint64_t key = (static_cast<std::uint64_t>(std::min(u, v)) << 32) | std::max(u, v);
            if (edge_of_pair.count(key) != 0) continue;
            edge_of_pair.emplace(key, arr.edges.size());
            Edge e;
            e.v0 = u;
            e.v1 = v;
            e.line = line_owner[i];
            arr.edges.push_back(e);
            edge_dir.push_back(dir);
        }
    }
    edge_of_pair.clear();

    // Half-edges 2e (v0 -> v1, along the line direction) and 2e+1 (reverse).
    const std::size_t n_half = 2 * arr.edges.size();
    std::vector<Direction> he_dir(n_half);
    std::vector<std::vector<std::size_t>> outgoing(scaled_vertices.size());
    for (std::size_t e = 0; e < arr.edges.size(); ++e) {
        he_dir[2 * e] = edge_dir[e];
        he_dir[2 * e + 1] = Direction{-edge_dir[e].dx, -edge_dir[e].dy};
        outgoing[arr.edges[e].v0].push_back(2 * e);
        outgoing[arr.edges[e].v1].push_back(2 * e + 1);
    }
    auto origin_of = [&](std::size_t h) { return h % 2 == 0 ? arr.edges[h / 2].v0 : arr.edges[h / 2].v1; };
    auto dest_of = [&](std::size_t h) { return h % 2 == 0 ? arr.edges[h / 2].v1 : arr.edges[h / 2].v0; };

    std::vector<std::size_t> pos_at_origin(n_half);
    for (auto& out : outgoing) {
        std::sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) { return angle_less(he_dir[a], he_dir[b]); });
        for (std::size_t k = 0; k < out.size(); ++k) pos_at_origin[out[k]] = k;
    }

    // Faces: follow next(h) = the outgoing half-edge at dest(h) immediately
    // clockwise from twin(h). Bounded faces come out counterclockwise.
    arr.vertices.reserve(scaled_vertices.size());
    for (const auto& p : scaled_vertices) arr.vertices.emplace_back(p.x / scale, p.y / scale);

    std::vector<long> he_face(n_half, kNoFace);
    std::vector<bool> visited(n_half, false);
    for (std::size_t start = 0; start < n_half; ++start) {
        if (visited[start]) continue;
        std::vector<std::size_t> cycle;
        std::size_t h = start;
        do {
            visited[h] = true;
            cycle.push_back(h);
            const std::size_t twin = h ^ 1U;
            const auto& out = outgoing[dest_of(h)];
            const std::size_t deg = out.size();
            h = out[(pos_at_origin[twin] + deg - 1) % deg];
        } while (h != start);

        std::vector<QPoint> ring;
        ring.reserve(cycle.size());
        for (std::size_t he : cycle) ring.push_back(arr.vertices[origin_of(he)]);
        if (sgn(signed_double_area(ring)) <= 0) continue;  // the outer boundary of the box

        Face f{ConvexPolygon(ring), {}, 0, QPoint(), false};
        f.boundary.reserve(cycle.size());
        const long face_index = static_cast<long>(arr.faces.size());
        for (std::size_t he : cycle) {
            f.boundary.push_back(origin_of(he));
            he_face[he] = face_index;
            if (arr.edges[he / 2].line == kClipLine) f.on_clip_boundary = true;
        }
        f.interior_witness = f.polygon.centroid();
        arr.faces.push_back(std::move(f));
    }

    for (std::size_t e = 0; e < arr.edges.size(); ++e) {
        arr.edges[e].left = he_face[2 * e];
        arr.edges[e].right = he_face[2 * e + 1];
    }

    for (auto& f : arr.faces) f.depth = witness_depth(g, f.interior_witness);
    return arr;
}

ZoneSelection zone(const Arrangement& arr, int k)
{
    if (k < 1) throw std::invalid_argument("zone index k must be at least 1");
    ZoneSelection sel;
    sel.k = k;
    sel.reliable = k <= arr.reliable_kmax();
    for (std::size_t i = 0; i < arr.faces.size(); ++i) {
        const Face& f = arr.faces[i];
        if (f.depth == k - 1 && !f.on_clip_boundary) sel.faces.push_back(i);
    }
    return sel;
}

FaceLocator::FaceLocator(const Arrangement& arr, std::size_t cells_per_side) : arr_(&arr)
{
    const double w = to_double(arr.clip_half_width);
    n_ = cells_per_side != 0 ? cells_per_side
                             : std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(arr.faces.size()))));
    lo_ = -w;
    cell_ = 2 * w / static_cast<double>(n_);
    cells_.assign(n_ * n_, {});
    auto clamp_cell = [&](double v) {
        const double c = std::floor((v - lo_) / cell_);
        return static_cast<std::size_t>(std::clamp(c, 0.0, static_cast<double>(n_ - 1)));
    };
    const double pad = 1e-9 * std::max(1.0, w);
    for (std::size_t fi = 0; fi < arr.faces.size(); ++fi) {
        double x0 = HUGE_VAL, x1 = -HUGE_VAL, y0 = HUGE_VAL, y1 = -HUGE_VAL;
        for (const auto& v : arr.faces[fi].polygon.vertices()) {
            const double x = to_double(v.x);
            const double y = to_double(v.y);
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
        for (std::size_t cy = clamp_cell(y0 - pad); cy <= clamp_cell(y1 + pad); ++cy)
            for (std::size_t cx = clamp_cell(x0 - pad); cx <= clamp_cell(x1 + pad); ++cx) cells_[cy * n_ + cx].push_back(fi);
    }
}

std::vector<std::size_t> FaceLocator::containing(const QPoint& x) const
{
    std::vector<std::size_t> hits;
    if (abs(x.x) > arr_->clip_half_width || abs(x.y) > arr_->clip_half_width) return hits;
    auto cell_of = [&](double v) {
        const double c = std::floor((v - lo_) / cell_);
        return static_cast<std::size_t>(std::clamp(c, 0.0, static_cast<double>(n_ - 1)));
    };
    const std::size_t cx = cell_of(to_double(x.x));
    const std::size_t cy = cell_of(to_double(x.y));
    for (std::size_t fi : cells_[cy * n_ + cx])
        if (arr_->faces[fi].polygon.locate(x) >= 0) hits.push_back(fi);
    return hits;
}

std::optional<int> FaceLocator::depth_at(const QPoint& x) const
{
    const auto hits = containing(x);
    if (hits.empty()) return std::nullopt;
    int best = arr_->faces[hits.front()].depth;
    for (std::size_t fi : hits) best = std::min(best, arr_->faces[fi].depth);
    return best;
}

}  // namespace bz

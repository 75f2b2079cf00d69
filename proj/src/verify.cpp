#include "bz/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace bz {

namespace {

std::string point_str(const QPoint& p) { return "(" + to_string(p.x) + ", " + to_string(p.y) + ")"; }

CheckResult make_check(std::string name, int k_lo = 0, int k_hi = 0)
{
    CheckResult c;
    c.name = std::move(name);
    c.k_lo = k_lo;
    c.k_hi = k_hi;
    return c;
}

void fail(CheckResult& c, const std::string& witness)
{
    if (!c.passed) return;  // keep the first witness
    c.passed = false;
    c.witness = witness;
}

/// Union-find over face indices.
struct Components {
    std::vector<std::size_t> parent;
    explicit Components(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t i)
    {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    }
    void join(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

int reports_k_hi(std::span<const ZoneReport> reports) { return reports.empty() ? 0 : reports.back().k; }

}  // namespace

bool VerifyReport::all_passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

nlohmann::json verify_report_to_json(const VerifyReport& rep)
{
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : rep.checks) {
        nlohmann::json j{{"name", c.name}, {"k_range", {c.k_lo, c.k_hi}}, {"passed", c.passed}};
        if (!c.passed) j["witness"] = c.witness;
        checks.push_back(std::move(j));
    }
    return nlohmann::json{{"all_passed", rep.all_passed()}, {"checks", std::move(checks)}};
}

CheckResult check_area_partition(const Arrangement& arr)
{
    CheckResult c = make_check("area partition");
    BigRat total = 0;
    for (const auto& f : arr.faces) total += polygon_area(f.polygon);
    if (total != arr.clip_area())
        fail(c, "sum of face areas " + to_string(total) + " != clip area " + to_string(arr.clip_area()));
    return c;
}

CheckResult check_depth_consistency(const Arrangement& arr, int max_depth, std::uint64_t seed, int samples_per_face)
{
    CheckResult c = make_check("depth consistency", 1, max_depth + 1);
    CounterRng rng(seed);
    for (std::size_t fi = 0; fi < arr.faces.size() && c.passed; ++fi) {
        const Face& f = arr.faces[fi];
        if (f.depth > max_depth) continue;
        for (int s = 0; s < samples_per_face; ++s) {
            BigRat sx = 0, sy = 0, wsum = 0;
            for (const auto& v : f.polygon.vertices()) {
                const BigRat w(BigInt(static_cast<long>(rng.uniform(1, 1000))));
                sx += w * v.x;
                sy += w * v.y;
                wsum += w;
            }
            const QPoint p(sx / wsum, sy / wsum);
            const int direct = depth_of_point(arr.generators, p);
            if (direct != f.depth) {
                std::ostringstream os;
                os << "k=" << f.depth + 1 << " face " << fi << " labelled depth " << f.depth << " but interior point "
                   << point_str(p) << " has depth " << direct;
                fail(c, os.str());
                break;
            }
        }
    }
    return c;
}

CheckResult check_crossing_rule(const Arrangement& arr)
{
    CheckResult c = make_check("crossing rule");
    const BigRat scale(BigInt(static_cast<long>(arr.generators.scale)));
    for (std::size_t e = 0; e < arr.edges.size(); ++e) {
        const Edge& edge = arr.edges[e];
        if (edge.line == kClipLine || edge.left == kNoFace || edge.right == kNoFace) continue;
        const Line l = arr.lines[static_cast<std::size_t>(edge.line)].line();
        const Face& a = arr.faces[static_cast<std::size_t>(edge.left)];
        const Face& b = arr.faces[static_cast<std::size_t>(edge.right)];
        const QPoint wa(a.interior_witness.x * scale, a.interior_witness.y * scale);
        const bool a_far = l.side(wa) > 0;
        const Face& near = a_far ? b : a;
        const Face& far = a_far ? a : b;
        if (far.depth != near.depth + 1) {
            std::ostringstream os;
            os << "k=" << near.depth + 1 << " edge " << e << " on bisector " << edge.line << ": depth " << near.depth
               << " on the origin side, " << far.depth << " beyond";
            fail(c, os.str());
            break;
        }
    }
    return c;
}

CheckResult check_zone_rings(const Arrangement& arr, int kmax)
{
    CheckResult c = make_check("zone connectivity", 1, kmax);
    FaceLocator loc(arr);
    if (auto d = loc.depth_at(QPoint(0, 0)); !d || *d != 0) {
        fail(c, "k=1 origin is not in a depth-0 face");
        return c;
    }
    Components comp(arr.faces.size());
    std::vector<std::vector<std::size_t>> faces_at_vertex(arr.vertices.size());
    for (std::size_t fi = 0; fi < arr.faces.size(); ++fi)
        for (std::size_t v : arr.faces[fi].boundary) faces_at_vertex[v].push_back(fi);
    for (const auto& around : faces_at_vertex)
        for (std::size_t i = 0; i + 1 < around.size(); ++i)
            for (std::size_t j = i + 1; j < around.size(); ++j)
                if (arr.faces[around[i]].depth == arr.faces[around[j]].depth) comp.join(around[i], around[j]);
    for (int k = 1; k <= kmax; ++k) {
        const ZoneSelection sel = zone(arr, k);
        if (sel.faces.empty()) {
            fail(c, "k=" + std::to_string(k) + " zone has no chamber");
            break;
        }
        const std::size_t root = comp.find(sel.faces.front());
        for (std::size_t fi : sel.faces) {
            if (comp.find(fi) != root) {
                std::ostringstream os;
                os << "k=" << k << " chambers " << sel.faces.front() << " and " << fi << " are not connected";
                fail(c, os.str());
                break;
            }
        }
        if (!c.passed) break;
    }
    return c;
}

CheckResult check_square_symmetry(const Arrangement& arr)
{
    CheckResult c = make_check("square symmetry");
    std::unordered_set<QPoint, QPointHash> vertex_set(arr.vertices.begin(), arr.vertices.end());
    auto image = [](const QPoint& p, int s) {
        const BigRat& x = p.x;
        const BigRat& y = p.y;
        switch (s) {
        case 0: return QPoint(-x, y);
        case 1: return QPoint(x, -y);
        case 2: return QPoint(y, x);
        case 3: return QPoint(-y, x);
        case 4: return QPoint(-x, -y);
        case 5: return QPoint(y, -x);
        default: return QPoint(-y, -x);
        }
    };
    for (const auto& v : arr.vertices) {
        for (int s = 0; s < 7; ++s) {
            const QPoint w = image(v, s);
            if (vertex_set.count(w) == 0) {
                fail(c, "vertex " + point_str(v) + " maps to non-vertex " + point_str(w));
                return c;
            }
        }
    }
    FaceLocator loc(arr);
    for (std::size_t fi = 0; fi < arr.faces.size(); ++fi) {
        const Face& f = arr.faces[fi];
        for (int s = 0; s < 7; ++s) {
            const auto d = loc.depth_at(image(f.interior_witness, s));
            if (!d || *d != f.depth) {
                std::ostringstream os;
                os << "k=" << f.depth + 1 << " face " << fi << " witness " << point_str(f.interior_witness)
                   << " has depth " << f.depth << ", its image has " << (d ? std::to_string(*d) : "none");
                fail(c, os.str());
                return c;
            }
        }
    }
    return c;
}

CheckResult check_depth_oracle(const Arrangement& arr, const BigRat& radius, std::size_t n, std::uint64_t seed)
{
    CheckResult c = make_check("depth oracle");
    FaceLocator loc(arr);
    CounterRng rng(seed);
    const std::int64_t denom = std::int64_t{1} << 20;
    const BigRat scaled = radius * BigRat(BigInt(static_cast<long>(denom)));
    const BigRat r2 = scaled * scaled;
    const BigInt bound_big = scaled.get_num() / scaled.get_den() + 1;
    const std::int64_t bound = bound_big.get_si();
    const BigInt d(static_cast<long>(denom));
    std::size_t done = 0;
    while (done < n) {
        const std::int64_t X = rng.uniform(-bound, bound);
        const std::int64_t Y = rng.uniform(-bound, bound);
        const BigInt bx(static_cast<long>(X));
        const BigInt by(static_cast<long>(Y));
        if (BigRat(bx * bx + by * by) >= r2) continue;
        ++done;
        const QPoint p(make_rat(bx, d), make_rat(by, d));
        const auto located = loc.depth_at(p);
        const int direct = depth_of_point(arr.generators, p);
        if (!located || *located != direct) {
            std::ostringstream os;
            os << "k=" << direct + 1 << " point " << point_str(p) << " direct depth " << direct << ", face lookup "
               << (located ? std::to_string(*located) : "none");
            fail(c, os.str());
            break;
        }
    }
    return c;
}

CheckResult check_ray_zone_consistency(const Arrangement& arr, int kmax, std::span<const IPoint> directions)
{
    CheckResult c = make_check("ray/zone consistency", 1, kmax);
    if (kmax < 1) return c;
    FaceLocator loc(arr);
    for (const IPoint& u : directions) {
        const RayProfile prof = ray_profile(arr.generators, u, static_cast<std::size_t>(kmax) + 1);
        for (int k = 1; k <= kmax && static_cast<std::size_t>(k) < prof.size(); ++k) {
            const BigRat& a = prof.t[static_cast<std::size_t>(k - 1)];
            const BigRat& b = prof.t[static_cast<std::size_t>(k)];
            if (a == b) continue;
            const BigRat mid = (a + b) / 2;
            const QPoint p(mid * BigRat(BigInt(static_cast<long>(u.x))), mid * BigRat(BigInt(static_cast<long>(u.y))));
            const auto d = loc.depth_at(p);
            if (!d || *d != k) {
                std::ostringstream os;
                os << "k=" << k << " direction (" << u.x << ", " << u.y << ") point " << point_str(p) << " has depth "
                   << (d ? std::to_string(*d) : "none") << ", expected " << k;
                fail(c, os.str());
                return c;
            }
        }
    }
    return c;
}

CheckResult check_unit_areas(std::span<const ZoneReport> reports)
{
    CheckResult c = make_check("unit zone areas", 1, reports_k_hi(reports));
    for (const auto& r : reports) {
        if (r.area != 1) {
            fail(c, "k=" + std::to_string(r.k) + " area " + to_string(r.area));
            break;
        }
    }
    return c;
}

CheckResult check_cumulative_area(const Arrangement& arr, std::span<const ZoneReport> reports)
{
    CheckResult c = make_check("cumulative area", 1, reports_k_hi(reports));
    const int kmax = reports_k_hi(reports);
    std::vector<BigRat> by_depth(static_cast<std::size_t>(std::max(kmax, 0)), BigRat(0));
    for (const auto& f : arr.faces)
        if (f.depth < kmax) by_depth[static_cast<std::size_t>(f.depth)] += polygon_area(f.polygon);
    BigRat cum = 0;
    for (const auto& r : reports) {
        cum += by_depth[static_cast<std::size_t>(r.k - 1)];
        if (cum != r.cum_area) {
            fail(c, "k=" + std::to_string(r.k) + " union area " + to_string(cum) + " != summed zones " +
                        to_string(r.cum_area));
            break;
        }
    }
    return c;
}

namespace {

void check_bounds(CheckResult& c, const ZoneReport& r, const BoundSet& b, bool skip_r_upper_w_lower)
{
    auto report = [&](const char* what, double value, const BigRat& sq, const char* rel, double bound) {
        std::ostringstream os;
        os.precision(17);
        os << "k=" << r.k << " " << what << " = " << value;
        if (sq != 0 || value == 0) os << " (" << what << "^2 = " << to_string(sq) << ")";
        os << " not " << rel << " " << bound;
        fail(c, os.str());
    };
    if (b.r_lower && !(r.r > *b.r_lower)) report("r", r.r, r.r_sq, ">", *b.r_lower);
    if (b.r_upper && !skip_r_upper_w_lower && !(r.r < *b.r_upper)) report("r", r.r, r.r_sq, "<", *b.r_upper);
    if (b.R_lower && !(r.R > *b.R_lower)) report("R", r.R, r.R_sq, ">", *b.R_lower);
    if (b.R_upper && !(r.R < *b.R_upper)) report("R", r.R, r.R_sq, "<", *b.R_upper);
    if (b.W_lower && !skip_r_upper_w_lower && !(r.W > *b.W_lower)) report("W", r.W, BigRat(0), ">", *b.W_lower);
    if (b.W_upper && !(r.W < *b.W_upper)) report("W", r.W, BigRat(0), "<", *b.W_upper);
}

}  // namespace

CheckResult check_lattice_brackets(std::span<const ZoneReport> reports, bool include_first_upper)
{
    CheckResult c = make_check("integer lattice brackets", 1, reports_k_hi(reports));
    for (const auto& r : reports) {
        if (r.n_chambers == 0) {
            fail(c, "k=" + std::to_string(r.k) + " zone has no chamber");
            break;
        }
        check_bounds(c, r, lattice_bounds(2, r.k), !include_first_upper && r.k == 1);
        if (!c.passed) break;
    }
    return c;
}

CheckResult check_perturbed_brackets(std::span<const ZoneReport> reports, double tau)
{
    CheckResult c = make_check("perturbed lattice brackets", 1, reports_k_hi(reports));
    for (const auto& r : reports) {
        if (r.n_chambers == 0) {
            fail(c, "k=" + std::to_string(r.k) + " zone has no chamber");
            break;
        }
        check_bounds(c, r, perturbed_bounds(2, r.k, tau), false);
        if (!c.passed) break;
    }
    return c;
}

CheckResult check_chamber_bound(std::span<const ZoneReport> reports)
{
    CheckResult c = make_check("chamber bound", 1, reports_k_hi(reports));
    for (const auto& r : reports) {
        const std::size_t bound = r.k == 1 ? 1 : static_cast<std::size_t>(6 * r.k - 6);
        if (r.n_chambers > bound || (r.k == 1 && r.n_chambers != 1)) {
            fail(c, "k=" + std::to_string(r.k) + " has " + std::to_string(r.n_chambers) + " chambers, bound " +
                        std::to_string(bound));
            break;
        }
    }
    return c;
}

CheckResult check_distortion(std::span<const ZoneReport> reports, int k_from, std::optional<double> hi)
{
    CheckResult c = make_check(hi ? "distortion range" : "distortion above one", k_from, reports_k_hi(reports));
    std::vector<int> bad;
    std::ostringstream os;
    os.precision(17);
    for (const auto& r : reports) {
        if (r.k < k_from) continue;
        if (!(r.distortion > 1.0) || (hi && !(r.distortion < *hi))) {
            if (bad.empty()) os << "k=" << r.k << " distortion " << r.distortion;
            bad.push_back(r.k);
        }
    }
    if (!bad.empty()) {
        os << "; failing k:";
        for (int k : bad) os << ' ' << k;
        fail(c, os.str());
    }
    return c;
}

CheckResult check_reliability_values()
{
    CheckResult c = make_check("reliability values");
    const std::pair<std::int64_t, long> expected[] = {{0, 57}, {200, 56}, {1000, 52}, {5000, 34}};
    for (const auto& [q, k] : expected) {
        const long got = reliable_k(9, q, 10000).kmax;
        if (got != k) {
            fail(c, "k=" + std::to_string(got) + " from reliable_k(9, " + std::to_string(q) + ", 10000), expected " +
                        std::to_string(k));
            break;
        }
    }
    return c;
}

QPoint adversarial_centre(const Arrangement& lattice, int k)
{
    const ZoneSelection sel = zone(lattice, k);
    if (sel.faces.empty()) throw std::invalid_argument("zone has no chamber");
    std::size_t best = sel.faces.front();
    BigRat best_area = polygon_area(lattice.faces[best].polygon);
    for (std::size_t fi : sel.faces) {
        BigRat a = polygon_area(lattice.faces[fi].polygon);
        if (a > best_area) {
            best_area = std::move(a);
            best = fi;
        }
    }
    return lattice.faces[best].polygon.centroid();
}

AdversarialOutcome run_adversarial(const Arrangement& lattice, int k, const BigRat& tau)
{
    AdversarialOutcome out;
    out.x = adversarial_centre(lattice, k);
    out.tau = tau;
    out.generators = adversarial_perturbation(k, tau, out.x, lattice.generators.m);
    const Arrangement arr = build(out.generators);
    FaceLocator loc(arr);
    const auto hits = loc.containing(out.x);
    if (hits.size() != 1) return out;
    const Face& f = arr.faces[hits.front()];
    out.face = hits.front();
    out.face_depth = f.depth;
    out.diameter_sq = polygon_diameter_sq(f.polygon);
    out.area = polygon_area(f.polygon);

    // B(x, tau/2) fits iff x is inside and every side line is at distance >= tau/2.
    const BigRat half_sq = tau * tau / 4;
    bool fits = f.polygon.locate(out.x) > 0;
    const auto& vs = f.polygon.vertices();
    for (std::size_t i = 0; i < vs.size() && fits; ++i) {
        const QPoint& a = vs[i];
        const QPoint& b = vs[(i + 1) % vs.size()];
        const BigRat cr = cross(a, b, out.x);
        if (cr * cr < half_sq * sq_dist(a, b)) fits = false;
    }
    out.contains_disc = fits;
    return out;
}

CheckResult check_adversarial_chamber(const Arrangement& lattice, int k, const BigRat& tau)
{
    CheckResult c = make_check("adversarial chamber", k, k);
    const AdversarialOutcome out = run_adversarial(lattice, k, tau);
    std::ostringstream os;
    os << "k=" << k << " x=" << point_str(out.x) << " tau=" << to_string(tau) << ": ";
    const double tau_d = to_double(tau);
    if (!out.face) {
        os << "x is not interior to a single chamber";
        fail(c, os.str());
    } else if (out.face_depth != k - 1) {
        os << "chamber holding x has depth " << out.face_depth;
        fail(c, os.str());
    } else if (!out.contains_disc) {
        os << "chamber " << *out.face << " does not contain B(x, tau/2)";
        fail(c, os.str());
    } else if (out.diameter_sq < tau * tau) {
        os << "chamber diameter^2 " << to_string(out.diameter_sq) << " below tau^2";
        fail(c, os.str());
    } else if (!(to_double(out.area) > M_PI * tau_d * tau_d / 4)) {
        os << "chamber area " << to_string(out.area) << " below pi (tau/2)^2";
        fail(c, os.str());
    }
    return c;
}

VerifyReport run_verify(const Arrangement& arr, const VerifyOptions& opt)
{
    VerifyReport rep;
    const GeneratorSet& g = arr.generators;
    const int kmax = opt.kmax > 0 ? opt.kmax : static_cast<int>(arr.reliable_kmax());
    const auto reports = zone_reports(arr, kmax);
    const bool lattice = g.is_window_derived() && g.q == 0;

    rep.checks.push_back(check_area_partition(arr));
    rep.checks.push_back(check_crossing_rule(arr));
    rep.checks.push_back(check_depth_consistency(arr, kmax - 1, opt.seed));
    rep.checks.push_back(check_zone_rings(arr, kmax));
    if (g.is_window_derived()) {
        const BigRat strength = make_rat(BigInt(static_cast<long>(g.q)), BigInt(static_cast<long>(g.scale)));
        rep.checks.push_back(check_depth_oracle(arr, (BigRat(g.m + 1) - strength) / 2, opt.depth_samples, opt.seed));
    }
    const auto dirs = ray_directions(opt.directions);
    rep.checks.push_back(check_ray_zone_consistency(arr, kmax, dirs));
    rep.checks.push_back(check_cumulative_area(arr, reports));
    rep.checks.push_back(check_distortion(reports, 1));
    if (lattice) {
        rep.checks.push_back(check_square_symmetry(arr));
        rep.checks.push_back(check_unit_areas(reports));
        rep.checks.push_back(check_lattice_brackets(reports, false));
        rep.checks.push_back(check_chamber_bound(reports));
    } else if (g.is_window_derived()) {
        rep.checks.push_back(check_perturbed_brackets(reports, magnitude(g).value));
    }
    rep.checks.push_back(check_reliability_values());
    if (opt.adversarial_k > 0 && g.is_window_derived()) {
        if (lattice && g.scale == 1) {
            rep.checks.push_back(check_adversarial_chamber(arr, opt.adversarial_k, opt.adversarial_tau));
        } else {
            const Arrangement base = build(integer_window(g.m));
            rep.checks.push_back(check_adversarial_chamber(base, opt.adversarial_k, opt.adversarial_tau));
        }
    }
    return rep;
}

}  // namespace bz

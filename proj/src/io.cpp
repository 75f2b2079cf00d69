#include "bz/io.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace bz {

using nlohmann::json;

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json generator_set_to_json(const GeneratorSet& g)
{
    json pts = json::array();
    for (const auto& p : g.points) pts.push_back({p.x, p.y});
    return json{{"scale", g.scale}, {"m", g.m}, {"q", g.q}, {"seed", g.seed}, {"points", std::move(pts)}};
}

GeneratorSet generator_set_from_json(const json& j)
{
    GeneratorSet g;
    try {
        g.scale = j.at("scale").get<std::int64_t>();
        g.m = j.at("m").get<int>();
        g.q = j.at("q").get<std::int64_t>();
        g.seed = j.at("seed").get<std::uint64_t>();
        for (const auto& p : j.at("points")) {
            if (!p.is_array() || p.size() != 2) throw std::invalid_argument("point must be [x, y]");
            g.points.push_back(IPoint{p[0].get<std::int64_t>(), p[1].get<std::int64_t>()});
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed generator set: ") + e.what());
    }
    g.validate();
    return g;
}

json stats_to_json(const ArrangementStats& s)
{
    return json{{"n_lines", s.n_lines},
                {"n_vertices", s.n_vertices},
                {"n_edges", s.n_edges},
                {"n_faces", s.n_faces},
                {"max_concurrency", s.max_multiplicity}};
}

json arrangement_to_json(const Arrangement& arr)
{
    json lines = json::array();
    for (const auto& l : arr.lines) lines.push_back({l.a1.get_str(), l.a2.get_str(), l.c.get_str()});
    json vertices = json::array();
    for (const auto& v : arr.vertices) vertices.push_back({to_string(v.x), to_string(v.y)});
    json faces = json::array();
    for (const auto& f : arr.faces) {
        faces.push_back(json{{"vertices", f.boundary}, {"depth", f.depth}, {"on_clip_boundary", f.on_clip_boundary}});
    }
    return json{{"generators", generator_set_to_json(arr.generators)},
                {"clip_half_width", to_string(arr.clip_half_width)},
                {"stats", stats_to_json(stats(arr))},
                {"lines", std::move(lines)},
                {"vertices", std::move(vertices)},
                {"faces", std::move(faces)}};
}

void write_zones_csv(std::ostream& os, std::span<const ZoneReport> reports)
{
    os << kZonesCsvHeader << '\n';
    for (const auto& r : reports) {
        os << r.k << ',' << format_double(r.r) << ',' << format_double(r.R) << ',' << format_double(r.W) << ','
           << r.area.get_num().get_str() << ',' << r.area.get_den().get_str() << ',' << format_double(to_double(r.area))
           << ',' << to_string(r.cum_area_over_k) << ',' << format_double(r.outer_perimeter) << ','
           << format_double(r.distortion) << ',' << r.n_chambers << ',' << to_string(r.max_chamber_area) << ','
           << format_double(r.max_chamber_diameter) << ',' << (r.reliable ? 1 : 0) << '\n';
    }
}

void write_rays_csv(std::ostream& os, const StabilityResult& res)
{
    os << kRaysCsvHeader << '\n';
    for (const auto& d : res.per_direction) {
        os << d.u.x << ',' << d.u.y << ',' << res.k << ',' << format_double(d.alpha) << ',' << format_double(d.beta)
           << ',' << format_double(d.gap) << ',' << to_string(d.alpha_t) << ',' << to_string(d.beta_t) << '\n';
    }
}

}  // namespace bz

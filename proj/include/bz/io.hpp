#pragma once

// File formats: generator sets and arrangements as JSON, zone reports and
// ray gaps as CSV.

#include <iosfwd>
#include <span>
#include <string>

#include <json.hpp>

#include "bz/arrangement.hpp"
#include "bz/lattice_model.hpp"
#include "bz/zone_metrics.hpp"

namespace bz {

/// 17 significant digits, enough to round-trip any double.
std::string format_double(double v);

/// {scale, m, q, seed, points: [[x, y], ...]}
nlohmann::json generator_set_to_json(const GeneratorSet& g);
/// Throws std::invalid_argument on missing fields or invalid sets.
GeneratorSet generator_set_from_json(const nlohmann::json& j);

/// {generators, clip_half_width, stats, lines, vertices: [["x", "y"], ...],
///  faces: [{vertices: [ids], depth, on_clip_boundary}]}; rationals as "num/den".
nlohmann::json arrangement_to_json(const Arrangement& arr);
nlohmann::json stats_to_json(const ArrangementStats& s);

inline constexpr const char* kZonesCsvHeader =
    "k,r,R,W,area_num,area_den,area_float,cum_area_over_k,perimeter,distortion,n_chambers,"
    "max_chamber_area,max_chamber_diameter,reliable";
void write_zones_csv(std::ostream& os, std::span<const ZoneReport> reports);

inline constexpr const char* kRaysCsvHeader = "ux,uy,k,alpha,beta,gap,alpha_t,beta_t";
void write_rays_csv(std::ostream& os, const StabilityResult& res);

}  // namespace bz

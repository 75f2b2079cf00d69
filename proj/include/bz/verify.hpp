#pragma once

// Invariant checks over a built arrangement and its zone reports. Every
// failing check names a concrete k (or face) and the exact values involved.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "bz/arrangement.hpp"
#include "bz/zone_metrics.hpp"

namespace bz {

struct CheckResult {
    std::string name;
    int k_lo = 0;
    int k_hi = 0;
    bool passed = true;
    std::string witness;  // first failure, empty on success
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool all_passed() const;
};

nlohmann::json verify_report_to_json(const VerifyReport& rep);

/// Sum of face areas equals the clip box area.
CheckResult check_area_partition(const Arrangement& arr);
/// Random strictly interior points of every face with depth <= max_depth
/// have the face's depth by direct count.
CheckResult check_depth_consistency(const Arrangement& arr, int max_depth, std::uint64_t seed, int samples_per_face = 3);
/// Across every bisector edge the depth goes up by exactly one away from 0.
CheckResult check_crossing_rule(const Arrangement& arr);
/// The origin lies in a depth-0 face and each zone 1..kmax is connected
/// through shared vertices.
CheckResult check_zone_rings(const Arrangement& arr, int kmax);
/// The arrangement of an unperturbed window is invariant under the eight
/// symmetries of the square.
CheckResult check_square_symmetry(const Arrangement& arr);
/// Face lookup and direct counting agree at `n` random rational points of
/// the disc of the given radius.
CheckResult check_depth_oracle(const Arrangement& arr, const BigRat& radius, std::size_t n, std::uint64_t seed);
/// Between consecutive crossings along u the depth is the crossing count.
CheckResult check_ray_zone_consistency(const Arrangement& arr, int kmax, std::span<const IPoint> directions);

CheckResult check_unit_areas(std::span<const ZoneReport> reports);
/// Union of faces with depth <= k-1 has the cumulative zone area.
CheckResult check_cumulative_area(const Arrangement& arr, std::span<const ZoneReport> reports);
/// Integer-lattice brackets. With `include_first_upper` false the r_k upper
/// and W_k lower bounds are only checked from k = 2 on.
CheckResult check_lattice_brackets(std::span<const ZoneReport> reports, bool include_first_upper);
/// Perturbed brackets with magnitude tau.
CheckResult check_perturbed_brackets(std::span<const ZoneReport> reports, double tau);
/// n_chambers(k) <= 6k - 6 for k >= 2 and n_chambers(1) = 1.
CheckResult check_chamber_bound(std::span<const ZoneReport> reports);
/// lo < distortion(k) (< hi when given) for k >= k_from.
CheckResult check_distortion(std::span<const ZoneReport> reports, int k_from, std::optional<double> hi = std::nullopt);
/// reliable_k(9, q, 10000) for q = 0, 200, 1000, 5000 is 57, 56, 52, 34.
CheckResult check_reliability_values();

struct AdversarialOutcome {
    QPoint x;
    BigRat tau;
    GeneratorSet generators;
    std::optional<std::size_t> face;  // chamber of the perturbed arrangement holding x
    int face_depth = -1;
    bool contains_disc = false;       // B(x, tau/2) inside the chamber
    BigRat diameter_sq;
    BigRat area;
};

/// Centroid of the largest chamber of zone k of the integer window.
QPoint adversarial_centre(const Arrangement& lattice, int k);
AdversarialOutcome run_adversarial(const Arrangement& lattice, int k, const BigRat& tau);
CheckResult check_adversarial_chamber(const Arrangement& lattice, int k, const BigRat& tau);

struct VerifyOptions {
    int kmax = 0;                 // 0: reliable bound of the arrangement
    std::size_t directions = 64;
    std::size_t depth_samples = 1000;
    std::uint64_t seed = 0;
    int adversarial_k = 5;
    BigRat adversarial_tau = BigRat(2, 5);
};

/// Full suite for a window-derived arrangement.
VerifyReport run_verify(const Arrangement& arr, const VerifyOptions& opt);

}  // namespace bz

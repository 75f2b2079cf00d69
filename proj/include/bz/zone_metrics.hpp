#pragma once

// Measurements of Brillouin zones read off an arrangement, the closed-form
// bounds they are checked against, and the counting primitives used by the
// chamber-count and stability experiments.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "bz/arrangement.hpp"
#include "bz/exact_geom.hpp"
#include "bz/lattice_model.hpp"

namespace bz {

struct ZoneReport {
    int k = 0;
    BigRat r_sq;  // min squared distance of the zone boundary from 0
    BigRat R_sq;  // max squared distance
    double r = 0;
    double R = 0;
    double W = 0;
    BigRat area;
    BigRat cum_area;         // area of the union of the first k zones
    BigRat cum_area_over_k;
    double outer_perimeter = 0;
    double distortion = 0;
    std::size_t n_chambers = 0;
    BigRat max_chamber_area;
    BigRat max_chamber_diameter_sq;
    double max_chamber_diameter = 0;
    bool reliable = false;
};

/// Report for a single zone. A zone with no unclipped chamber comes back with
/// n_chambers == 0 and reliable == false.
ZoneReport zone_report(const Arrangement& arr, int k);
/// Reports for k = 1..kmax, sharing the per-face work.
std::vector<ZoneReport> zone_reports(const Arrangement& arr, int kmax);

/// Volume of the unit ball in R^d.
double unit_ball_volume(int d);

/// Closed-form brackets on r_k, R_k and W_k. Unset members mean there is
/// no bound on that side. All values are plain double evaluations
/// (round-to-nearest libm); callers compare with strict inequalities.
struct BoundSet {
    int d = 2;
    long k = 1;
    double tau = 0;
    std::optional<double> r_lower, r_upper;
    std::optional<double> R_lower, R_upper;
    std::optional<double> W_lower, W_upper;
};

/// Integer lattice:
///   (k/nu)^(1/d) - sqrt(d)/2 < r_k < ((k-1)/nu)^(1/d)
///   (k/nu)^(1/d) < R_k < (k/nu)^(1/d) + sqrt(d)/2
///   (k/nu)^(1/d) - ((k-1)/nu)^(1/d) < W_k < sqrt(d)
BoundSet lattice_bounds(int d, long k);

/// Perturbed lattice with magnitude tau (not strength):
///   (k/nu)^(1/d) - sqrt(d)/2 - tau < r_k,  R_k < (k/nu)^(1/d) + sqrt(d)/2 + tau,
///   W_k < sqrt(d) + 2 tau.
BoundSet perturbed_bounds(int d, long k, double tau);

struct DiameterBound {
    double value = 0;      // 18 d sqrt(d) nu^(1/d) k^((-1 + 2^(1-d)) / d)
    double threshold = 0;  // nu (18 d sqrt(d))^d
    bool valid = false;    // k >= threshold
};

DiameterBound chamber_diameter_bound(int d, long k);

/// k-th smallest entry (1-based) of `values`.
template <class T>
T min_k(std::vector<T> values, std::size_t k)
{
    if (k < 1 || k > values.size()) throw std::out_of_range("min_k rank out of range");
    auto nth = values.begin() + static_cast<std::ptrdiff_t>(k - 1);
    std::nth_element(values.begin(), nth, values.end());
    return *nth;
}

/// Crossings of the ray {t u : t >= 0} with the bisectors of the generators
/// that have <u, a> > 0. The crossing point of generator a is t_a u with
/// t_a = |a|^2 / (2 <u, a>), and its distance from 0 is t_a |u|.
struct RayProfile {
    IPoint u;
    std::vector<BigRat> t;  // ascending, ties kept

    std::size_t size() const { return t.size(); }
    /// Squared distance of the k-th crossing (1-based).
    BigRat lambda_sq(std::size_t k) const;
    double lambda(std::size_t k) const;
};

/// Throws std::invalid_argument for u = 0. When kmax > 0 only the first kmax
/// crossings are kept.
RayProfile ray_profile(const GeneratorSet& g, IPoint u, std::size_t kmax = 0);

/// Parameter of the k-th crossing along u (1-based), by rank selection.
BigRat kth_crossing(const GeneratorSet& g, IPoint u, std::size_t k);

/// `n` integer directions from the square ring of max-norm h = ceil(n/8),
/// counterclockwise from (h, 0), reduced to primitive vectors and
/// deduplicated by direction.
std::vector<IPoint> ray_directions(std::size_t n);

struct DirectionGap {
    IPoint u;
    BigRat alpha_t;
    BigRat beta_t;
    double alpha = 0;
    double beta = 0;
    double gap = 0;  // |beta - alpha|; exactly 0 iff alpha_t == beta_t
};

struct StabilityResult {
    int k = 0;
    std::vector<DirectionGap> per_direction;
    double max_gap = 0;
};

/// Per-direction |beta_k(u) - alpha_k(u)| between a base set and its perturbation.
StabilityResult stability_gap(const GeneratorSet& base, const GeneratorSet& perturbed, int k,
                              std::span<const IPoint> directions);

/// Integer points on the circle |y - center|^2 = rsq, by exhaustive search of
/// the bounding box. Throws std::invalid_argument unless rsq > 0.
long circle_lattice_count(const QPoint& center, const BigRat& rsq);

/// Generators contained in the open 0-anchored disc of some face with depth
/// at most k-1 (scaled integer coordinates, sorted).
std::vector<IPoint> knear_points(const Arrangement& arr, int k);
inline std::size_t knear_count(const Arrangement& arr, int k) { return knear_points(arr, k).size(); }

/// x / |x|^2. Throws std::invalid_argument at the origin.
QPoint invert(const QPoint& x);

/// Number of distinct j-element subsets of `points` cut off by an open
/// half-plane. Duplicated points are rejected.
long ksets_count(std::span<const QPoint> points, std::size_t j);

}  // namespace bz

#pragma once

// Generator sets: windows of the integer lattice, their random integer-encoded
// perturbations, the finite-window reliability cut-off and the adversarial
// shell perturbation that manufactures a large chamber.

#include <cstdint>
#include <string>
#include <vector>

#include "bz/exact_geom.hpp"

namespace bz {

struct IPoint {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend bool operator==(const IPoint&, const IPoint&) = default;
    friend auto operator<=>(const IPoint&, const IPoint&) = default;
};

/// Origin-anchored generators at a common integer scale. The true position
/// of points[i] is points[i] / scale; the origin is implicit and never listed.
/// For sets derived from a window, points follow row-major window order
/// (a2 outer from -m to m, a1 inner from -m to m, origin skipped), so the
/// i-th point came from window_point(m, i).
struct GeneratorSet {
    std::int64_t scale = 1;
    int m = 0;
    std::int64_t q = 0;
    std::uint64_t seed = 0;
    std::vector<IPoint> points;

    std::size_t size() const { return points.size(); }
    QPoint position(std::size_t i) const;
    /// Throws std::invalid_argument when an invariant is broken.
    void validate() const;
    bool is_window_derived() const;
};

/// Number of nonzero points in [-m, m]^2.
std::size_t window_size(int m);
/// i-th nonzero point of [-m, m]^2 in row-major order.
IPoint window_point(int m, std::size_t i);

/// All (2m+1)^2 - 1 nonzero integer points of [-m, m]^2 at scale 1.
GeneratorSet integer_window(int m);

struct PerturbationConfig {
    int m = 9;
    std::int64_t p = 10000;
    std::int64_t q = 0;
    std::uint64_t seed = 0;
};

/// SplitMix64 evaluated in counter mode: draw i is the SplitMix64 finalizer
/// applied to seed + (i + 1) * 0x9e3779b97f4a7c15. Stateless apart from the
/// counter, so any draw can be reproduced in isolation.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t next();
    /// Uniform integer in [lo, hi] by rejection (no modulo bias).
    std::int64_t uniform(std::int64_t lo, std::int64_t hi);
    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

/// Every nonzero window point a goes to a uniform integer point of
/// p*a + [-q, q]^2 (two draws per point, x then y, in row-major order).
/// Throws std::invalid_argument unless 0 <= q <= p/2 and p >= 1, m >= 1;
/// std::runtime_error if q = p/2 and two images coincide.
GeneratorSet perturb(const PerturbationConfig& cfg);

struct Magnitude {
    BigRat sq;     // max squared displacement, lattice units
    double value;  // sqrt(sq)
};

/// sup |a - phi(a)| over the set, in lattice units.
Magnitude magnitude(const GeneratorSet& g);

struct ReliabilityBound {
    int m;
    BigRat tau;  // strength q/p
    long kmax;   // largest k with k < (pi/4) (m + 1 - sqrt2 - (2 sqrt2 + 1) tau)^2
};

/// Largest k whose zone in the window arrangement provably matches the
/// infinite one. Evaluated with 128-bit directed rounding so kmax is never
/// overstated. Throws std::invalid_argument unless 0 <= q/p <= 1/2.
ReliabilityBound reliable_k(int m, std::int64_t q, std::int64_t p);

/// Pushes every nonzero window point within distance tau of the sphere
/// through 0 centred at x onto the shell at distance tau, radially with
/// respect to x, then snaps to the grid of scale p. Snapping overshoots
/// outward so every moved point ends at distance >= tau from the sphere;
/// the displacement of any point is below tau + 2/p.
///
/// Requires x strictly inside the k-th zone of 0 in Z^2 (checked: x on no
/// bisector and exactly k-1 window points strictly closer than 0), |x| > 1/2
/// and 0 <= tau < 1/2. Throws std::invalid_argument otherwise.
GeneratorSet adversarial_perturbation(int k, const BigRat& tau, const QPoint& x, int m, std::int64_t p = 10000);

/// Exact test that the scaled point lies at distance >= tau from the sphere
/// |y - x| = |x| (outside if `outside`, inside otherwise).
bool clears_shell(const QPoint& x, const QPoint& point, const BigRat& tau, bool outside);

}  // namespace bz

#pragma once

// Exact arrangement of the bisectors between the origin and every generator,
// clipped to an axis-aligned box and labelled with depths.

#include <cstddef>
#include <optional>
#include <vector>

#include "bz/exact_geom.hpp"
#include "bz/lattice_model.hpp"

namespace bz {

/// Marker for edges on the clip box and for "no face" beyond it.
inline constexpr long kClipLine = -1;
inline constexpr long kNoFace = -1;

struct Face {
    ConvexPolygon polygon;
    /// Boundary vertices in counterclockwise order, including vertices where
    /// the boundary continues straight (indices into Arrangement::vertices).
    std::vector<std::size_t> boundary;
    int depth = 0;
    QPoint interior_witness;
    bool on_clip_boundary = false;
};

struct Edge {
    std::size_t v0 = 0;
    std::size_t v1 = 0;
    long line = kClipLine;  // index into Arrangement::lines
    long left = kNoFace;    // face to the left of v0 -> v1
    long right = kNoFace;
};

struct Arrangement {
    GeneratorSet generators;
    BigRat clip_half_width;  // lattice units; the clip box is [-w, w]^2

    /// One bisector per generator (scaled coordinates: 2 a1 x + 2 a2 y = a1^2 + a2^2
    /// with x in units of 1/scale); line i belongs to generator i.
    std::vector<BisectorLine> lines;
    std::vector<bool> line_crosses_clip;

    std::vector<QPoint> vertices;              // lattice units
    std::vector<int> vertex_multiplicity;      // bisectors through the vertex
    std::vector<Edge> edges;
    std::vector<Face> faces;

    BigRat clip_area() const { return 4 * clip_half_width * clip_half_width; }
    /// Largest zone index guaranteed to match the infinite set (0 when unknown).
    long reliable_kmax() const;
};

struct ArrangementStats {
    std::size_t n_lines = 0;
    std::size_t n_vertices = 0;
    std::size_t n_edges = 0;
    std::size_t n_faces = 0;
    int max_multiplicity = 0;
};

ArrangementStats stats(const Arrangement& arr);

/// Clip half-width that keeps every reliable zone of a window-derived set
/// away from the box: the upper bound on R_kmax for magnitude sqrt(2) q/p,
/// plus one, rounded up to a quarter.
BigRat default_clip_half_width(const GeneratorSet& g);

/// Throws std::invalid_argument on an empty or invalid generator set or a
/// non-positive clip half-width.
Arrangement build(const GeneratorSet& g, const BigRat& clip_half_width);
inline Arrangement build(const GeneratorSet& g) { return build(g, default_clip_half_width(g)); }

/// Number of generators strictly closer to x than the origin.
int depth_of_point(const GeneratorSet& g, const QPoint& x);

struct ZoneSelection {
    int k = 0;
    std::vector<std::size_t> faces;  // indices into Arrangement::faces
    bool reliable = false;
};

/// Faces of depth k-1 that stay clear of the clip box. Throws for k < 1.
ZoneSelection zone(const Arrangement& arr, int k);

/// Uniform-grid point location over the faces of an arrangement.
class FaceLocator {
public:
    explicit FaceLocator(const Arrangement& arr, std::size_t cells_per_side = 0);

    /// Faces whose closed polygon contains x.
    std::vector<std::size_t> containing(const QPoint& x) const;
    /// Depth at x read from the faces: the minimum depth over the closed faces
    /// containing x (equal to the strict-closer count also on boundaries).
    /// nullopt outside the clip box.
    std::optional<int> depth_at(const QPoint& x) const;

private:
    const Arrangement* arr_;
    double lo_;
    double cell_;
    std::size_t n_;
    std::vector<std::vector<std::size_t>> cells_;
};

}  // namespace bz

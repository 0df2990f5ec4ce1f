#pragma once

#include "dissect/angle.hpp"
#include "dissect/geometry.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dissect {

// Axis-aligned rectangle with its lower-left corner at the origin.
struct Region {
    QuadraticNumber width, height;
    QuadraticNumber area() const { return width * height; }
    bool is_square() const { return width == height; }
    std::vector<Point> corners() const;  // CCW from (0,0)
    Containment contains(const Point& p) const;
};

struct PlacedTile {
    int id = 0;
    Isometry iso;
};

enum class Orientation { Positive, Negative };

struct Tiling {
    Prototile prototile;
    Region region;
    std::vector<PlacedTile> tiles;
    AngleMode angleMode;

    const RotationGroup& group() const { return prototile.rotation_group(); }
    int size() const { return static_cast<int>(tiles.size()); }

    Point image(int j, const Point& p) const;
    // Image of the boundary cycle, reoriented counterclockwise when the
    // placement reflects.
    std::vector<Point> tile_polygon(int j) const;
    // Raw image of the boundary cycle in prototile vertex order.
    std::vector<Point> tile_vertex_images(int j) const;
};

Orientation tile_orientation(const Tiling& t, int j);  // trapezoid prototiles only

struct Failure {
    enum class Kind { Overlap, Gap, OutOfRegion, AreaMismatch };
    Kind kind;
    int i = -1, j = -1;
    std::optional<Point> witness;
    std::string detail;
};

struct ValidationReport {
    bool valid = false;
    std::vector<Failure> failures;
    std::string summary() const;
};

ValidationReport validate(const Tiling& t, int threads = 1);

// One tile side with provenance; geometric duplicates are kept distinct.
struct PlacedSide {
    int tile;
    int sideIndex;
    Segment seg;
    SideTag tag;
};

struct VerticesAndSides {
    std::vector<Point> vertices;  // deduplicated, sorted by (y, x)
    std::vector<PlacedSide> sides;
};

VerticesAndSides extract_vertices_and_sides(const Tiling& t);

// Region faces of the arrangement of all tile-side lines: convex, CCW,
// pairwise interior-disjoint, covering the region exactly.
std::vector<std::vector<Point>> arrangement_faces(const Tiling& t);

// Self-maps of the region rectangle inside the rotation group: 8 for a
// square, 4 otherwise (identity, half turn, two axis reflections).
std::vector<Isometry> region_symmetries(const Region& r, const RotationGroup& g);

// Rewrites every tile as sym ∘ iso; region unchanged.
Tiling transform_tiling(const Tiling& t, const Isometry& sym);

struct LoadError : std::runtime_error {
    explicit LoadError(const std::string& what) : std::runtime_error(what) {}
};

Tiling load_tiling(const std::string& bytes);
std::string save_tiling(const Tiling& t);

struct RenderOverlays {
    // Directed arrows (e.g. hypotenuse edges), drawn with arrowheads.
    std::vector<std::pair<Point, Point>> arrows;
    // Highlighted segments (e.g. maximal segments).
    std::vector<Segment> highlights;
    // Point labels (e.g. vertex angle patterns).
    std::vector<std::pair<Point, std::string>> labels;
};

std::string render_svg(const Tiling& t, const RenderOverlays& overlays = {});

// Decimal with 12 significant digits, exact rounding; equal values always
// format identically.
std::string svg_number(const QuadraticNumber& v);

}  // namespace dissect

#pragma once

#include "dissect/angle.hpp"
#include "dissect/quadratic.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace dissect {

struct Vec {
    QuadraticNumber dx, dy;
    Vec operator+(const Vec& o) const { return {dx + o.dx, dy + o.dy}; }
    Vec operator-(const Vec& o) const { return {dx - o.dx, dy - o.dy}; }
    Vec operator-() const { return {-dx, -dy}; }
    Vec scaled(const QuadraticNumber& k) const { return {dx * k, dy * k}; }
    bool operator==(const Vec& o) const { return dx == o.dx && dy == o.dy; }
    bool is_zero() const { return dx.is_zero() && dy.is_zero(); }
};

using Direction = Vec;

struct Point {
    QuadraticNumber x, y;
    Vec operator-(const Point& o) const { return {x - o.x, y - o.y}; }
    Point operator+(const Vec& v) const { return {x + v.dx, y + v.dy}; }
    Point operator-(const Vec& v) const { return {x - v.dx, y - v.dy}; }
    bool operator==(const Point& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Point& o) const { return !(*this == o); }
    std::string str() const { return "(" + x.str() + ", " + y.str() + ")"; }
};

// Total order by (y, x); used for anchors, canonical endpoints and map keys.
bool point_less(const Point& a, const Point& b);
struct PointLess {
    bool operator()(const Point& a, const Point& b) const { return point_less(a, b); }
};

QuadraticNumber cross(const Vec& u, const Vec& v);
QuadraticNumber dot(const Vec& u, const Vec& v);
Sign orient(const Point& a, const Point& b, const Point& c);  // sign of cross(b−a, c−a)

bool direction_equiv(const Vec& u, const Vec& v);  // parallel or perpendicular

struct Segment {
    Point a, b;
};

struct SegDisjoint {};
struct SegPoint { Point p; };
struct SegOverlap { Segment s; };
using SegRelation = std::variant<SegDisjoint, SegPoint, SegOverlap>;

SegRelation segment_relation(const Segment& s1, const Segment& s2);

bool point_on_segment(const Point& p, const Segment& s);  // closed segment

QuadraticNumber polygon_area(const std::vector<Point>& poly);  // signed shoelace/2

enum class Containment { Outside, Boundary, Inside };
Containment point_in_convex(const std::vector<Point>& ccw, const Point& p);

// True iff the convex polygons' interiors intersect (shared boundary is fine).
bool convex_interiors_overlap(const std::vector<Point>& a, const std::vector<Point>& b);

// Intersection of a convex polygon with the half-plane cross(dir, p − on) >= 0.
std::vector<Point> clip_half_plane(const std::vector<Point>& ccw, const Point& on, const Vec& dir);

Point polygon_centroid_vertexmean(const std::vector<Point>& poly);

// Canonical form of the line a·x + b·y = c: leading nonzero coefficient
// scaled to 1, so geometrically equal lines compare equal.
struct LineKey {
    QuadraticNumber a, b, c;
    bool operator==(const LineKey& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator<(const LineKey& o) const;
};
LineKey canonical_line(const Point& p, const Vec& dir);

// Finite rotation set: `order` equal steps around the circle, entries exact in
// one quadratic field (order 12 → d 3, order 8 → d 2, order 4 → rational).
class RotationGroup {
public:
    static const RotationGroup& of_order(int order);  // 4, 8 or 12
    int order() const { return order_; }
    const QuadraticNumber& cos_at(int k) const { return table_[mod(k)].first; }
    const QuadraticNumber& sin_at(int k) const { return table_[mod(k)].second; }
    // Index whose rotation maps projective direction u onto v (with matching
    // sense); nullopt when no group element does.
    std::optional<int> index_mapping(const Vec& u, const Vec& v) const;

private:
    explicit RotationGroup(int order);
    int mod(int k) const { return ((k % order_) + order_) % order_; }
    int order_;
    std::vector<std::pair<QuadraticNumber, QuadraticNumber>> table_;
};

// p ↦ R_k · (reflect ? diag(1,−1) : id) · p + (dx, dy)
struct Isometry {
    int rot = 0;
    bool reflect = false;
    QuadraticNumber dx, dy;
    bool operator==(const Isometry& o) const {
        return rot == o.rot && reflect == o.reflect && dx == o.dx && dy == o.dy;
    }
};

Point apply_isometry(const Isometry& iso, const Point& p, const RotationGroup& g);
Vec apply_linear(const Isometry& iso, const Vec& v, const RotationGroup& g);
// (g ∘ f): applies f first. Uses S·R_k·S = R_{−k} to stay inside the group.
Isometry compose(const Isometry& g, const Isometry& f, const RotationGroup& grp);

// Which prototile side a length-tag names; trapezoid tags are unambiguous
// because x is irrational in every solvable instance.
enum class SideTag { X, XP1, Two, Leg, RectW, RectH, Poly };
std::string side_tag_name(SideTag t);

class Prototile {
public:
    enum class Kind { RightTrapezoid, Rectangle, ConvexPolygon };

    // Right-angle trapezoid with wedge α at a, π−α at b, hypotenuse a–b of
    // length 2, parallel sides x (top) and x+2cosα (bottom).
    static Prototile right_trapezoid(QuadraticNumber x, QuadraticNumber cosA, QuadraticNumber sinA);
    static Prototile trapezoid_pi3(QuadraticNumber x);  // cos π/3 = 1/2, sin = √3/2
    static Prototile trapezoid_pi4(QuadraticNumber x);  // cos π/4 = sin = √2/2
    static Prototile rectangle(QuadraticNumber w, QuadraticNumber h);
    static Prototile convex_polygon(std::vector<Point> ccw);

    Kind kind() const { return kind_; }
    int sides() const { return static_cast<int>(boundary_.size()); }
    // Counterclockwise boundary cycle; for trapezoids the cycle is [a,d,c,b]
    // so that the label sequence a,b,c,d runs clockwise.
    const std::vector<Point>& boundary() const { return boundary_; }
    const std::vector<ExactAngle>& corner_angles() const { return angles_; }
    const std::vector<SideTag>& side_tags() const { return tags_; }
    QuadraticNumber side_length(int i) const;

    // Trapezoid labeled vertices.
    const Point& pa() const { return boundary_[0]; }
    const Point& pd() const { return boundary_[1]; }
    const Point& pc() const { return boundary_[2]; }
    const Point& pb() const { return boundary_[3]; }

    const QuadraticNumber& x() const { return x_; }
    const QuadraticNumber& cosA() const { return cosA_; }
    const QuadraticNumber& sinA() const { return sinA_; }
    const QuadraticNumber& rect_w() const { return w_; }
    const QuadraticNumber& rect_h() const { return h_; }

    QuadraticNumber area() const;
    const RotationGroup& rotation_group() const;
    int field_radicand() const;  // 3, 2 or 0

    bool operator==(const Prototile& o) const;

private:
    Kind kind_ = Kind::Rectangle;
    QuadraticNumber x_, cosA_, sinA_, w_, h_;
    std::vector<Point> boundary_;
    std::vector<ExactAngle> angles_;
    std::vector<SideTag> tags_;
};

}  // namespace dissect

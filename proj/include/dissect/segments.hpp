#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dissect/geometry.hpp"
#include "dissect/incidence.hpp"
#include "dissect/tiling.hpp"

namespace dissect {

// One tile side lying on a maximal segment, oriented along the segment
// direction (from → to advances along it).
struct RunSide {
    int tile;
    int sideIndex;
    SideTag tag;
    QuadraticNumber length;
    Point from, to;
};

// Inclusion-maximal straight run of collinear tile sides. `upper` lists the
// sides of tiles on the left of dir walking u → v, `lower` those on the
// right; both are ordered by position along the run. dir is unit length and
// canonical (dy > 0, or dy == 0 and dx > 0), which makes u the (y, x)-least
// endpoint.
struct MaximalSegment {
    Point u, v;
    Vec dir;
    QuadraticNumber len;
    std::vector<RunSide> upper, lower;
    bool onBoundary = false;  // one of the two side lists is empty
};

std::vector<MaximalSegment> extract_maximal_segments(const Tiling& t);

// Net side-count difference across a segment (upper minus lower), bucketed
// by side tag: a ↔ X, b ↔ XP1, c ↔ Leg, d ↔ Two. Reading lengths with
// x = r + s√3 gives the constraint (a+b)r + b + ((a+b)s + c)√3 + 2d = 0,
// split componentwise.
struct SideRelation {
    long long a = 0, b = 0, c = 0, d = 0;
    bool degenerate() const { return a + b == 0; }
    bool operator==(const SideRelation&) const = default;
};

// Relations from every interior maximal segment plus the two relations
// obtained by identifying opposite region sides by translation (bottom vs
// top walked by +x, left vs right walked by +y, inward-facing sequences).
// Requires the 60-degree trapezoid prototile.
std::vector<SideRelation> boundary_identified_relations(const Tiling& t);

struct SolveOutcome {
    enum class Kind { Solved, AllDegenerate, Inconsistent };
    Kind kind;
    Rational r, s;        // x = r + s√3 when Solved
    Rational r2, s2;      // conflicting second solution when Inconsistent
    int first = -1;       // index of the relation that fixed (r, s)
    int second = -1;      // index of the conflicting relation
    std::string detail;
};

// Recovers x from the relation list: each relation with a + b ≠ 0 pins
// r = −(b + 2d)/(a + b) and s = −c/(a + b); all of them must agree and the
// degenerate ones must reduce to 0 = 0.
SolveOutcome solve_x(const std::vector<SideRelation>& relations);

struct AreaCheck {
    bool sPositive;
    Rational A, B;  // region side ℓ = A + B√3
};

// Exact check that the square region's area equals N times the tile area:
// with x = r + s√3 this splits into A² + 3B² = 3Ns and 2AB = N(2r + 1)/2.
// Throws when either component fails, or when the region is not square or
// the prototile is not the 60-degree trapezoid.
AreaCheck area_constraint_check(const Tiling& t);

struct Pure2Witness {
    long long a, b, c;    // a·x + b·(x+1) + c·√3
    long long value;      // the even integer total
    bool operator==(const Pure2Witness&) const = default;
};

// Searches 0 ≤ a, b, c ≤ bound (lexicographic) for a nonnegative side
// combination whose total length is a positive even integer, i.e. a line
// that could cross the region meeting only hypotenuses.
std::optional<Pure2Witness> pure2_check(const QuadraticNumber& x, long long bound);

// Interior vertices whose wedge angles are exactly (β, β, β). Requires the
// α = π/3 prototile. Sorted by (y, x).
std::vector<Point> find_3beta_vertices(const std::vector<VertexIncidence>& inc);

enum class SegmentSide { Upper, Lower };
enum class HeadAngle { Acute, Obtuse };  // α respectively β at the start

// Start data of a special half-maximal segment: anchor u, unit direction,
// which side sequence leads with a hypotenuse, and the angle the leading
// tile contributes at u.
struct HeadInformation {
    Point u;
    Vec dir;
    SegmentSide delta;
    HeadAngle theta;
    bool operator==(const HeadInformation&) const = default;
};

// Suffix [u, v] of a maximal segment (in either orientation) that no tile
// side straddles at u. parent indexes the extraction output; reversed marks
// the orientation with dir negated.
struct HalfMaximalSegment {
    Point u, v;
    Vec dir;
    std::vector<RunSide> upper, lower;
    int parent = -1;
    bool reversed = false;
};

std::vector<HalfMaximalSegment> half_maximal_segments(const Tiling& t);

struct SpecialSegment {
    HalfMaximalSegment seg;
    HeadInformation head;
};

// Half-maximal segments where exactly one of the two side sequences starts
// with a hypotenuse. Requires the 60-degree trapezoid prototile.
std::vector<SpecialSegment> scan_special_segments(const Tiling& t);

// Strict partial order on points relative to a unit direction x: u ≺ v iff
// v − u = a·x + b·ω²x with a, b ≥ 0 and (a, b) ≠ (0, 0), where ω²x is x
// rotated by −120°.
bool prec(const Point& u, const Point& v, const Vec& x);

// Reference direction whose cone {a·ref + b·ω²ref : a, b ≥ 0} contains every
// successor step produced from this head: the run direction for lower heads,
// the run direction rotated +120° for upper heads.
Vec head_forward_reference(const HeadInformation& head);

struct ChainStep {
    enum class Kind { Advanced, Contradiction, Terminated };
    Kind kind;
    std::optional<HeadInformation> next;  // set when Advanced
    Point at;                             // junction the step examined
    std::vector<int> witnessTiles;
    std::string detail;
};

// Advances a special-segment head one step: walks the leading even prefix to
// the first junction u₁, inspects the angle the adjacent run tile leaves
// there, and either hands back the successor head (strictly ≺-larger anchor),
// reports the local configuration that cannot be completed (Contradiction),
// or reports that this instance does not carry the construction any further
// (Terminated). head must come from scan_special_segments(t).
ChainStep chain_step(const Tiling& t, const HeadInformation& head);

// One successor chain grown from a (β, β, β) vertex.
struct ObstructionChain {
    Point seed;
    bool seedMixed = false;  // a wedge ray carries two hypotenuses
    std::vector<HeadInformation> heads;
    ChainStep last;
    bool strictlyIncreasing = false;  // prec held at every advance
};

struct ObstructionReport {
    bool applicable = false;
    std::string reason;
    std::vector<ObstructionChain> chains;
};

// For an α = π/3 tiling candidate that fails degree balance: seeds a chain at
// every (β, β, β) vertex and iterates chain_step until contradiction,
// termination, or a repeated head. Valid tilings come back inapplicable.
ObstructionReport odd_n_obstruction_report(const Tiling& t);

}  // namespace dissect

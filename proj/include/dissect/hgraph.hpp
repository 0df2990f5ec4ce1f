#pragma once

#include "dissect/incidence.hpp"
#include "dissect/tiling.hpp"

#include <utility>
#include <vector>

namespace dissect {

// Directed hypotenuse of one placed trapezoid: α corner → β corner.
struct HEdge {
    Point origin, terminus;
    int tileId = -1;
};

struct HypotenuseGraph {
    std::vector<Point> V;                     // sorted by (y, x)
    std::vector<HEdge> edges;                 // in tile-id order
    std::vector<std::vector<int>> outEdges;   // per vertex index, edge indices
    std::vector<std::vector<int>> inEdges;

    int vertex_index(const Point& p) const;   // -1 when absent

    // Dedups endpoints and builds adjacency; rejects loops (origin = terminus).
    static HypotenuseGraph from_edges(std::vector<HEdge> e);
};

// Requires a valid right-trapezoid tiling.
HypotenuseGraph build_hgraph(const Tiling& t);

struct PatternOffender {
    Point w;
    std::vector<ExactAngle> pattern;  // clockwise wedge angles at w
};
struct PatternReport {
    bool eulerian = true;
    std::vector<PatternOffender> offenders;
};
// A vertex passes iff its α and β wedge counts agree (out-degree = in-degree);
// the realizable balanced patterns are (α,β), (α,β,α,β), (α,α,β,β),
// (α,β,π/2,π/2), (α,π/2,β,π/2) up to rotation and reflection, plus their
// boundary truncations.
PatternReport angle_pattern_check(const Tiling& t, const HypotenuseGraph& g);

struct DegreeBalance {
    bool balanced = true;
    std::vector<std::pair<int, int>> table;  // per vertex: (deg⁺ out, deg⁻ in)
};
DegreeBalance degree_balance(const HypotenuseGraph& g);

// Run of edges passing straight through merged (α,α,β,β) vertices.
struct EdgeChain {
    std::vector<int> edges;
    bool closed = false;  // first edge's origin is the last edge's terminus merge
};

struct PairedGraph {
    HypotenuseGraph baseline;
    std::vector<Point> V1;     // (α,α,β,β) vertices, merged away
    std::vector<Point> Vstar;  // surviving vertices
    std::vector<EdgeChain> chains;  // every edge in exactly one chain
};
PairedGraph pair_merge(const HypotenuseGraph& g, const std::vector<VertexIncidence>& inc);

struct FeasibleCycle {
    std::vector<HEdge> edges;  // consecutive: terminus_i = origin_{i+1}, closed
    std::vector<int> tiles;
    std::vector<Vec> gamma;                  // hyp vectors, terminus − origin
    std::vector<Vec> rho;                    // base vectors f(d) → f(a); may be empty
    std::vector<Orientation> orientations;   // may be empty (synthetic cycles)
};

// Peels Γ* into cycles (deterministic: lowest edge index first) and expands
// merged chains back to hypotenuse edges.  Throws when edges remain uncovered
// (graph not component-wise Eulerian).
std::vector<FeasibleCycle> decompose_feasible_cycles(const PairedGraph& pg);
// Same, also filling rho and orientations from the tiling.
std::vector<FeasibleCycle> decompose_feasible_cycles(const PairedGraph& pg, const Tiling& t);

// Consecutive tiles with equal orientation need γᵢ ∼ γᵢ₊₁ and ρᵢ ∼ ρᵢ₊₁;
// with opposite orientation γᵢ ∼ ρᵢ₊₁ and ρᵢ ∼ γᵢ₊₁ (∼ = parallel or
// perpendicular).  Needs rho/orientations filled.
bool orientation_propagation_check(const FeasibleCycle& c);

struct ParityCertificate {
    long long a = 0, b = 0, c = 0, d = 0;  // net counts for 1, i, ω, iω
    bool closure = false;                  // a + bi + (c + di)ω = 0
    bool normEquality = false;             // a² + b² = c² + d²
    int length = 0;
    bool conjugateFrame = false;  // classified against e^{−iα} instead of e^{iα}
};
// Fixes the frame (all tiles same orientation: rotate first hyp to the +x
// axis; mixed: re-root at a positive tile and rotate its hyp to the −x axis),
// classifies every hyp direction into {±1, ±i, ±ω, ±iω}, and reports the
// closure/norm/parity facts.  Throws when a direction fits no class.
ParityCertificate parity_certificate(const FeasibleCycle& c, const AngleMode& mode);

struct ParityTheoremReport {
    bool nEven = false;
    std::vector<ParityCertificate> cycles;
};
// Full pipeline: hgraph → pairing → cycle decomposition → certificates.
// Throws on non-trapezoid input or a non-Eulerian hypotenuse graph.
ParityTheoremReport parity_theorem_check(const Tiling& t);

// α = π/4 route: forgets directions, decomposes the undirected graph into
// cycles, and checks each has even length with eighth-turn step directions.
bool undirected_cycle_parity(const Tiling& t);

// True iff every weak component is two coincident antiparallel hypotenuses.
bool pairing_conjecture_check(const Tiling& t);
bool pairing_conjecture_on_graph(const HypotenuseGraph& g);

std::vector<int> weak_components(const HypotenuseGraph& g);  // per-vertex ids

struct PeelReport {
    std::vector<std::vector<int>> cycles;  // edge indices
    bool consumedAll = false;
};
// Raw directed cycle peeling, ignoring any pairing.
PeelReport peel_edge_cycles(const HypotenuseGraph& g);

}  // namespace dissect

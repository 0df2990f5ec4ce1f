#pragma once

#include "dissect/tiling.hpp"

#include <string>
#include <vector>

namespace dissect {

struct SearchConfig {
    Prototile prototile;
    Region region;
    int targetN = 0;
    // Linear parts (rot, reflect) tried at every anchor; translations are
    // derived from the anchor point. Empty means the prototile's whole
    // rotation group, each element with and without reflection.
    std::vector<Isometry> rotations;
    bool dedupSymmetry = true;
    long long nodeLimit = 10'000'000;
    AngleMode angleMode = AngleMode::generic();
};

struct SearchResult {
    std::vector<Tiling> tilings;
    long long nodesExplored = 0;
    bool exhausted = false;
};

// Depth-first exact-cover enumeration. Each node anchors the (y, x)-least
// uncovered point; any tile covering that point must place a vertex there, so
// branching over rotation x reflection x anchored-vertex placements that fit
// inside the uncovered faces is complete. Placements are tried in
// (rotationIndex, reflect, vertexIndex) order, so results and node counts are
// reproducible for a fixed thread count; with threads > 1 the root branches
// run on a worker pool with the node budget split evenly across them.
SearchResult enumerate(const SearchConfig& cfg, int threads = 1);

// Least serialization of the tiling over the region's self-maps; tiles are
// keyed by their sorted vertex sets, so differently-encoded placements of the
// same shape agree. Equal keys iff the tilings coincide up to region symmetry.
std::string canonical_form(const Tiling& t);

struct SweepCase {
    std::string label;
    Prototile prototile;
    Region region;
    int n = 0;
    AngleMode angleMode = AngleMode::generic();
};

struct SweepCell {
    std::string label;
    int n = 0;
    bool skipped = false;  // region/prototile areas incompatible
    long long nodes = 0;
    bool exhausted = false;
    int tilingCount = 0;
    // Verdicts over the found tilings; trapezoid prototiles only, vacuously
    // true elsewhere.
    bool allEulerian = true;
    bool allPaired = true;
    bool allEvenN = true;
};

// Runs enumerate on every case (area-incompatible cells are marked skipped,
// not errors) and audits each found trapezoid tiling's hypotenuse cycle
// structure.
std::vector<SweepCell> sweep(const std::vector<SweepCase>& cases, int threads = 1);

}  // namespace dissect

#pragma once

#include "dissect/tiling.hpp"

#include <optional>
#include <vector>

namespace dissect {

enum class VertexClass { Corner, Boundary, Interior };  // position relative to ∂Ω

enum class AngleSum { Half, Pi, TwoPi, Other };  // π/2, π, 2π, anything else

struct VertexIncidence {
    Point w;
    std::vector<int> incidentTiles;     // tiles having w as a true vertex
    std::vector<ExactAngle> angles;     // wedge per tile, clockwise from the +x axis
    std::vector<Vec> rayCw, rayCcw;     // wedge boundary rays, parallel to angles
    VertexClass cls = VertexClass::Interior;
    // True when w also lies in the interior of some other tile's side
    // (T-junction): the position says Interior/Boundary while the angle sum
    // says one class lower.
    bool hanging = false;
    ExactAngle sum;
    AngleSum sumClass = AngleSum::Half;  // sum resolved under the tiling's angle mode
};

// One record per distinct tile vertex, sorted by (y, x), with no constraint on
// the angle sums (sumClass may be Other).  Lets pattern checks run on
// deliberately broken arrangements.
std::vector<VertexIncidence> collect_vertex_wedges(const Tiling& t);

// One record per distinct tile vertex, sorted by (y, x).
// Throws if some angle sum is none of {π/2, π, 2π} (impossible after validate).
std::vector<VertexIncidence> build_incidence(const Tiling& t);

struct CountingSummary {
    int q = 0, N = 0;
    long long cardF = 0, cardH = 0;      // |ℱ| (sum 2π), |ℋ| (sum π)
    long long F = 0, H = 0, hbar = 0;    // incidence mass per census class
    long long Delta = 0;                 // F+H+hbar − 3|ℱ| − 2|ℋ| − 4
};

// Census over angle sums; verifies F + H + hbar = N·q and throws on mismatch.
CountingSummary counting_summary(const std::vector<VertexIncidence>& inc, int q, int N);

bool check_ratio_identity(const CountingSummary& s);

struct LinearIdentity {
    bool holds = false;
    long long lhs = 0;
};
LinearIdentity check_linear_identity(const CountingSummary& s);

// Minimum of the linear identity's left side over all censuses for a q-gon.
long long six_gon_obstruction(int q);  // q >= 6; returns 2q

struct VDecomposition {
    enum class Total { Half, Pi, TwoPi, None } total = Total::None;
    // In generic mode with a ≠ b the achievable total pins α to this rational
    // multiple of π.
    std::optional<Rational> forcedAlpha;
};

// Can a·α + b·β + c·(π/2) equal π/2, π or 2π?
VDecomposition v_decomposition_classify(long long a, long long b, long long c,
                                        const AngleMode& mode);

// Clockwise-from-+x comparator used for wedge patterns (exposed for reuse).
bool clockwise_from_x_less(const Vec& u, const Vec& v);

}  // namespace dissect

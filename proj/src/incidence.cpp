#include "dissect/incidence.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace dissect {

namespace {

bool is_plus_x(const Vec& u) { return u.dy.is_zero() && qn_sign(u.dx) == Sign::Positive; }

// 0 for the open upper half plane plus the +x axis, 1 for the rest.
int half_index(const Vec& u) {
    Sign sy = qn_sign(u.dy);
    if (sy == Sign::Positive) return 0;
    if (sy == Sign::Zero) return qn_sign(u.dx) == Sign::Positive ? 0 : 1;
    return 1;
}

// Strict order by counterclockwise angle from the +x axis in [0, 2π).
bool ccw_from_x_less(const Vec& u, const Vec& v) {
    int hu = half_index(u), hv = half_index(v);
    if (hu != hv) return hu < hv;
    return qn_sign(cross(u, v)) == Sign::Positive;
}

}  // namespace

bool clockwise_from_x_less(const Vec& u, const Vec& v) {
    if (is_plus_x(u)) return !is_plus_x(v);
    if (is_plus_x(v)) return false;
    return ccw_from_x_less(v, u);
}

std::vector<VertexIncidence> collect_vertex_wedges(const Tiling& t) {
    const int n = t.size();
    std::vector<std::vector<Point>> polys;
    polys.reserve(n);
    for (int j = 0; j < n; ++j) polys.push_back(t.tile_polygon(j));

    const std::vector<Point>& proto = t.prototile.boundary();
    const std::vector<ExactAngle>& protoAngles = t.prototile.corner_angles();
    std::vector<std::vector<Point>> vertexImages;  // per tile, image of proto[i]
    vertexImages.reserve(n);
    for (int j = 0; j < n; ++j) {
        std::vector<Point> img;
        img.reserve(proto.size());
        for (const Point& p : proto) img.push_back(t.image(j, p));
        vertexImages.push_back(std::move(img));
    }

    std::map<Point, std::vector<std::pair<int, int>>, PointLess> at;  // w -> (tile, poly index)
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < static_cast<int>(polys[j].size()); ++k)
            at[polys[j][k]].push_back({j, k});

    struct Wedge {
        int tile;
        ExactAngle angle;
        Vec rayCw, rayCcw;
    };

    const std::vector<Point> regionCorners = t.region.corners();
    std::vector<VertexIncidence> out;
    out.reserve(at.size());
    for (const auto& [w, uses] : at) {
        std::vector<Wedge> wedges;
        wedges.reserve(uses.size());
        for (const auto& [j, k] : uses) {
            const std::vector<Point>& poly = polys[j];
            const int m = static_cast<int>(poly.size());
            // CCW polygon: the interior wedge sweeps counterclockwise from the
            // ray toward the next vertex to the ray toward the previous one.
            Vec toNext = poly[(k + 1) % m] - w;
            Vec toPrev = poly[(k + m - 1) % m] - w;
            ExactAngle ang = ExactAngle::zero();
            bool found = false;
            for (std::size_t i = 0; i < vertexImages[j].size(); ++i) {
                if (vertexImages[j][i] == w) {
                    ang = protoAngles[i];
                    found = true;
                    break;
                }
            }
            if (!found) throw std::logic_error("tile vertex without a matching corner");
            wedges.push_back({j, ang, toNext, toPrev});
        }
        // A clockwise sweep anchored at the +x axis enters each wedge through
        // its counterclockwise boundary ray; those rays are pairwise distinct.
        std::sort(wedges.begin(), wedges.end(), [](const Wedge& a, const Wedge& b) {
            return clockwise_from_x_less(a.rayCcw, b.rayCcw);
        });

        VertexIncidence rec;
        rec.w = w;
        rec.sum = ExactAngle::zero();
        for (const Wedge& wd : wedges) {
            rec.incidentTiles.push_back(wd.tile);
            rec.angles.push_back(wd.angle);
            rec.rayCw.push_back(wd.rayCw);
            rec.rayCcw.push_back(wd.rayCcw);
            rec.sum = rec.sum + wd.angle;
        }

        Containment c = t.region.contains(w);
        if (c == Containment::Inside) {
            rec.cls = VertexClass::Interior;
        } else if (std::find(regionCorners.begin(), regionCorners.end(), w) !=
                   regionCorners.end()) {
            rec.cls = VertexClass::Corner;
        } else {
            rec.cls = VertexClass::Boundary;
        }

        for (int j = 0; j < n && !rec.hanging; ++j) {
            if (std::find(rec.incidentTiles.begin(), rec.incidentTiles.end(), j) !=
                rec.incidentTiles.end())
                continue;
            const std::vector<Point>& poly = polys[j];
            const int m = static_cast<int>(poly.size());
            for (int k = 0; k < m; ++k) {
                const Point& a = poly[k];
                const Point& b = poly[(k + 1) % m];
                if (w == a || w == b) continue;
                if (point_on_segment(w, {a, b})) {
                    rec.hanging = true;
                    break;
                }
            }
        }

        if (angle_eq(rec.sum, ExactAngle::right(), t.angleMode))
            rec.sumClass = AngleSum::Half;
        else if (angle_eq(rec.sum, ExactAngle::pi(), t.angleMode))
            rec.sumClass = AngleSum::Pi;
        else if (angle_eq(rec.sum, ExactAngle::two_pi(), t.angleMode))
            rec.sumClass = AngleSum::TwoPi;
        else
            rec.sumClass = AngleSum::Other;
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<VertexIncidence> build_incidence(const Tiling& t) {
    std::vector<VertexIncidence> out = collect_vertex_wedges(t);
    for (const VertexIncidence& rec : out)
        if (rec.sumClass == AngleSum::Other)
            throw std::runtime_error("angle sum at " + rec.w.str() +
                                     " is none of pi/2, pi, 2*pi");
    return out;
}

CountingSummary counting_summary(const std::vector<VertexIncidence>& inc, int q, int N) {
    CountingSummary s;
    s.q = q;
    s.N = N;
    for (const VertexIncidence& v : inc) {
        const long long mass = static_cast<long long>(v.incidentTiles.size());
        // The census buckets go by angle sum, so a T-junction whose position is
        // interior but whose tiles only fill a straight angle lands in the
        // π bucket; that keeps the total mass at N·q.
        switch (v.sumClass) {
            case AngleSum::TwoPi:
                s.cardF += 1;
                s.F += mass;
                break;
            case AngleSum::Pi:
                s.cardH += 1;
                s.H += mass;
                break;
            case AngleSum::Half:
                s.hbar += mass;
                break;
            case AngleSum::Other:
                throw std::runtime_error("census mismatch: irregular angle sum at " +
                                         v.w.str());
        }
    }
    if (s.F + s.H + s.hbar != static_cast<long long>(N) * q)
        throw std::runtime_error("census mismatch: F+H+hbar != N*q");
    s.Delta = s.F + s.H + s.hbar - 3 * s.cardF - 2 * s.cardH - 4;
    return s;
}

bool check_ratio_identity(const CountingSummary& s) {
    const long long mass = s.F + s.H + s.hbar;
    return (2 * s.cardF + s.cardH + 2) * s.q == static_cast<long long>(s.q - 2) * mass;
}

LinearIdentity check_linear_identity(const CountingSummary& s) {
    LinearIdentity r;
    r.lhs = (s.q - 6) * s.cardF + (s.q - 4) * s.cardH + (s.q - 2) * s.Delta + 2LL * s.q;
    r.holds = (r.lhs == 8);
    return r;
}

long long six_gon_obstruction(int q) {
    if (q < 6) throw std::invalid_argument("six_gon_obstruction needs q >= 6");
    return 2LL * q;
}

VDecomposition v_decomposition_classify(long long a, long long b, long long c,
                                        const AngleMode& mode) {
    if (a < 0 || b < 0 || c < 0) throw std::invalid_argument("counts must be >= 0");
    using Total = VDecomposition::Total;
    const Rational targets[3] = {Rational(1, 2), Rational(1), Rational(2)};
    const Total names[3] = {Total::Half, Total::Pi, Total::TwoPi};
    VDecomposition out;

    if (mode.kind == AngleMode::Kind::BoundAlpha) {
        const Rational alpha(mode.p, mode.q);  // in units of π
        const Rational value =
            Rational(a) * alpha + Rational(b) * (Rational(1) - alpha) + Rational(c, 2);
        for (int i = 2; i >= 0; --i)
            if (value == targets[i]) {
                out.total = names[i];
                break;
            }
        return out;
    }

    if (a == b) {
        const Rational value = Rational(a) + Rational(c, 2);
        for (int i = 2; i >= 0; --i)
            if (value == targets[i]) {
                out.total = names[i];
                break;
            }
        return out;
    }

    // a·α + b·(π−α) + c·π/2 = t·π pins α/π = (t − b − c/2)/(a − b); a wedge
    // angle needs 0 < α < π/2.  Largest achievable target wins.
    for (int i = 2; i >= 0; --i) {
        const Rational r = (targets[i] - Rational(b) - Rational(c, 2)) / Rational(a - b);
        if (Rational(0) < r && r < Rational(1, 2)) {
            out.total = names[i];
            out.forcedAlpha = r;
            break;
        }
    }
    return out;
}

}  // namespace dissect

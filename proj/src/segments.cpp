#include "dissect/segments.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace dissect {

namespace {

Vec rot12(const Vec& v, int k) {
    return apply_linear(Isometry{k}, v, RotationGroup::of_order(12));
}

void require_pi3_trapezoid(const Prototile& p, const char* who) {
    if (p.kind() != Prototile::Kind::RightTrapezoid ||
        !(p.cosA() == QuadraticNumber(Rational(1, 2))))
        throw std::invalid_argument(std::string(who) +
                                    ": needs the 60-degree right trapezoid prototile");
}

}  // namespace

std::vector<MaximalSegment> extract_maximal_segments(const Tiling& t) {
    const auto vs = extract_vertices_and_sides(t);

    std::map<LineKey, std::vector<int>> byLine;
    for (int i = 0; i < static_cast<int>(vs.sides.size()); ++i) {
        const Segment& s = vs.sides[i].seg;
        byLine[canonical_line(s.a, s.b - s.a)].push_back(i);
    }

    std::vector<MaximalSegment> out;
    for (const auto& [line, members] : byLine) {
        // Shared unit direction, canonicalized so it ascends in (y, x). All
        // member sides are parallel, so the first one fixes the line's frame.
        const PlacedSide& pilot = vs.sides[members[0]];
        Vec dir = pilot.seg.b - pilot.seg.a;
        if (qn_sign(dir.dy) == Sign::Negative ||
            (qn_sign(dir.dy) == Sign::Zero && qn_sign(dir.dx) == Sign::Negative))
            dir = -dir;
        const QuadraticNumber pilotLen = t.prototile.side_length(pilot.sideIndex);
        dir = {dir.dx / pilotLen, dir.dy / pilotLen};

        struct Entry {
            int side;
            QuadraticNumber lo, hi;
            Point from, to;
        };
        const Point origin = pilot.seg.a;
        std::vector<Entry> entries;
        entries.reserve(members.size());
        for (int i : members) {
            const PlacedSide& s = vs.sides[i];
            QuadraticNumber pa = dot(dir, s.seg.a - origin);
            QuadraticNumber pb = dot(dir, s.seg.b - origin);
            if (pb < pa)
                entries.push_back({i, std::move(pb), std::move(pa), s.seg.b, s.seg.a});
            else
                entries.push_back({i, std::move(pa), std::move(pb), s.seg.a, s.seg.b});
        }
        std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
            if (x.lo < y.lo) return true;
            if (y.lo < x.lo) return false;
            return x.hi < y.hi;
        });

        // Touching or overlapping parameter intervals belong to one run.
        size_t i = 0;
        while (i < entries.size()) {
            size_t j = i;
            QuadraticNumber hi = entries[i].hi;
            Point vpt = entries[i].to;
            while (j + 1 < entries.size() && !(hi < entries[j + 1].lo)) {
                ++j;
                if (hi < entries[j].hi) {
                    hi = entries[j].hi;
                    vpt = entries[j].to;
                }
            }
            MaximalSegment seg;
            seg.u = entries[i].from;
            seg.v = vpt;
            seg.dir = dir;
            seg.len = hi - entries[i].lo;
            for (size_t k = i; k <= j; ++k) {
                const PlacedSide& s = vs.sides[entries[k].side];
                RunSide rs{s.tile, s.sideIndex, s.tag, t.prototile.side_length(s.sideIndex),
                           entries[k].from, entries[k].to};
                const Point c = polygon_centroid_vertexmean(t.tile_polygon(s.tile));
                const Sign where = qn_sign(cross(dir, c - seg.u));
                if (where == Sign::Positive)
                    seg.upper.push_back(std::move(rs));
                else if (where == Sign::Negative)
                    seg.lower.push_back(std::move(rs));
                else
                    throw std::logic_error("tile centroid on its own side line");
            }
            seg.onBoundary = seg.upper.empty() || seg.lower.empty();
            out.push_back(std::move(seg));
            i = j + 1;
        }
    }
    std::sort(out.begin(), out.end(), [](const MaximalSegment& a, const MaximalSegment& b) {
        if (a.u != b.u) return point_less(a.u, b.u);
        return point_less(a.v, b.v);
    });
    return out;
}

namespace {

void bump(SideRelation& r, const RunSide& s, long long w) {
    switch (s.tag) {
        case SideTag::X: r.a += w; break;
        case SideTag::XP1: r.b += w; break;
        case SideTag::Leg: r.c += w; break;
        case SideTag::Two: r.d += w; break;
        default: throw std::logic_error("unexpected side tag on a trapezoid tiling");
    }
}

}  // namespace

std::vector<SideRelation> boundary_identified_relations(const Tiling& t) {
    require_pi3_trapezoid(t.prototile, "boundary_identified_relations");

    std::vector<SideRelation> out;
    SideRelation horiz, vert;
    const QuadraticNumber zero;
    for (const auto& seg : extract_maximal_segments(t)) {
        if (!seg.onBoundary) {
            SideRelation r;
            for (const auto& s : seg.upper) bump(r, s, +1);
            for (const auto& s : seg.lower) bump(r, s, -1);
            out.push_back(r);
            continue;
        }
        // Boundary runs pair up across the region by translation; only the
        // inward-facing list is tiled.
        if (seg.dir.dy.is_zero()) {
            const bool bottom = seg.u.y == zero;
            if (!bottom && !(seg.u.y == t.region.height))
                throw std::invalid_argument(
                    "boundary_identified_relations: boundary segment off the region frame");
            for (const auto& s : (bottom ? seg.upper : seg.lower)) bump(horiz, s, bottom ? +1 : -1);
        } else if (seg.dir.dx.is_zero()) {
            const bool left = seg.u.x == zero;
            if (!left && !(seg.u.x == t.region.width))
                throw std::invalid_argument(
                    "boundary_identified_relations: boundary segment off the region frame");
            for (const auto& s : (left ? seg.lower : seg.upper)) bump(vert, s, left ? +1 : -1);
        } else {
            throw std::invalid_argument(
                "boundary_identified_relations: boundary segment off the region frame");
        }
    }
    out.push_back(horiz);
    out.push_back(vert);
    return out;
}

SolveOutcome solve_x(const std::vector<SideRelation>& relations) {
    SolveOutcome res;
    res.kind = SolveOutcome::Kind::AllDegenerate;
    for (int i = 0; i < static_cast<int>(relations.size()); ++i) {
        const SideRelation& rel = relations[i];
        if (rel.degenerate()) {
            // With a + b == 0 the length identity has no x left in it.
            if (rel.c == 0 && rel.b + 2 * rel.d == 0) continue;
            res.kind = SolveOutcome::Kind::Inconsistent;
            res.second = i;
            res.detail = "degenerate relation reduces to a nonzero constant";
            return res;
        }
        const Rational denom(rel.a + rel.b);
        const Rational r = -Rational(rel.b + 2 * rel.d) / denom;
        const Rational s = -Rational(rel.c) / denom;
        if (res.kind != SolveOutcome::Kind::Solved) {
            res.kind = SolveOutcome::Kind::Solved;
            res.r = r;
            res.s = s;
            res.first = i;
        } else if (!(r == res.r) || !(s == res.s)) {
            res.kind = SolveOutcome::Kind::Inconsistent;
            res.r2 = r;
            res.s2 = s;
            res.second = i;
            res.detail = "two relations pin different leg parameters";
            return res;
        }
    }
    res.detail = res.kind == SolveOutcome::Kind::Solved ? "all relations agree"
                                                        : "every relation is degenerate";
    return res;
}

AreaCheck area_constraint_check(const Tiling& t) {
    require_pi3_trapezoid(t.prototile, "area_constraint_check");
    if (!t.region.is_square())
        throw std::invalid_argument("area_constraint_check: region is not square");
    const QuadraticNumber l = t.region.width;
    if (l.d() != 0 && l.d() != 3)
        throw std::invalid_argument("area_constraint_check: region side outside the tile field");
    const QuadraticNumber n{Rational(static_cast<long long>(t.tiles.size()))};
    if (!(l * l == n * t.prototile.area()))
        throw std::invalid_argument(
            "area_constraint_check: invalid tiling parameters, region area differs from tile "
            "count times tile area");
    return {t.prototile.x().rad().sign() > 0, l.rat(), l.rad()};
}

std::optional<Pure2Witness> pure2_check(const QuadraticNumber& x, long long bound) {
    if (x.d() != 0 && x.d() != 3)
        throw std::invalid_argument("pure2_check: leg parameter outside the tile field");
    if (bound < 0) throw std::invalid_argument("pure2_check: negative bound");
    const Rational r = x.rat();
    const Rational s = x.rad();
    for (long long a = 0; a <= bound; ++a)
        for (long long b = 0; b <= bound; ++b) {
            // a·x + b·(x+1) + c·√3: the radical part (a+b)s + c admits at most
            // one integer c, so the inner loop collapses.
            const Rational cNeed = -(Rational(a + b) * s);
            if (!cNeed.is_integer()) continue;
            if (cNeed < Rational(0) || Rational(bound) < cNeed) continue;
            const Rational val = Rational(a + b) * r + Rational(b);
            if (!val.is_integer() || val.sign() <= 0) continue;
            if (val.num() % 2 != 0) continue;
            return Pure2Witness{a, b, cNeed.num().convert_to<long long>(),
                                val.num().convert_to<long long>()};
        }
    return std::nullopt;
}

std::vector<Point> find_3beta_vertices(const std::vector<VertexIncidence>& inc) {
    std::vector<Point> out;
    const ExactAngle obtuse = ExactAngle::beta();
    for (const auto& v : inc) {
        if (v.cls != VertexClass::Interior || v.angles.size() != 3) continue;
        bool all = true;
        for (const auto& a : v.angles)
            if (!(a == obtuse)) {
                all = false;
                break;
            }
        if (all) out.push_back(v.w);
    }
    return out;
}

namespace {

std::vector<RunSide> reverse_run(const std::vector<RunSide>& sides) {
    std::vector<RunSide> out(sides.rbegin(), sides.rend());
    for (auto& s : out) std::swap(s.from, s.to);
    return out;
}

}  // namespace

std::vector<HalfMaximalSegment> half_maximal_segments(const Tiling& t) {
    const auto maximal = extract_maximal_segments(t);
    std::vector<HalfMaximalSegment> out;
    for (int mi = 0; mi < static_cast<int>(maximal.size()); ++mi) {
        const MaximalSegment& M = maximal[mi];
        for (int o = 0; o < 2; ++o) {
            const bool rev = o == 1;
            const Vec dir = rev ? -M.dir : M.dir;
            const Point U = rev ? M.v : M.u;
            const Point V = rev ? M.u : M.v;
            // Reversing the walk swaps left and right.
            const std::vector<RunSide> up = rev ? reverse_run(M.lower) : M.upper;
            const std::vector<RunSide> lo = rev ? reverse_run(M.upper) : M.lower;

            const auto param = [&](const Point& p) { return dot(dir, p - U); };
            std::map<QuadraticNumber, Point> anchors;
            anchors.emplace(QuadraticNumber{}, U);
            for (const auto* list : {&up, &lo})
                for (const auto& s : *list) {
                    anchors.emplace(param(s.from), s.from);
                    anchors.emplace(param(s.to), s.to);
                }
            const QuadraticNumber end = param(V);
            for (const auto& [w, p] : anchors) {
                if (!(w < end)) continue;
                bool straddled = false;
                for (const auto* list : {&up, &lo}) {
                    for (const auto& s : *list)
                        if (param(s.from) < w && w < param(s.to)) {
                            straddled = true;
                            break;
                        }
                    if (straddled) break;
                }
                if (straddled) continue;
                HalfMaximalSegment h;
                h.u = p;
                h.v = V;
                h.dir = dir;
                h.parent = mi;
                h.reversed = rev;
                for (const auto& s : up)
                    if (!(param(s.from) < w)) h.upper.push_back(s);
                for (const auto& s : lo)
                    if (!(param(s.from) < w)) h.lower.push_back(s);
                out.push_back(std::move(h));
            }
        }
    }
    return out;
}

namespace {

HeadAngle corner_angle_at(const Tiling& t, int tile, const Point& p, const char* who) {
    const auto imgs = t.tile_vertex_images(tile);
    const auto angs = t.prototile.corner_angles();
    for (size_t k = 0; k < imgs.size(); ++k) {
        if (imgs[k] == p) {
            if (angs[k] == ExactAngle::alpha()) return HeadAngle::Acute;
            if (angs[k] == ExactAngle::beta()) return HeadAngle::Obtuse;
            throw std::logic_error(std::string(who) + ": hypotenuse end carries a right angle");
        }
    }
    throw std::logic_error(std::string(who) + ": tile has no corner at the anchor");
}

}  // namespace

std::vector<SpecialSegment> scan_special_segments(const Tiling& t) {
    require_pi3_trapezoid(t.prototile, "scan_special_segments");
    std::vector<SpecialSegment> out;
    for (auto& h : half_maximal_segments(t)) {
        // The head needs tiles against both sides right at the anchor.
        if (h.upper.empty() || h.lower.empty()) continue;
        if (h.upper.front().from != h.u || h.lower.front().from != h.u) continue;
        const bool upTwo = h.upper.front().tag == SideTag::Two;
        const bool loTwo = h.lower.front().tag == SideTag::Two;
        if (upTwo == loTwo) continue;
        const RunSide& lead = upTwo ? h.upper.front() : h.lower.front();
        HeadInformation head;
        head.u = h.u;
        head.dir = h.dir;
        head.delta = upTwo ? SegmentSide::Upper : SegmentSide::Lower;
        head.theta = corner_angle_at(t, lead.tile, h.u, "scan_special_segments");
        out.push_back({std::move(h), head});
    }
    return out;
}

bool prec(const Point& u, const Point& v, const Vec& x) {
    if (x.is_zero()) throw std::invalid_argument("prec: zero direction");
    const Vec w = v - u;
    const Vec x2 = rot12(x, -4);                // x rotated by −120°
    const QuadraticNumber det = cross(x, x2);   // −(√3/2)·|x|², never zero
    const Sign ds = qn_sign(det);
    const Sign as = qn_sign(cross(w, x2));      // a·det
    const Sign bs = qn_sign(cross(x, w));       // b·det
    if (as == Sign::Zero && bs == Sign::Zero) return false;
    const auto ok = [&](Sign s) { return s == Sign::Zero || s == ds; };
    return ok(as) && ok(bs);
}

}  // namespace dissect

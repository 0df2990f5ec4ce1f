#include "dissect/segments.hpp"

#include <algorithm>
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

HeadAngle corner_angle_at(const Tiling& t, int tile, const Point& p) {
    const auto imgs = t.tile_vertex_images(tile);
    const auto angs = t.prototile.corner_angles();
    for (size_t k = 0; k < imgs.size(); ++k) {
        if (imgs[k] == p) {
            if (angs[k] == ExactAngle::alpha()) return HeadAngle::Acute;
            if (angs[k] == ExactAngle::beta()) return HeadAngle::Obtuse;
            throw std::logic_error("chain_step: junction tile meets the run with a right angle");
        }
    }
    throw std::logic_error("chain_step: tile has no corner at the junction");
}

// Unit ray of the one tile side at `at` that leaves the run line; requires
// the other side at `at` to lie on the line.
std::optional<Vec> off_run_ray(const Tiling& t, int tile, const Point& at, const Vec& runDir) {
    const auto imgs = t.tile_vertex_images(tile);
    const int n = static_cast<int>(imgs.size());
    for (int k = 0; k < n; ++k) {
        if (!(imgs[k] == at)) continue;
        const int prv = (k + n - 1) % n;
        const Vec rayNext = imgs[(k + 1) % n] - at;
        const Vec rayPrev = imgs[prv] - at;
        const bool colNext = qn_sign(cross(runDir, rayNext)) == Sign::Zero;
        const bool colPrev = qn_sign(cross(runDir, rayPrev)) == Sign::Zero;
        if (colNext == colPrev) return std::nullopt;
        const Vec& ray = colNext ? rayPrev : rayNext;
        const QuadraticNumber len = t.prototile.side_length(colNext ? prv : k);
        return Vec{ray.dx / len, ray.dy / len};
    }
    return std::nullopt;
}

const SpecialSegment* find_special(const std::vector<SpecialSegment>& specials, const Point& at,
                                   const Vec& dir) {
    for (const auto& sp : specials)
        if (sp.head.u == at && sp.head.dir == dir) return &sp;
    return nullptr;
}

void add_witness(std::vector<int>& w, int tile) {
    if (std::find(w.begin(), w.end(), tile) == w.end()) w.push_back(tile);
}

ChainStep terminated(Point at, std::string detail, std::vector<int> witnesses = {}) {
    ChainStep s;
    s.kind = ChainStep::Kind::Terminated;
    s.at = std::move(at);
    s.detail = std::move(detail);
    s.witnessTiles = std::move(witnesses);
    return s;
}

ChainStep contradiction(Point at, std::string detail, std::vector<int> witnesses) {
    ChainStep s;
    s.kind = ChainStep::Kind::Contradiction;
    s.at = std::move(at);
    s.detail = std::move(detail);
    s.witnessTiles = std::move(witnesses);
    return s;
}

ChainStep advanced(HeadInformation next, Point at, std::vector<int> witnesses) {
    ChainStep s;
    s.kind = ChainStep::Kind::Advanced;
    s.next = std::move(next);
    s.at = std::move(at);
    s.witnessTiles = std::move(witnesses);
    return s;
}

// Contiguous prefix of sides with the given exact length, starting at `from`.
int leading_run(const std::vector<RunSide>& seq, const Point& from, const QuadraticNumber& len) {
    int n = 0;
    Point at = from;
    while (n < static_cast<int>(seq.size()) && seq[n].from == at && seq[n].length == len) {
        at = seq[n].to;
        ++n;
    }
    return n;
}

}  // namespace

Vec head_forward_reference(const HeadInformation& head) {
    return head.delta == SegmentSide::Upper ? rot12(head.dir, 4) : head.dir;
}

ChainStep chain_step(const Tiling& t, const HeadInformation& head) {
    require_pi3_trapezoid(t.prototile, "chain_step");
    const auto specials = scan_special_segments(t);
    const SpecialSegment* self = nullptr;
    for (const auto& sp : specials)
        if (sp.head == head) {
            self = &sp;
            break;
        }
    if (!self) throw std::invalid_argument("chain_step: head is not a scanned special segment");

    const bool headUpper = head.delta == SegmentSide::Upper;
    const std::vector<RunSide>& near = headUpper ? self->seg.upper : self->seg.lower;
    const QuadraticNumber two{2};

    // walk the contiguous hypotenuse prefix to the first junction
    int n2 = 1;
    while (n2 < static_cast<int>(near.size()) && near[n2].tag == SideTag::Two &&
           near[n2].from == near[n2 - 1].to)
        ++n2;
    const RunSide& prev = near[n2 - 1];
    const Point u1 = prev.to;

    const HeadAngle prevAng = corner_angle_at(t, prev.tile, u1);

    if (head.theta == HeadAngle::Acute) {
        // An acute head continues only when the last hypotenuse leaves its
        // obtuse corner at the junction and the next tile leads acute.
        if (prevAng != HeadAngle::Obtuse)
            return terminated(u1, "acute head: junction misses the obtuse corner", {prev.tile});
        if (n2 >= static_cast<int>(near.size()))
            return terminated(u1, "run sequence ends at the junction", {prev.tile});
        const RunSide& nxt = near[n2];
        if (nxt.from != u1)
            return terminated(u1, "run sequence skips the junction", {prev.tile});
        if (corner_angle_at(t, nxt.tile, u1) != HeadAngle::Acute)
            return terminated(u1, "acute head: next run tile leads with the wrong angle",
                              {prev.tile, nxt.tile});
        const auto tr = off_run_ray(t, prev.tile, u1, head.dir);
        if (!tr) return terminated(u1, "junction tile lies flat on the run", {prev.tile});
        const SpecialSegment* suc = find_special(specials, u1, *tr);
        if (!suc)
            return terminated(u1, "no special segment continues at the junction",
                              {prev.tile, nxt.tile});
        if (suc->head.theta != HeadAngle::Acute)
            return terminated(u1, "successor head carries the obtuse angle", {prev.tile, nxt.tile});
        return advanced(suc->head, u1, {prev.tile, nxt.tile});
    }

    // obtuse head
    if (prevAng == HeadAngle::Obtuse) {
        std::vector<int> w{prev.tile};
        if (n2 < static_cast<int>(near.size())) add_witness(w, near[n2].tile);
        return contradiction(u1, "obtuse hypotenuse corner meets the run at the junction",
                             std::move(w));
    }
    if (n2 >= static_cast<int>(near.size()))
        return terminated(u1, "run sequence ends at the junction", {prev.tile});
    const RunSide& nxt = near[n2];
    if (nxt.from != u1) return terminated(u1, "run sequence skips the junction", {prev.tile});
    if (nxt.tag == SideTag::Leg)
        return terminated(u1, "vertical side meets the run at the junction",
                          {prev.tile, nxt.tile});

    const auto tr = off_run_ray(t, prev.tile, u1, head.dir);
    if (!tr) return terminated(u1, "junction tile lies flat on the run", {prev.tile});

    if (nxt.tag == SideTag::X) {
        if (corner_angle_at(t, nxt.tile, u1) != HeadAngle::Obtuse)
            return terminated(u1, "short side tile leads with the wrong angle",
                              {prev.tile, nxt.tile});
        const SpecialSegment* suc = find_special(specials, u1, *tr);
        if (!suc)
            return terminated(u1, "no special segment continues at the junction",
                              {prev.tile, nxt.tile});
        if (suc->head.theta != HeadAngle::Obtuse)
            return terminated(u1, "successor head carries the acute angle", {prev.tile, nxt.tile});
        return advanced(suc->head, u1, {prev.tile, nxt.tile});
    }

    // long side ahead: the run turns across the junction ray
    if (corner_angle_at(t, nxt.tile, u1) != HeadAngle::Acute)
        return terminated(u1, "long side tile leads with the wrong angle", {prev.tile, nxt.tile});

    const HalfMaximalSegment* turned = nullptr;
    const auto halves = half_maximal_segments(t);
    for (const auto& h : halves)
        if (h.u == u1 && h.dir == *tr) {
            turned = &h;
            break;
        }
    if (!turned) return terminated(u1, "no cross run at the junction", {prev.tile, nxt.tile});

    // the side of the cross run holding the junction tile
    const Point pc = polygon_centroid_vertexmean(t.tile_polygon(prev.tile));
    const Sign pside = qn_sign(cross(*tr, pc - u1));
    if (pside == Sign::Zero)
        return terminated(u1, "junction tile centered on the cross run", {prev.tile});
    const std::vector<RunSide>& cSeq = pside == Sign::Positive ? turned->upper : turned->lower;
    const std::vector<RunSide>& dSeq = pside == Sign::Positive ? turned->lower : turned->upper;

    if (dSeq.empty() || dSeq.front().from != u1 || !(dSeq.front().length == two))
        return terminated(u1, "cross run misses the leading hypotenuse", {prev.tile, nxt.tile});
    if (cSeq.empty() || cSeq.front().from != u1)
        return terminated(u1, "cross run untiled against the junction tile",
                          {prev.tile, nxt.tile});
    if (!(cSeq.front().length == two)) {
        std::vector<int> w;
        add_witness(w, prev.tile);
        add_witness(w, cSeq.front().tile);
        return contradiction(u1, "long side blocks the cross run at the junction", std::move(w));
    }

    // paired even prefix on both sides of the cross run
    const int p = std::min(leading_run(cSeq, u1, two), leading_run(dSeq, u1, two));
    if (cSeq[p - 1].to != dSeq[p - 1].to)
        return terminated(u1, "cross run sides desynchronized", {prev.tile, nxt.tile});
    const Point u2 = cSeq[p - 1].to;

    if (!(u2 == turned->v)) {
        std::vector<int> w;
        add_witness(w, cSeq[p - 1].tile);
        add_witness(w, dSeq[p - 1].tile);
        if (p < static_cast<int>(cSeq.size())) add_witness(w, cSeq[p].tile);
        if (p < static_cast<int>(dSeq.size())) add_witness(w, dSeq[p].tile);
        return contradiction(u2, "paired hypotenuse run interrupted", std::move(w));
    }

    // the cross run ends exactly where the paired prefix does: expect the
    // triple obtuse junction and pick the successor leaving it
    const auto wedges = collect_vertex_wedges(t);
    const VertexIncidence* wv = nullptr;
    for (const auto& v : wedges)
        if (v.w == u2) {
            wv = &v;
            break;
        }
    bool triple = wv != nullptr && wv->angles.size() == 3;
    if (triple)
        for (const auto& a : wv->angles)
            if (!(a == ExactAngle::beta())) {
                triple = false;
                break;
            }
    if (!triple)
        return terminated(u2, "cross run ends off a triple obtuse junction",
                          {prev.tile, nxt.tile});

    const Vec candDirs[2] = {rot12(head.dir, headUpper ? -4 : 4), head.dir};
    for (const Vec& cd : candDirs) {
        const SpecialSegment* suc = find_special(specials, u2, cd);
        if (suc && suc->head.theta == HeadAngle::Obtuse) {
            std::vector<int> w;
            add_witness(w, prev.tile);
            add_witness(w, nxt.tile);
            add_witness(w, cSeq.front().tile);
            add_witness(w, dSeq.front().tile);
            return advanced(suc->head, u2, std::move(w));
        }
    }
    return terminated(u2, "no successor special at the cross run end", {prev.tile, nxt.tile});
}

namespace {

// A wedge ray at the seed shared by two hypotenuses separates the two seed
// shapes the report distinguishes.
bool seed_mixed(const Tiling& t, const VertexIncidence& v) {
    std::vector<std::pair<Vec, SideTag>> rays;
    const auto tags = t.prototile.side_tags();
    for (int tile : v.incidentTiles) {
        const auto imgs = t.tile_vertex_images(tile);
        const int n = static_cast<int>(imgs.size());
        for (int k = 0; k < n; ++k) {
            if (!(imgs[k] == v.w)) continue;
            rays.emplace_back(imgs[(k + 1) % n] - v.w, tags[k]);
            rays.emplace_back(imgs[(k + n - 1) % n] - v.w, tags[(k + n - 1) % n]);
            break;
        }
    }
    for (size_t i = 0; i < rays.size(); ++i)
        for (size_t j = i + 1; j < rays.size(); ++j)
            if (rays[i].second == SideTag::Two && rays[j].second == SideTag::Two &&
                qn_sign(cross(rays[i].first, rays[j].first)) == Sign::Zero &&
                qn_sign(dot(rays[i].first, rays[j].first)) == Sign::Positive)
                return true;
    return false;
}

constexpr int kMaxChainLength = 64;  // guards cyclic synthetic inputs

}  // namespace

ObstructionReport odd_n_obstruction_report(const Tiling& t) {
    ObstructionReport rep;
    if (t.prototile.kind() != Prototile::Kind::RightTrapezoid ||
        !(t.prototile.cosA() == QuadraticNumber(Rational(1, 2)))) {
        rep.reason = "prototile is not the 60-degree right trapezoid";
        return rep;
    }
    const auto wedges = collect_vertex_wedges(t);
    const auto seeds = find_3beta_vertices(wedges);
    if (seeds.empty()) {
        rep.reason = "no interior triple obtuse junction";
        return rep;
    }
    rep.applicable = true;
    rep.reason = "triple obtuse junctions seed successor chains";

    const auto specials = scan_special_segments(t);
    for (const Point& seed : seeds) {
        const VertexIncidence* sv = nullptr;
        for (const auto& v : wedges)
            if (v.w == seed) {
                sv = &v;
                break;
            }
        bool any = false;
        for (const auto& sp : specials) {
            if (!(sp.head.u == seed) || sp.head.theta != HeadAngle::Obtuse) continue;
            any = true;
            ObstructionChain ch;
            ch.seed = seed;
            ch.seedMixed = sv != nullptr && seed_mixed(t, *sv);
            ch.strictlyIncreasing = true;
            HeadInformation h = sp.head;
            ch.heads.push_back(h);
            for (int it = 0; it < kMaxChainLength; ++it) {
                ChainStep st = chain_step(t, h);
                ch.last = st;
                if (st.kind != ChainStep::Kind::Advanced) break;
                const HeadInformation nxt = *st.next;
                if (!prec(h.u, nxt.u, head_forward_reference(h))) ch.strictlyIncreasing = false;
                const bool repeat =
                    std::find(ch.heads.begin(), ch.heads.end(), nxt) != ch.heads.end();
                ch.heads.push_back(nxt);
                h = nxt;
                if (repeat) {
                    ch.last.detail += "; head repeats, chain stopped";
                    break;
                }
            }
            rep.chains.push_back(std::move(ch));
        }
        if (!any) {
            ObstructionChain ch;
            ch.seed = seed;
            ch.seedMixed = sv != nullptr && seed_mixed(t, *sv);
            ch.last = ChainStep{ChainStep::Kind::Terminated, std::nullopt, seed, {},
                                "no special segment anchored at the seed"};
            rep.chains.push_back(std::move(ch));
        }
    }
    return rep;
}

}  // namespace dissect

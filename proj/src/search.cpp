#include "dissect/search.hpp"

#include "dissect/hgraph.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace dissect {
namespace {

using Poly = std::vector<Point>;

// Drops exact duplicate and collinear vertices; empty result for anything
// without positive area.
Poly tidy(Poly poly) {
    Poly q;
    for (auto& p : poly)
        if (q.empty() || !(q.back() == p)) q.push_back(p);
    while (q.size() > 1 && q.front() == q.back()) q.pop_back();
    if (q.size() < 3) return {};
    Poly r;
    const size_t n = q.size();
    for (size_t i = 0; i < n; ++i) {
        const Point& a = q[(i + n - 1) % n];
        const Point& c = q[(i + 1) % n];
        if (orient(a, q[i], c) != Sign::Zero) r.push_back(q[i]);
    }
    if (r.size() < 3) return {};
    if (qn_sign(polygon_area(r)) != Sign::Positive) return {};
    return r;
}

// Part of a convex CCW polygon on or left of the directed line A->B.
Poly clip_left(const Poly& poly, const Point& A, const Point& B) {
    if (poly.empty()) return {};
    const Vec d = B - A;
    Poly out;
    const size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        const Point& cur = poly[i];
        const Point& nxt = poly[(i + 1) % n];
        const Sign sc = qn_sign(cross(d, cur - A));
        const Sign sn = qn_sign(cross(d, nxt - A));
        if (sc != Sign::Negative) out.push_back(cur);
        if ((sc == Sign::Positive && sn == Sign::Negative) ||
            (sc == Sign::Negative && sn == Sign::Positive)) {
            const QuadraticNumber num = cross(d, cur - A);
            const QuadraticNumber den = num - cross(d, nxt - A);
            out.push_back(cur + (nxt - cur).scaled(num / den));
        }
    }
    return tidy(std::move(out));
}

Poly intersect_convex(Poly subject, const Poly& clip) {
    const size_t n = clip.size();
    for (size_t i = 0; i < n && !subject.empty(); ++i)
        subject = clip_left(subject, clip[i], clip[(i + 1) % n]);
    return subject;
}

// Appends the convex pieces of face \ tile; the pieces and face ∩ tile have
// pairwise disjoint interiors and union face.
void subtract_into(const Poly& face, const Poly& tile, std::vector<Poly>& out) {
    Poly remaining = face;
    const size_t n = tile.size();
    for (size_t i = 0; i < n && !remaining.empty(); ++i) {
        const Point& a = tile[i];
        const Point& b = tile[(i + 1) % n];
        Poly piece = clip_left(remaining, b, a);
        if (!piece.empty()) out.push_back(std::move(piece));
        remaining = clip_left(remaining, a, b);
    }
}

std::string qn_key(const QuadraticNumber& v) {
    return v.rat().str() + '#' + v.rad().str() + '#' + std::to_string(v.d());
}

std::string point_key(const Point& p) { return qn_key(p.x) + ',' + qn_key(p.y); }

// Placement-encoding-independent key: a convex tile is its vertex set.
std::string poly_key(Poly poly) {
    std::sort(poly.begin(), poly.end(), PointLess{});
    std::string k;
    for (const auto& p : poly) {
        k += point_key(p);
        k += ';';
    }
    return k;
}

// One anchored placement shape: the prototile under a fixed linear part with
// vertex `vertexIndex` pinned at the origin. Shapes duplicated by prototile
// self-maps are dropped once here; the dedup decision is translation-invariant
// so it holds at every anchor.
struct Move {
    Isometry linear;
    int vertexIndex;
    Poly shape;  // CCW, vertex at origin
};

struct Ctx {
    const SearchConfig& cfg;
    const RotationGroup& group;
    std::vector<Move> moves;
    QuadraticNumber tileArea;
};

struct Placement {
    Isometry iso;
    Poly poly;
};

std::vector<Move> anchored_moves(const SearchConfig& cfg, const RotationGroup& group,
                                 const std::vector<Isometry>& linears) {
    const Poly& proto = cfg.prototile.boundary();
    std::vector<Move> out;
    std::set<std::string> seen;
    for (const Isometry& lin : linears) {
        for (size_t k = 0; k < proto.size(); ++k) {
            const Point img = apply_isometry(lin, proto[k], group);
            const Isometry iso{lin.rot, lin.reflect, -img.x, -img.y};
            Poly shape;
            shape.reserve(proto.size());
            for (const Point& v : proto) shape.push_back(apply_isometry(iso, v, group));
            if (iso.reflect) std::reverse(shape.begin(), shape.end());
            if (!seen.insert(poly_key(shape)).second) continue;
            out.push_back(Move{lin, static_cast<int>(k), std::move(shape)});
        }
    }
    return out;
}

std::vector<Placement> placements_at(const Ctx& ctx, const Point& anchor) {
    const Poly& proto = ctx.cfg.prototile.boundary();
    std::vector<Placement> out;
    for (const Move& mv : ctx.moves) {
        Poly poly;
        poly.reserve(mv.shape.size());
        bool inside = true;
        for (const Point& v : mv.shape) {
            Point w = v + (anchor - Point{QuadraticNumber(0), QuadraticNumber(0)});
            if (ctx.cfg.region.contains(w) == Containment::Outside) {
                inside = false;
                break;
            }
            poly.push_back(std::move(w));
        }
        if (!inside) continue;  // region is convex: a vertex test is exact
        const Point img = apply_isometry(
            Isometry{mv.linear.rot, mv.linear.reflect, QuadraticNumber(0), QuadraticNumber(0)},
            proto[mv.vertexIndex], ctx.group);
        out.push_back(Placement{
            Isometry{mv.linear.rot, mv.linear.reflect, anchor.x - img.x, anchor.y - img.y},
            std::move(poly)});
    }
    return out;
}

Point least_vertex(const std::vector<Poly>& faces) {
    const Point* best = nullptr;
    for (const auto& f : faces)
        for (const auto& p : f)
            if (!best || point_less(p, *best)) best = &p;
    return *best;
}

// Faces left uncovered after the placement, or nothing when the tile does not
// sit exactly on uncovered ground.
std::optional<std::vector<Poly>> place(const Ctx& ctx, const std::vector<Poly>& faces,
                                       const Poly& tile) {
    std::vector<Poly> next;
    QuadraticNumber covered(0);
    for (const Poly& face : faces) {
        Poly inter = intersect_convex(tile, face);
        if (inter.empty()) {
            next.push_back(face);
            continue;
        }
        covered = covered + polygon_area(inter);
        subtract_into(face, tile, next);
    }
    if (!(covered == ctx.tileArea)) return std::nullopt;
    return next;
}

struct Budget {
    long long used = 0;
    long long limit = 0;
    bool hit = false;
};

Tiling assemble(const Ctx& ctx, const std::vector<PlacedTile>& placed) {
    return Tiling{ctx.cfg.prototile, ctx.cfg.region, placed, ctx.cfg.angleMode};
}

void dfs(const Ctx& ctx, const std::vector<Poly>& faces, std::vector<PlacedTile>& placed,
         Budget& budget, std::vector<Tiling>& out) {
    if (budget.used >= budget.limit) {
        budget.hit = true;
        return;
    }
    ++budget.used;
    if (faces.empty()) {
        if (static_cast<int>(placed.size()) == ctx.cfg.targetN) out.push_back(assemble(ctx, placed));
        return;
    }
    if (static_cast<int>(placed.size()) >= ctx.cfg.targetN) return;
    const Point anchor = least_vertex(faces);
    for (const Placement& pl : placements_at(ctx, anchor)) {
        auto next = place(ctx, faces, pl.poly);
        if (!next) continue;
        placed.push_back(PlacedTile{static_cast<int>(placed.size()), pl.iso});
        dfs(ctx, *next, placed, budget, out);
        placed.pop_back();
        if (budget.hit) return;
    }
}

std::vector<Isometry> linear_parts(const SearchConfig& cfg, const RotationGroup& g) {
    std::vector<Isometry> out;
    if (!cfg.rotations.empty()) {
        for (const Isometry& iso : cfg.rotations)
            out.push_back(Isometry{iso.rot, iso.reflect, QuadraticNumber(0), QuadraticNumber(0)});
        return out;
    }
    for (int r = 0; r < g.order(); ++r)
        for (bool m : {false, true})
            out.push_back(Isometry{r, m, QuadraticNumber(0), QuadraticNumber(0)});
    return out;
}

std::string tiling_key(const Tiling& t) {
    std::vector<std::string> tiles;
    tiles.reserve(t.tiles.size());
    for (int j = 0; j < t.size(); ++j) tiles.push_back(poly_key(t.tile_polygon(j)));
    std::sort(tiles.begin(), tiles.end());
    std::string k;
    for (auto& s : tiles) {
        k += s;
        k += '|';
    }
    return k;
}

}  // namespace

SearchResult enumerate(const SearchConfig& cfg, int threads) {
    if (cfg.targetN < 0) throw std::invalid_argument("enumerate: negative target count");
    if (!(QuadraticNumber(cfg.targetN) * cfg.prototile.area() == cfg.region.area()))
        throw std::invalid_argument("enumerate: region area is not targetN tile areas");

    Ctx ctx{cfg, cfg.prototile.rotation_group(), {}, cfg.prototile.area()};
    ctx.moves = anchored_moves(cfg, ctx.group, linear_parts(cfg, ctx.group));

    std::vector<Poly> rootFaces;
    {
        Poly frame = tidy(cfg.region.corners());
        if (!frame.empty()) rootFaces.push_back(std::move(frame));
    }

    SearchResult res;
    threads = std::max(1, threads);

    std::vector<Tiling> found;
    bool limitHit = false;
    long long nodes = 0;

    std::vector<std::pair<Placement, std::vector<Poly>>> rootChildren;
    bool rootExpanded = false;
    if (threads > 1 && !rootFaces.empty() && cfg.targetN > 0 && cfg.nodeLimit > 0) {
        const Point anchor = least_vertex(rootFaces);
        for (const Placement& pl : placements_at(ctx, anchor)) {
            auto next = place(ctx, rootFaces, pl.poly);
            if (next) rootChildren.emplace_back(pl, std::move(*next));
        }
        rootExpanded = true;
    }

    if (rootExpanded && rootChildren.size() > 1) {
        nodes = 1;  // the root itself
        const int k = std::min<int>(threads, static_cast<int>(rootChildren.size()));
        const long long budgetTotal = cfg.nodeLimit - 1;
        std::vector<Budget> budgets(k);
        for (int i = 0; i < k; ++i)
            budgets[i].limit = budgetTotal / k + (i < budgetTotal % k ? 1 : 0);
        std::vector<std::vector<Tiling>> perChild(rootChildren.size());
        std::vector<std::thread> pool;
        pool.reserve(k);
        for (int w = 0; w < k; ++w) {
            pool.emplace_back([&, w] {
                for (size_t c = w; c < rootChildren.size(); c += k) {
                    std::vector<PlacedTile> placed{PlacedTile{0, rootChildren[c].first.iso}};
                    dfs(ctx, rootChildren[c].second, placed, budgets[w], perChild[c]);
                    if (budgets[w].hit) break;
                }
            });
        }
        for (auto& th : pool) th.join();
        for (int w = 0; w < k; ++w) {
            nodes += budgets[w].used;
            limitHit = limitHit || budgets[w].hit;
        }
        for (auto& lst : perChild)
            for (auto& t : lst) found.push_back(std::move(t));
    } else {
        Budget budget{0, cfg.nodeLimit, false};
        std::vector<PlacedTile> placed;
        dfs(ctx, rootFaces, placed, budget, found);
        nodes = budget.used;
        limitHit = budget.hit;
    }

    res.nodesExplored = nodes;
    res.exhausted = !limitHit;
    if (cfg.dedupSymmetry) {
        std::set<std::string> keys;
        for (auto& t : found)
            if (keys.insert(canonical_form(t)).second) res.tilings.push_back(std::move(t));
    } else {
        res.tilings = std::move(found);
    }
    return res;
}

std::string canonical_form(const Tiling& t) {
    std::string best;
    bool first = true;
    for (const Isometry& sym : region_symmetries(t.region, t.group())) {
        std::string key = tiling_key(transform_tiling(t, sym));
        if (first || key < best) {
            best = std::move(key);
            first = false;
        }
    }
    return best;
}

std::vector<SweepCell> sweep(const std::vector<SweepCase>& cases, int threads) {
    std::vector<SweepCell> table;
    table.reserve(cases.size());
    for (const SweepCase& c : cases) {
        SweepCell cell;
        cell.label = c.label;
        cell.n = c.n;
        if (c.n < 0 || !(QuadraticNumber(c.n) * c.prototile.area() == c.region.area())) {
            cell.skipped = true;
            table.push_back(std::move(cell));
            continue;
        }
        SearchConfig cfg{c.prototile, c.region, c.n, {}, true, 10'000'000, c.angleMode};
        SearchResult res = enumerate(cfg, threads);
        cell.nodes = res.nodesExplored;
        cell.exhausted = res.exhausted;
        cell.tilingCount = static_cast<int>(res.tilings.size());
        for (const Tiling& t : res.tilings) {
            if (t.prototile.kind() != Prototile::Kind::RightTrapezoid) continue;
            cell.allEvenN = cell.allEvenN && t.size() % 2 == 0;
            try {
                ParityTheoremReport rep = parity_theorem_check(t);
                cell.allEvenN = cell.allEvenN && rep.nEven;
            } catch (const std::exception&) {
                cell.allEulerian = false;
            }
            cell.allPaired = cell.allPaired && pairing_conjecture_check(t);
        }
        table.push_back(std::move(cell));
    }
    return table;
}

}  // namespace dissect

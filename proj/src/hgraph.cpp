#include "dissect/hgraph.hpp"

#include <algorithm>
#include <array>
#include <future>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>

namespace dissect {

namespace {

bool parallel_same(const Vec& u, const Vec& v) {
    return qn_sign(cross(u, v)) == Sign::Zero && qn_sign(dot(u, v)) == Sign::Positive;
}
bool parallel_opposite(const Vec& u, const Vec& v) {
    return qn_sign(cross(u, v)) == Sign::Zero && qn_sign(dot(u, v)) == Sign::Negative;
}

// Deterministic loop peeling on a directed arc list: always continue with the
// lowest-index unused arc; whenever the walk revisits a node, the enclosed
// loop pops off as a cycle.  On a balanced graph this consumes every arc; a
// stuck walk marks its pending arcs dead and reports incomplete consumption.
struct ArcPeel {
    std::vector<std::vector<int>> cycles;
    bool consumedAll = true;
};

ArcPeel peel_arcs(int numNodes, const std::vector<std::pair<int, int>>& arcs) {
    enum : char { Unused, InWalk, Used, Dead };
    std::vector<std::vector<int>> outAt(numNodes);
    for (int i = 0; i < static_cast<int>(arcs.size()); ++i)
        outAt[arcs[i].first].push_back(i);
    std::vector<std::size_t> ptr(numNodes, 0);
    std::vector<char> st(arcs.size(), Unused);

    ArcPeel res;
    std::vector<int> walkNodes, walkArcs;
    std::unordered_map<int, int> pos;  // node -> index in walkNodes
    std::size_t seed = 0;
    while (true) {
        if (walkNodes.empty()) {
            while (seed < arcs.size() && st[seed] != Unused) ++seed;
            if (seed == arcs.size()) break;
            walkNodes.push_back(arcs[seed].first);
            pos[arcs[seed].first] = 0;
        }
        const int cur = walkNodes.back();
        std::size_t& p = ptr[cur];
        while (p < outAt[cur].size() && st[outAt[cur][p]] != Unused) ++p;
        if (p == outAt[cur].size()) {
            if (!walkArcs.empty()) {
                for (int a : walkArcs) st[a] = Dead;
                res.consumedAll = false;
            }
            walkNodes.clear();
            walkArcs.clear();
            pos.clear();
            continue;
        }
        const int a = outAt[cur][p];
        st[a] = InWalk;
        walkArcs.push_back(a);
        const int nxt = arcs[a].second;
        auto hit = pos.find(nxt);
        if (hit != pos.end()) {
            const int from = hit->second;
            std::vector<int> loop(walkArcs.begin() + from, walkArcs.end());
            for (int x : loop) st[x] = Used;
            res.cycles.push_back(std::move(loop));
            for (std::size_t k = from + 1; k < walkNodes.size(); ++k) pos.erase(walkNodes[k]);
            walkNodes.resize(from + 1);
            walkArcs.resize(from);
        } else {
            walkNodes.push_back(nxt);
            pos[nxt] = static_cast<int>(walkNodes.size()) - 1;
        }
    }
    return res;
}

}  // namespace

int HypotenuseGraph::vertex_index(const Point& p) const {
    auto it = std::lower_bound(V.begin(), V.end(), p, point_less);
    if (it == V.end() || !(*it == p)) return -1;
    return static_cast<int>(it - V.begin());
}

HypotenuseGraph HypotenuseGraph::from_edges(std::vector<HEdge> e) {
    HypotenuseGraph g;
    g.edges = std::move(e);
    for (const HEdge& h : g.edges) {
        if (h.origin == h.terminus)
            throw std::invalid_argument("hypotenuse edge with coincident endpoints");
        g.V.push_back(h.origin);
        g.V.push_back(h.terminus);
    }
    std::sort(g.V.begin(), g.V.end(), point_less);
    g.V.erase(std::unique(g.V.begin(), g.V.end()), g.V.end());
    g.outEdges.assign(g.V.size(), {});
    g.inEdges.assign(g.V.size(), {});
    for (int i = 0; i < static_cast<int>(g.edges.size()); ++i) {
        g.outEdges[g.vertex_index(g.edges[i].origin)].push_back(i);
        g.inEdges[g.vertex_index(g.edges[i].terminus)].push_back(i);
    }
    return g;
}

HypotenuseGraph build_hgraph(const Tiling& t) {
    if (t.prototile.kind() != Prototile::Kind::RightTrapezoid)
        throw std::invalid_argument("hypotenuse graph needs a right-trapezoid prototile");
    ValidationReport vr = validate(t);
    if (!vr.valid) throw std::invalid_argument("tiling is not valid: " + vr.summary());
    std::vector<HEdge> es;
    es.reserve(t.size());
    for (int j = 0; j < t.size(); ++j)
        es.push_back({t.image(j, t.prototile.pa()), t.image(j, t.prototile.pb()), j});
    return HypotenuseGraph::from_edges(std::move(es));
}

PatternReport angle_pattern_check(const Tiling& t, const HypotenuseGraph& g) {
    std::vector<VertexIncidence> recs = collect_vertex_wedges(t);
    PatternReport rep;
    for (const Point& u : g.V) {
        auto it = std::lower_bound(
            recs.begin(), recs.end(), u,
            [](const VertexIncidence& r, const Point& p) { return point_less(r.w, p); });
        if (it == recs.end() || !(it->w == u))
            throw std::logic_error("hypotenuse endpoint is not a tile vertex");
        int na = 0, nb = 0;
        for (const ExactAngle& a : it->angles) {
            if (a == ExactAngle::alpha()) ++na;
            else if (a == ExactAngle::beta()) ++nb;
        }
        if (na != nb) {
            rep.eulerian = false;
            rep.offenders.push_back({u, it->angles});
        }
    }
    return rep;
}

DegreeBalance degree_balance(const HypotenuseGraph& g) {
    DegreeBalance b;
    b.table.reserve(g.V.size());
    for (std::size_t v = 0; v < g.V.size(); ++v) {
        int out = static_cast<int>(g.outEdges[v].size());
        int in = static_cast<int>(g.inEdges[v].size());
        b.table.push_back({out, in});
        if (out != in) b.balanced = false;
    }
    return b;
}

PairedGraph pair_merge(const HypotenuseGraph& g, const std::vector<VertexIncidence>& inc) {
    PairedGraph pg;
    pg.baseline = g;

    std::map<int, int> edgeOfTile;
    for (int i = 0; i < static_cast<int>(g.edges.size()); ++i)
        edgeOfTile[g.edges[i].tileId] = i;

    const int E = static_cast<int>(g.edges.size());
    std::vector<int> succ(E, -1), pred(E, -1);

    for (const VertexIncidence& rec : inc) {
        if (rec.angles.size() != 4) continue;
        int r = -1;
        for (int k = 0; k < 4 && r < 0; ++k) {
            if (rec.angles[k] == ExactAngle::alpha() &&
                rec.angles[(k + 1) % 4] == ExactAngle::alpha() &&
                rec.angles[(k + 2) % 4] == ExactAngle::beta() &&
                rec.angles[(k + 3) % 4] == ExactAngle::beta())
                r = k;
        }
        if (r < 0) continue;
        const int A1 = r, A2 = (r + 1) % 4, B1 = (r + 2) % 4, B2 = (r + 3) % 4;
        // The merge partner of each α tile is the β tile completing a straight
        // angle with it: clockwise neighbours (A2,B1) and, wrapping, (B2,A1).
        if (!(parallel_same(rec.rayCw[A2], rec.rayCcw[B1]) &&
              parallel_opposite(rec.rayCcw[A2], rec.rayCw[B1]) &&
              parallel_same(rec.rayCw[B2], rec.rayCcw[A1]) &&
              parallel_opposite(rec.rayCcw[B2], rec.rayCw[A1])))
            throw std::logic_error("(α,α,β,β) vertex inconsistent with its four tiles");

        auto edge_at = [&](int wedge) {
            auto it = edgeOfTile.find(rec.incidentTiles[wedge]);
            if (it == edgeOfTile.end())
                throw std::logic_error("merged tile has no hypotenuse edge");
            return it->second;
        };
        const int eA1 = edge_at(A1), eA2 = edge_at(A2), eB1 = edge_at(B1), eB2 = edge_at(B2);
        if (!(g.edges[eA1].origin == rec.w && g.edges[eA2].origin == rec.w &&
              g.edges[eB1].terminus == rec.w && g.edges[eB2].terminus == rec.w))
            throw std::logic_error("(α,α,β,β) vertex edges do not meet it as expected");
        succ[eB1] = eA2;
        pred[eA2] = eB1;
        succ[eB2] = eA1;
        pred[eA1] = eB2;
        pg.V1.push_back(rec.w);
    }

    for (const Point& v : g.V) {
        bool merged = false;
        for (const Point& u : pg.V1) merged = merged || u == v;
        if (!merged) pg.Vstar.push_back(v);
    }

    std::vector<char> seen(E, 0);
    for (int e = 0; e < E; ++e) {
        if (pred[e] != -1 || seen[e]) continue;
        EdgeChain ch;
        for (int cur = e; cur != -1; cur = succ[cur]) {
            ch.edges.push_back(cur);
            seen[cur] = 1;
        }
        pg.chains.push_back(std::move(ch));
    }
    for (int e = 0; e < E; ++e) {
        if (seen[e]) continue;
        // Remaining edges sit on all-merged loops; start each at its least edge.
        EdgeChain ch;
        ch.closed = true;
        for (int cur = e; !seen[cur]; cur = succ[cur]) {
            ch.edges.push_back(cur);
            seen[cur] = 1;
        }
        pg.chains.push_back(std::move(ch));
    }
    std::sort(pg.chains.begin(), pg.chains.end(),
              [](const EdgeChain& a, const EdgeChain& b) { return a.edges[0] < b.edges[0]; });
    return pg;
}

namespace {

FeasibleCycle expand_cycle(const PairedGraph& pg, const std::vector<int>& chainIdxs,
                           const Tiling* t) {
    FeasibleCycle c;
    for (int ci : chainIdxs)
        for (int e : pg.chains[ci].edges) c.edges.push_back(pg.baseline.edges[e]);
    for (std::size_t i = 0; i < c.edges.size(); ++i) {
        const HEdge& h = c.edges[i];
        if (!(h.terminus == c.edges[(i + 1) % c.edges.size()].origin))
            throw std::logic_error("cycle edges do not chain");
        c.tiles.push_back(h.tileId);
        c.gamma.push_back(h.terminus - h.origin);
    }
    if (t) {
        for (int j : c.tiles) {
            c.rho.push_back(t->image(j, t->prototile.pa()) - t->image(j, t->prototile.pd()));
            c.orientations.push_back(tile_orientation(*t, j));
        }
    }
    return c;
}

std::vector<FeasibleCycle> decompose_impl(const PairedGraph& pg, const Tiling* t) {
    std::map<Point, int, PointLess> node;
    for (const Point& p : pg.Vstar) node.emplace(p, static_cast<int>(node.size()));

    std::vector<std::pair<int, int>> arcs;  // over open chains
    std::vector<int> arcChain;
    std::vector<std::vector<int>> ready;  // cycles as chain-index lists
    for (int ci = 0; ci < static_cast<int>(pg.chains.size()); ++ci) {
        const EdgeChain& ch = pg.chains[ci];
        if (ch.closed) {
            ready.push_back({ci});
            continue;
        }
        const HEdge& first = pg.baseline.edges[ch.edges.front()];
        const HEdge& last = pg.baseline.edges[ch.edges.back()];
        auto a = node.find(first.origin);
        auto b = node.find(last.terminus);
        if (a == node.end() || b == node.end())
            throw std::logic_error("open chain endpoint was merged away");
        arcs.push_back({a->second, b->second});
        arcChain.push_back(ci);
    }

    ArcPeel peel = peel_arcs(static_cast<int>(node.size()), arcs);
    if (!peel.consumedAll)
        throw std::runtime_error("hypotenuse graph is not component-wise Eulerian");

    std::vector<FeasibleCycle> out;
    for (const std::vector<int>& cyc : peel.cycles) {
        std::vector<int> chainIdxs;
        for (int a : cyc) chainIdxs.push_back(arcChain[a]);
        out.push_back(expand_cycle(pg, chainIdxs, t));
    }
    for (const std::vector<int>& cyc : ready) out.push_back(expand_cycle(pg, cyc, t));
    std::sort(out.begin(), out.end(), [](const FeasibleCycle& a, const FeasibleCycle& b) {
        return a.tiles.front() < b.tiles.front();
    });
    return out;
}

}  // namespace

std::vector<FeasibleCycle> decompose_feasible_cycles(const PairedGraph& pg) {
    return decompose_impl(pg, nullptr);
}
std::vector<FeasibleCycle> decompose_feasible_cycles(const PairedGraph& pg, const Tiling& t) {
    return decompose_impl(pg, &t);
}

bool orientation_propagation_check(const FeasibleCycle& c) {
    const std::size_t m = c.gamma.size();
    if (c.rho.size() != m || c.orientations.size() != m)
        throw std::invalid_argument("cycle lacks tile orientation data");
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t j = (i + 1) % m;
        const bool same = c.orientations[i] == c.orientations[j];
        const bool ok = same ? direction_equiv(c.gamma[i], c.gamma[j]) &&
                                   direction_equiv(c.rho[i], c.rho[j])
                             : direction_equiv(c.gamma[i], c.rho[j]) &&
                                   direction_equiv(c.rho[i], c.gamma[j]);
        if (!ok) return false;
    }
    return true;
}

namespace {

struct ClassBasis {
    // Same-length representatives of 1, i, ω, iω (ω may be absent).
    Vec one, imag;
    std::optional<Vec> omega, iomega;
};

std::optional<std::array<long long, 4>> classify_counts(const std::vector<Vec>& dirs,
                                                        const ClassBasis& basis) {
    std::array<long long, 4> n{0, 0, 0, 0};
    for (const Vec& w : dirs) {
        int cls = -1;
        Sign s = Sign::Zero;
        if (qn_sign(cross(w, basis.one)) == Sign::Zero) {
            cls = 0;
            s = qn_sign(dot(w, basis.one));
        } else if (qn_sign(cross(w, basis.imag)) == Sign::Zero) {
            cls = 1;
            s = qn_sign(dot(w, basis.imag));
        } else if (basis.omega && qn_sign(cross(w, *basis.omega)) == Sign::Zero) {
            cls = 2;
            s = qn_sign(dot(w, *basis.omega));
        } else if (basis.iomega && qn_sign(cross(w, *basis.iomega)) == Sign::Zero) {
            cls = 3;
            s = qn_sign(dot(w, *basis.iomega));
        }
        if (cls < 0) return std::nullopt;
        n[cls] += s == Sign::Positive ? 1 : -1;
    }
    return n;
}

}  // namespace

ParityCertificate parity_certificate(const FeasibleCycle& c, const AngleMode& mode) {
    if (c.gamma.empty()) throw std::invalid_argument("empty cycle");
    ParityCertificate cert;
    cert.length = static_cast<int>(c.gamma.size());

    const QuadraticNumber zero(0), one(1);
    ClassBasis basis;
    const RotationGroup* grp = nullptr;
    if (mode.kind == AngleMode::Kind::BoundAlpha && mode.p == 1 && mode.q == 3) {
        grp = &RotationGroup::of_order(12);
        basis.one = {QuadraticNumber(2), zero};
        basis.imag = {zero, QuadraticNumber(2)};
        basis.omega = Vec{one, sqrt_of(3)};
        basis.iomega = Vec{zero - sqrt_of(3), one};
    } else if (mode.kind == AngleMode::Kind::BoundAlpha && mode.p == 1 && mode.q == 4) {
        grp = &RotationGroup::of_order(8);
        basis.one = {sqrt_of(2), zero};
        basis.imag = {zero, sqrt_of(2)};
        basis.omega = Vec{one, one};
        basis.iomega = Vec{zero - one, one};
    } else if (mode.kind == AngleMode::Kind::GenericAlpha) {
        grp = &RotationGroup::of_order(4);
        basis.one = {one, zero};
        basis.imag = {zero, one};
    } else {
        throw std::invalid_argument("no exact direction classes for this wedge");
    }

    int root = 0;
    bool mixed = false;
    if (!c.orientations.empty()) {
        for (std::size_t i = 1; i < c.orientations.size(); ++i)
            mixed = mixed || c.orientations[i] != c.orientations[0];
        if (mixed)
            while (c.orientations[root] != Orientation::Positive) ++root;
    }
    const Vec target = mixed ? Vec{zero - one, zero} : Vec{one, zero};
    std::optional<int> k = grp->index_mapping(c.gamma[root], target);
    if (!k) throw std::runtime_error("first hyp direction is not frame-alignable");
    const Isometry frame{*k, false, zero, zero};

    std::vector<Vec> dirs;
    dirs.reserve(c.gamma.size());
    for (const Vec& gmm : c.gamma) dirs.push_back(apply_linear(frame, gmm, *grp));

    auto counts = classify_counts(dirs, basis);
    if (!counts && basis.omega) {
        ClassBasis conj = basis;
        conj.omega = Vec{basis.omega->dx, zero - basis.omega->dy};
        conj.iomega = Vec{basis.omega->dy, basis.omega->dx};
        counts = classify_counts(dirs, conj);
        if (counts) {
            cert.conjugateFrame = true;
            basis = conj;
        }
    }
    if (!counts) throw std::runtime_error("hyp direction outside the eight classes");
    cert.a = (*counts)[0];
    cert.b = (*counts)[1];
    cert.c = (*counts)[2];
    cert.d = (*counts)[3];

    Vec total = basis.one.scaled(QuadraticNumber(cert.a)) +
                basis.imag.scaled(QuadraticNumber(cert.b));
    if (basis.omega) {
        total = total + basis.omega->scaled(QuadraticNumber(cert.c)) +
                basis.iomega->scaled(QuadraticNumber(cert.d));
    }
    cert.closure = total.is_zero();
    cert.normEquality = cert.a * cert.a + cert.b * cert.b == cert.c * cert.c + cert.d * cert.d;
    return cert;
}

ParityTheoremReport parity_theorem_check(const Tiling& t) {
    HypotenuseGraph g = build_hgraph(t);
    DegreeBalance bal = degree_balance(g);
    if (!bal.balanced)
        throw std::runtime_error("hypotenuse graph is not component-wise Eulerian");
    PairedGraph pg = pair_merge(g, build_incidence(t));
    std::vector<FeasibleCycle> cycles = decompose_feasible_cycles(pg, t);

    std::vector<std::future<ParityCertificate>> futs;
    futs.reserve(cycles.size());
    for (const FeasibleCycle& c : cycles)
        futs.push_back(std::async(std::launch::async,
                                  [&c, &t] { return parity_certificate(c, t.angleMode); }));
    ParityTheoremReport rep;
    rep.nEven = true;
    long long total = 0;
    for (auto& f : futs) {
        rep.cycles.push_back(f.get());
        total += rep.cycles.back().length;
        rep.nEven = rep.nEven && rep.cycles.back().length % 2 == 0;
    }
    if (total != t.size()) throw std::logic_error("cycle lengths do not add up to N");
    return rep;
}

bool undirected_cycle_parity(const Tiling& t) {
    if (!(t.angleMode.kind == AngleMode::Kind::BoundAlpha && t.angleMode.p == 1 &&
          t.angleMode.q == 4))
        throw std::invalid_argument("undirected parity route needs the π/4 wedge");
    HypotenuseGraph g = build_hgraph(t);
    for (std::size_t v = 0; v < g.V.size(); ++v)
        if ((g.outEdges[v].size() + g.inEdges[v].size()) % 2 != 0) return false;

    // Undirected peeling with oriented step directions recorded along the walk.
    enum : char { Unused, InWalk, Used };
    const int E = static_cast<int>(g.edges.size());
    std::vector<std::vector<int>> at(g.V.size());
    for (int i = 0; i < E; ++i) {
        at[g.vertex_index(g.edges[i].origin)].push_back(i);
        at[g.vertex_index(g.edges[i].terminus)].push_back(i);
    }
    std::vector<char> st(E, Unused);
    const QuadraticNumber one(1);
    const Vec eighth[4] = {{one, QuadraticNumber(0)},
                           {QuadraticNumber(0), one},
                           {one, one},
                           {QuadraticNumber(0) - one, one}};

    std::vector<int> walkNodes;
    std::vector<std::pair<int, bool>> walkArcs;  // (edge, traversed forward)
    std::unordered_map<int, int> pos;
    bool allEven = true;
    std::size_t seed = 0;
    while (true) {
        if (walkNodes.empty()) {
            while (seed < static_cast<std::size_t>(E) && st[seed] != Unused) ++seed;
            if (seed == static_cast<std::size_t>(E)) break;
            const int n0 = g.vertex_index(g.edges[seed].origin);
            walkNodes.push_back(n0);
            pos[n0] = 0;
        }
        const int cur = walkNodes.back();
        int chosen = -1;
        for (int e : at[cur])
            if (st[e] == Unused) {
                chosen = e;
                break;
            }
        if (chosen < 0) {
            if (!walkArcs.empty())
                throw std::logic_error("even-degree graph peeling got stuck");
            walkNodes.clear();
            pos.clear();
            continue;
        }
        const bool fwd = g.vertex_index(g.edges[chosen].origin) == cur;
        st[chosen] = InWalk;
        walkArcs.push_back({chosen, fwd});
        const int nxt = g.vertex_index(fwd ? g.edges[chosen].terminus : g.edges[chosen].origin);
        auto hit = pos.find(nxt);
        if (hit != pos.end()) {
            const int from = hit->second;
            const std::size_t len = walkArcs.size() - from;
            Vec sum{QuadraticNumber(0), QuadraticNumber(0)};
            for (std::size_t i = from; i < walkArcs.size(); ++i) {
                const auto& [e, f] = walkArcs[i];
                st[e] = Used;
                Vec step = g.edges[e].terminus - g.edges[e].origin;
                if (!f) step = -step;
                bool eighthTurn = false;
                for (const Vec& d : eighth)
                    eighthTurn = eighthTurn || qn_sign(cross(step, d)) == Sign::Zero;
                if (!eighthTurn)
                    throw std::runtime_error("step direction is not an eighth turn");
                sum = sum + step;
            }
            if (!sum.is_zero()) throw std::logic_error("extracted cycle does not close");
            if (len % 2 != 0) allEven = false;
            for (std::size_t kk = from + 1; kk < walkNodes.size(); ++kk)
                pos.erase(walkNodes[kk]);
            walkNodes.resize(from + 1);
            walkArcs.resize(from);
        } else {
            walkNodes.push_back(nxt);
            pos[nxt] = static_cast<int>(walkNodes.size()) - 1;
        }
    }
    return allEven;
}

std::vector<int> weak_components(const HypotenuseGraph& g) {
    std::vector<int> comp(g.V.size(), -1);
    int next = 0;
    for (std::size_t s = 0; s < g.V.size(); ++s) {
        if (comp[s] != -1) continue;
        std::vector<int> stack{static_cast<int>(s)};
        comp[s] = next;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            auto visit = [&](int e) {
                for (const Point* q : {&g.edges[e].origin, &g.edges[e].terminus}) {
                    int u = g.vertex_index(*q);
                    if (comp[u] == -1) {
                        comp[u] = next;
                        stack.push_back(u);
                    }
                }
            };
            for (int e : g.outEdges[v]) visit(e);
            for (int e : g.inEdges[v]) visit(e);
        }
        ++next;
    }
    return comp;
}

bool pairing_conjecture_on_graph(const HypotenuseGraph& g) {
    std::vector<int> comp = weak_components(g);
    std::map<int, std::vector<int>> edgesOf;
    for (int i = 0; i < static_cast<int>(g.edges.size()); ++i)
        edgesOf[comp[g.vertex_index(g.edges[i].origin)]].push_back(i);
    for (const auto& [id, es] : edgesOf) {
        (void)id;
        if (es.size() != 2) return false;
        const HEdge& e = g.edges[es[0]];
        const HEdge& f = g.edges[es[1]];
        if (!(e.origin == f.terminus && e.terminus == f.origin)) return false;
    }
    return true;
}

bool pairing_conjecture_check(const Tiling& t) {
    return pairing_conjecture_on_graph(build_hgraph(t));
}

PeelReport peel_edge_cycles(const HypotenuseGraph& g) {
    std::vector<std::pair<int, int>> arcs;
    arcs.reserve(g.edges.size());
    for (const HEdge& e : g.edges)
        arcs.push_back({g.vertex_index(e.origin), g.vertex_index(e.terminus)});
    ArcPeel p = peel_arcs(static_cast<int>(g.V.size()), arcs);
    return {std::move(p.cycles), p.consumedAll};
}

}  // namespace dissect

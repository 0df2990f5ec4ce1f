// Acceptance gate: one pass/fail line per criterion, exact arithmetic
// throughout (equality checks carry zero tolerance), wall-clock budgets
// pinned below.  Exit status 0 iff every criterion passes.
#include "builders.hpp"

#include "dissect/hgraph.hpp"
#include "dissect/incidence.hpp"
#include "dissect/search.hpp"
#include "dissect/segments.hpp"
#include "dissect/tiling.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace dissect;
using builders::brick_tiling;
using builders::grid_tiling;
using builders::hexagon_prototile;
using builders::pair_tiling;
using builders::pair_x;
using builders::pi4_square_tiling;
using builders::qn;
using builders::two_pair_tiling;

namespace {

struct Outcome {
    bool ok = true;
    std::string note;
};

void expect(Outcome& o, bool cond, const std::string& why) {
    if (!cond && o.ok) {
        o.ok = false;
        o.note = why;
    }
}

// All valid fixture tilings used by several criteria.
std::vector<Tiling> fixture_family() {
    std::vector<Tiling> ts;
    for (int m = 1; m <= 5; ++m)
        for (int n = 1; n <= 5; ++n) ts.push_back(grid_tiling(m, n));
    ts.push_back(brick_tiling());
    ts.push_back(pair_tiling());
    ts.push_back(two_pair_tiling());
    ts.push_back(pi4_square_tiling());
    return ts;
}

SearchConfig pair_search_config() {
    SearchConfig cfg;
    cfg.prototile = Prototile::trapezoid_pi3(pair_x());
    cfg.region = Region{builders::rt3(), builders::rt3()};
    cfg.targetN = 2;
    cfg.angleMode = AngleMode::bound(1, 3);
    return cfg;
}

SearchConfig odd_search_config() {
    SearchConfig cfg;
    cfg.prototile = Prototile::trapezoid_pi3(qn(0, 1, 1, 3, 3));
    QuadraticNumber side = qn(3, 2, 1, 2, 3);
    cfg.region = Region{side, side};
    cfg.targetN = 3;
    cfg.angleMode = AngleMode::bound(1, 3);
    return cfg;
}

// ------------------------------------------------------------- criterion 1

Outcome counting_identities() {
    Outcome o;
    int count = 0;
    for (const Tiling& t : fixture_family()) {
        expect(o, validate(t).valid, "fixture tiling failed validation");
        auto inc = build_incidence(t);
        CountingSummary s =
            counting_summary(inc, t.prototile.sides(), static_cast<int>(t.size()));
        expect(o, check_ratio_identity(s), "ratio identity violated");
        expect(o, check_linear_identity(s).holds, "linear identity violated");
        ++count;
    }
    CountingSummary g = counting_summary(build_incidence(grid_tiling(2, 2)), 4, 4);
    const bool census = g.cardF == 1 && g.cardH == 4 && g.F == 4 && g.H == 8 && g.hbar == 4 &&
                        g.Delta == 1;
    expect(o, census, "2x2 grid census mismatch");
    if (o.ok)
        o.note = std::to_string(count) + " tilings; 2x2 census = (1,4,4,8,4,1)";
    return o;
}

// ------------------------------------------------------------- criterion 2

Outcome six_gon_bound() {
    Outcome o;
    for (int q = 6; q <= 100; ++q) {
        expect(o, six_gon_obstruction(q) == 2LL * q, "six_gon_obstruction(q) != 2q");
        expect(o, 2LL * q > 8, "lower bound 2q <= 8");
    }
    SearchConfig cfg;
    cfg.prototile = hexagon_prototile();
    cfg.region = Region{QuadraticNumber(3), QuadraticNumber(2)};
    cfg.targetN = 2;
    cfg.nodeLimit = 1'000'000;
    SearchResult res = enumerate(cfg);
    expect(o, res.tilings.empty(), "hexagon prototile produced a tiling");
    if (o.ok) {
        std::ostringstream ss;
        ss << "2q holds on [6,100]; hexagon search: 0 tilings, " << res.nodesExplored
           << " nodes" << (res.exhausted ? ", exhausted" : "");
        o.note = ss.str();
    }
    return o;
}

// ------------------------------------------------------------- criterion 3

Outcome eulerian_equivalence() {
    Outcome o;
    std::mt19937_64 rng(0x5eedULL);
    auto rnd = [&](int lo, int hi) {
        return lo + static_cast<int>(rng() % static_cast<unsigned long long>(hi - lo + 1));
    };
    auto pt = [](int i) { return Point{QuadraticNumber(i), QuadraticNumber(0)}; };
    long long components = 0, balancedComponents = 0;
    for (int iter = 0; iter < 1000; ++iter) {
        const int n = rnd(2, 12);
        std::vector<HEdge> es;
        if (iter % 2 == 0) {
            // Cycle-built graphs: balanced components are common here.
            const int loops = rnd(1, 5);
            for (int l = 0; l < loops && static_cast<int>(es.size()) < 34; ++l) {
                std::vector<int> nodes(n);
                std::iota(nodes.begin(), nodes.end(), 0);
                std::shuffle(nodes.begin(), nodes.end(), rng);
                const int len = rnd(2, std::min(6, n));
                for (int i = 0; i < len; ++i)
                    es.push_back(HEdge{pt(nodes[i]), pt(nodes[(i + 1) % len]),
                                       static_cast<int>(es.size())});
            }
        } else {
            const int e = rnd(0, 40);
            for (int i = 0; i < e; ++i) {
                int u = rnd(0, n - 1), v = rnd(0, n - 1);
                if (u == v) v = (v + 1) % n;
                es.push_back(HEdge{pt(u), pt(v), i});
            }
        }
        if (es.empty()) continue;
        HypotenuseGraph g = HypotenuseGraph::from_edges(es);
        std::vector<int> comp = weak_components(g);
        const int k = *std::max_element(comp.begin(), comp.end()) + 1;
        for (int cid = 0; cid < k; ++cid) {
            std::vector<HEdge> sub;
            for (const HEdge& e : g.edges)
                if (comp[g.vertex_index(e.origin)] == cid) sub.push_back(e);
            if (sub.empty()) continue;
            HypotenuseGraph sg = HypotenuseGraph::from_edges(sub);
            const bool balanced = degree_balance(sg).balanced;
            const bool peeled = peel_edge_cycles(sg).consumedAll;
            expect(o, balanced == peeled, "balance and peeling disagree on a component");
            ++components;
            if (balanced) ++balancedComponents;
        }
    }
    expect(o, balancedComponents > 0 && balancedComponents < components,
           "sample never exercised both sides of the equivalence");
    if (o.ok) {
        std::ostringstream ss;
        ss << "1000 graphs, " << components << " components (" << balancedComponents
           << " balanced), equivalence exact";
        o.note = ss.str();
    }
    return o;
}

// ------------------------------------------------------------- criterion 4

Outcome parity_certificates() {
    Outcome o;
    SearchResult res = enumerate(pair_search_config());
    expect(o, !res.tilings.empty(), "no tiling to certify");
    long long cycles = 0;
    for (const Tiling& t : res.tilings) {
        expect(o, t.size() % 2 == 0, "odd tile count in a found tiling");
        try {
            ParityTheoremReport rep = parity_theorem_check(t);
            expect(o, rep.nEven, "parity pipeline reports odd N");
            for (const ParityCertificate& c : rep.cycles) {
                expect(o, c.closure, "certificate closure fails");
                expect(o, c.normEquality, "a^2+b^2 != c^2+d^2");
                expect(o, c.length % 2 == 0, "odd cycle length");
                ++cycles;
            }
        } catch (const std::exception& e) {
            expect(o, false, std::string("hypotenuse graph not Eulerian: ") + e.what());
        }
    }
    if (o.ok) {
        std::ostringstream ss;
        ss << res.tilings.size() << " tilings, " << cycles
           << " feasible cycles, all certificates exact (zero tolerance)";
        o.note = ss.str();
    }
    return o;
}

// ------------------------------------------------------------- criterion 5

Outcome leg_parameter_lemmas() {
    Outcome o;
    int samples = 0;
    for (int k = 1; k <= 20; ++k) {
        const Rational r(k % 5, 7);
        const Rational s(1 + k % 4, 5);
        const QuadraticNumber x(r, s, 3);

        expect(o, !pure2_check(x, 50).has_value(), "pure-2 witness found with s > 0");

        // One balanced relation that pins exactly this x: with a+b = 35 the
        // solved pair is r = -(b+2d)/35, s = -c/35.
        const long long mr = 5 * (k % 5), mc = 7 * (1 + k % 4);
        const long long b = mr % 2;
        SideRelation rel{35 - b, b, -mc, -(mr + b) / 2};
        SolveOutcome sol = solve_x({rel});
        expect(o, sol.kind == SolveOutcome::Kind::Solved, "pinning relation not solved");
        expect(o, sol.r == r && sol.s == s, "recovered (r, s) differs");

        Tiling t = pair_tiling(x);
        expect(o, validate(t).valid, "pair tiling invalid at a sampled x");
        SolveOutcome fromTiling = solve_x(boundary_identified_relations(t));
        expect(o, fromTiling.kind == SolveOutcome::Kind::AllDegenerate,
               "pair tiling relations contradict the known x");
        ++samples;
    }

    AreaCheck square = area_constraint_check(pair_tiling());
    expect(o, square.sPositive && square.A == Rational(0) && square.B == Rational(1),
           "pair square area split wrong");
    Tiling candidate{odd_search_config().prototile, odd_search_config().region, {},
                     AngleMode::bound(1, 3)};
    for (int j = 0; j < 3; ++j)
        candidate.tiles.push_back(
            PlacedTile{j, Isometry{0, false, QuadraticNumber(j), QuadraticNumber(0)}});
    AreaCheck cand = area_constraint_check(candidate);
    expect(o, cand.sPositive && cand.A == Rational(3, 2) && cand.B == Rational(1, 2),
           "N=3 candidate area split wrong");
    if (o.ok)
        o.note = std::to_string(samples) +
                 " sampled x values: solve exact, area s > 0, no pure-2 witness at bound 50";
    return o;
}

// ------------------------------------------------------------- criterion 6

Outcome odd_n_search() {
    Outcome o;
    SearchResult even = enumerate(pair_search_config());
    expect(o, even.exhausted, "N=2 search did not exhaust");
    expect(o, !even.tilings.empty(), "N=2 search found nothing");

    SearchResult odd = enumerate(odd_search_config());
    expect(o, odd.exhausted, "N=3 search did not exhaust");
    expect(o, odd.tilings.empty(), "N=3 search found a tiling");

    std::ostringstream ss;
    ss << "N=2: " << even.tilings.size() << " tiling(s), " << even.nodesExplored
       << " nodes, exhausted; N=3: 0 tilings, " << odd.nodesExplored << " nodes, exhausted";
    if (o.ok) o.note = ss.str();
    return o;
}

// ------------------------------------------------------------- criterion 7

Outcome pi4_variant() {
    Outcome o;
    Tiling t = pi4_square_tiling();
    expect(o, validate(t).valid, "pi/4 fixture invalid");
    expect(o, undirected_cycle_parity(t), "undirected cycle parity fails");
    HypotenuseGraph g = build_hgraph(t);
    for (const HEdge& e : g.edges) {
        Vec v = e.terminus - e.origin;
        const bool eighth = v.dx == QuadraticNumber(0) || v.dy == QuadraticNumber(0) ||
                            v.dx == v.dy || v.dx == QuadraticNumber(0) - v.dy;
        expect(o, eighth, "hypotenuse direction off the eighth-turn grid");
    }
    if (o.ok)
        o.note = std::to_string(g.edges.size()) +
                 " hypotenuse edges on the eighth-turn grid; undirected parity holds";
    return o;
}

// ------------------------------------------------------------- criterion 8

Outcome special_segment_obstruction() {
    Outcome o;
    std::vector<Tiling> ts{pair_tiling(), two_pair_tiling()};
    for (Tiling& t : enumerate(pair_search_config()).tilings) ts.push_back(std::move(t));
    long long heads = 0;
    for (const Tiling& t : ts) {
        for (const SpecialSegment& s : scan_special_segments(t)) {
            expect(o, s.head.theta != HeadAngle::Acute, "acute special-segment head found");
            ++heads;
        }
    }

    int forced = 0;
    for (long long a = 0; a <= 8; ++a) {
        for (long long b = a + 1; b <= 9; ++b) {
            for (long long c = 0; c <= 9; ++c) {
                VDecomposition d = v_decomposition_classify(a, b, c, AngleMode::generic());
                if (!d.forcedAlpha.has_value()) continue;
                ++forced;
                expect(o,
                       *d.forcedAlpha == Rational(1, 3) || *d.forcedAlpha == Rational(1, 4),
                       "beta-heavy mix forces an unexpected alpha");
                expect(o, d.total == VDecomposition::Total::TwoPi,
                       "forcing mix does not close a full turn");
            }
        }
    }
    expect(o, forced == 2, "beta-heavy scan found an unexpected forcing row count");
    if (o.ok) {
        std::ostringstream ss;
        ss << ts.size() << " tilings, " << heads
           << " special heads, none acute; beta-heavy scan forces only {pi/3, pi/4}";
        o.note = ss.str();
    }
    return o;
}

// ------------------------------------------------------------- criterion 9

Outcome round_trip_determinism() {
    Outcome o;
    std::vector<Tiling> ts = fixture_family();
    for (Tiling& t : enumerate(pair_search_config()).tilings) ts.push_back(std::move(t));
    for (const Tiling& t : ts) {
        const std::string s1 = save_tiling(t);
        expect(o, s1 == save_tiling(t), "save_tiling not deterministic");
        const std::string s2 = save_tiling(load_tiling(s1));
        expect(o, s1 == s2, "load/save round trip changed bytes");
        expect(o, render_svg(t) == render_svg(t), "render_svg not deterministic");
    }
    Tiling p = pair_tiling();
    RenderOverlays ov;
    for (const HEdge& e : build_hgraph(p).edges) ov.arrows.emplace_back(e.origin, e.terminus);
    for (const MaximalSegment& m : extract_maximal_segments(p))
        ov.highlights.push_back(Segment{m.u, m.v});
    expect(o, render_svg(p, ov) == render_svg(p, ov), "overlay SVG not deterministic");
    if (o.ok)
        o.note = std::to_string(ts.size()) + " fixtures: round trip and bytes stable";
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        const char* label;
        double budgetSeconds;  // <= 0: no wall-clock bound
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"counting identities", 5, counting_identities},
        {"six-gon obstruction", 60, six_gon_bound},
        {"Eulerian equivalence", 10, eulerian_equivalence},
        {"parity certificates", 0, parity_certificates},
        {"leg-parameter lemmas", 30, leg_parameter_lemmas},
        {"odd-N search", 600, odd_n_search},
        {"pi/4 variant", 5, pi4_variant},
        {"special-segment obstruction", 10, special_segment_obstruction},
        {"round trip and determinism", 5, round_trip_determinism},
    };

    int passed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.note = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (o.ok && criteria[i].budgetSeconds > 0 && secs > criteria[i].budgetSeconds) {
            o.ok = false;
            o.note = "over wall-clock budget";
        }
        std::printf("criterion %zu: %s  [%.2fs]  %s — %s\n", i + 1, o.ok ? "PASS" : "FAIL",
                    secs, criteria[i].label, o.note.c_str());
        if (o.ok) ++passed;
    }
    std::printf("acceptance: %d/%zu criteria pass\n", passed, criteria.size());
    return passed == static_cast<int>(criteria.size()) ? 0 : 1;
}

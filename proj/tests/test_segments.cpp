#include <doctest.h>

#include "builders.hpp"
#include "dissect/incidence.hpp"
#include "dissect/segments.hpp"

#include <algorithm>
#include <vector>

using namespace dissect;
using builders::grid_tiling;
using builders::pair_tiling;
using builders::pair_x;
using builders::qn;
using builders::rt3;
using builders::two_pair_tiling;

namespace {

Point pt(long long x, long long y) { return {QuadraticNumber(x), QuadraticNumber(y)}; }

Isometry corner_at(int k, const Point& corner, const Point& at, const RotationGroup& g) {
    Point img = apply_isometry(Isometry{k, false, QuadraticNumber(0), QuadraticNumber(0)}, corner, g);
    return {k, false, at.x - img.x, at.y - img.y};
}

long long run_count(const MaximalSegment& s) {
    return static_cast<long long>(s.upper.size() + s.lower.size());
}

QuadraticNumber seq_length(const std::vector<RunSide>& seq) {
    QuadraticNumber sum;
    for (const auto& s : seq) sum += s.length;
    return sum;
}

}  // namespace

TEST_CASE("pair tiling: five maximal segments, one interior") {
    Tiling t = pair_tiling();
    auto segs = extract_maximal_segments(t);
    REQUIRE(segs.size() == 5);

    long long sides = 0;
    int interior = 0;
    for (const auto& s : segs) {
        sides += run_count(s);
        if (!s.onBoundary) ++interior;
    }
    CHECK(sides == 8);  // every tile side lies on exactly one run
    REQUIRE(interior == 1);

    auto hyp = std::find_if(segs.begin(), segs.end(),
                            [](const MaximalSegment& s) { return !s.onBoundary; });
    QuadraticNumber x = pair_x();
    CHECK(hyp->u == Point{x, QuadraticNumber(0)});
    CHECK(hyp->v == Point{x + QuadraticNumber(1), rt3()});
    CHECK(hyp->len == QuadraticNumber(2));
    REQUIRE(hyp->upper.size() == 1);
    REQUIRE(hyp->lower.size() == 1);
    CHECK(hyp->upper[0].tag == SideTag::Two);
    CHECK(hyp->lower[0].tag == SideTag::Two);
    CHECK(hyp->upper[0].tile != hyp->lower[0].tile);
}

TEST_CASE("2x2 grid: six maximal segments") {
    Tiling t = grid_tiling(2, 2);
    auto segs = extract_maximal_segments(t);
    REQUIRE(segs.size() == 6);
    int interior = 0;
    for (const auto& s : segs) {
        CHECK(s.len == QuadraticNumber(2));
        if (!s.onBoundary) ++interior;
    }
    CHECK(interior == 2);
}

TEST_CASE("single tile: four one-sided segments") {
    Tiling t{Prototile::trapezoid_pi3(pair_x()),
             Region{QuadraticNumber(10), QuadraticNumber(10)},
             {},
             AngleMode::bound(1, 3)};
    t.tiles.push_back(PlacedTile{0, Isometry{0, false, QuadraticNumber(1), QuadraticNumber(1)}});
    auto segs = extract_maximal_segments(t);
    REQUIRE(segs.size() == 4);
    for (const auto& s : segs) CHECK(s.onBoundary);
}

TEST_CASE("length partition: upper and lower sequences both cover interior runs") {
    for (Tiling t : {pair_tiling(), two_pair_tiling()}) {
        long long sides = 0;
        for (const auto& s : extract_maximal_segments(t)) {
            sides += run_count(s);
            if (s.onBoundary) {
                const auto& seq = s.upper.empty() ? s.lower : s.upper;
                CHECK(seq_length(seq) == s.len);
            } else {
                CHECK(seq_length(s.upper) == s.len);
                CHECK(seq_length(s.lower) == s.len);
            }
        }
        CHECK(sides == 4 * static_cast<long long>(t.tiles.size()));
    }
}

TEST_CASE("pair tiling relations are all degenerate") {
    Tiling t = pair_tiling();
    auto rels = boundary_identified_relations(t);
    REQUIRE(rels.size() == 3);  // hypotenuse run + two identified frame pairs
    for (const auto& r : rels) CHECK(r == SideRelation{0, 0, 0, 0});

    auto sol = solve_x(rels);
    CHECK(sol.kind == SolveOutcome::Kind::AllDegenerate);
}

TEST_CASE("boundary relations reject other prototiles") {
    CHECK_THROWS_AS(boundary_identified_relations(grid_tiling(1, 1)), std::invalid_argument);
}

TEST_CASE("solve_x pins the leg parameter from one balanced relation") {
    auto sol = solve_x({SideRelation{1, 1, -1, -1}});
    REQUIRE(sol.kind == SolveOutcome::Kind::Solved);
    CHECK(sol.r == Rational(1, 2));
    CHECK(sol.s == Rational(1, 2));
    CHECK(sol.first == 0);
}

TEST_CASE("solve_x flags disagreeing relations") {
    auto sol = solve_x({SideRelation{1, 1, -1, -1}, SideRelation{1, 1, -2, -1}});
    REQUIRE(sol.kind == SolveOutcome::Kind::Inconsistent);
    CHECK(sol.first == 0);
    CHECK(sol.second == 1);
    CHECK(sol.s == Rational(1, 2));
    CHECK(sol.s2 == Rational(1));
}

TEST_CASE("solve_x flags an unsatisfiable degenerate relation") {
    auto sol = solve_x({SideRelation{1, -1, 1, 0}});
    CHECK(sol.kind == SolveOutcome::Kind::Inconsistent);
    CHECK(sol.second == 0);

    // a degenerate relation that reduces to 0 = 0 is fine
    auto ok = solve_x({SideRelation{2, -2, 0, 1}});
    CHECK(ok.kind == SolveOutcome::Kind::AllDegenerate);
}

TEST_CASE("area constraint: pair square") {
    AreaCheck ac = area_constraint_check(pair_tiling());
    CHECK(ac.sPositive);
    CHECK(ac.A == Rational(0));
    CHECK(ac.B == Rational(1));
}

TEST_CASE("area constraint is parameter-level: N=3 candidate square") {
    // x = (1/3)√3 and ℓ = (3+√3)/2 satisfy ℓ² = 3 · tile area even though no
    // actual tiling is supplied.
    QuadraticNumber x = qn(0, 1, 1, 3, 3);
    QuadraticNumber l = qn(3, 2, 1, 2, 3);
    Tiling t{Prototile::trapezoid_pi3(x), Region{l, l}, {}, AngleMode::bound(1, 3)};
    for (int j = 0; j < 3; ++j)
        t.tiles.push_back(PlacedTile{j, Isometry{0, false, QuadraticNumber(j), QuadraticNumber(0)}});
    AreaCheck ac = area_constraint_check(t);
    CHECK(ac.sPositive);
    CHECK(ac.A == Rational(3, 2));
    CHECK(ac.B == Rational(1, 2));
}

TEST_CASE("area constraint rejects mismatched parameters and frames") {
    Tiling bad = pair_tiling();
    bad.region = Region{QuadraticNumber(2), QuadraticNumber(2)};
    CHECK_THROWS_AS(area_constraint_check(bad), std::invalid_argument);

    Tiling rect = pair_tiling();
    rect.region = Region{QuadraticNumber(1), QuadraticNumber(2)};
    CHECK_THROWS_AS(area_constraint_check(rect), std::invalid_argument);
}

TEST_CASE("pure2_check examples") {
    CHECK_FALSE(pure2_check(pair_x(), 100).has_value());

    auto w = pure2_check(QuadraticNumber(1), 100);
    REQUIRE(w.has_value());
    CHECK(*w == Pure2Witness{0, 1, 0, 2});

    CHECK_FALSE(pure2_check(qn(1, 2, 1, 2, 3), 100).has_value());
}

TEST_CASE("find_3beta_vertices: none on the pair, one at a synthetic fan") {
    CHECK(find_3beta_vertices(build_incidence(pair_tiling())).empty());

    const RotationGroup& grp = RotationGroup::of_order(12);
    Tiling t{Prototile::trapezoid_pi3(pair_x()),
             Region{QuadraticNumber(10), QuadraticNumber(10)},
             {},
             AngleMode::bound(1, 3)};
    const Point b = t.prototile.pb();
    const Point C = pt(5, 5);
    for (int k = 0; k < 3; ++k) t.tiles.push_back(PlacedTile{k, corner_at(4 * k, b, C, grp)});

    auto seeds = find_3beta_vertices(collect_vertex_wedges(t));
    REQUIRE(seeds.size() == 1);
    CHECK(seeds[0] == C);
}

TEST_CASE("half-maximal segments of the pair hypotenuse run") {
    Tiling t = pair_tiling();
    auto segs = extract_maximal_segments(t);
    int hyp = -1;
    for (int i = 0; i < static_cast<int>(segs.size()); ++i)
        if (!segs[i].onBoundary) hyp = i;
    REQUIRE(hyp >= 0);

    int count = 0;
    for (const auto& h : half_maximal_segments(t)) {
        if (h.parent != hyp) continue;
        ++count;
        // single-side runs: only the full segment in each orientation
        CHECK(h.upper.size() == 1);
        CHECK(h.lower.size() == 1);
        CHECK((h.dir == segs[hyp].dir || h.dir == -segs[hyp].dir));
        CHECK(h.u == (h.reversed ? segs[hyp].v : segs[hyp].u));
    }
    CHECK(count == 2);
}

TEST_CASE("no special segments on valid even tilings") {
    CHECK(scan_special_segments(pair_tiling()).empty());
    CHECK(scan_special_segments(two_pair_tiling()).empty());
}

TEST_CASE("scan finds a synthetic special segment with its head") {
    // One hypotenuse above [0,2], a long side below [0,2]: the upper sequence
    // leads with 2, the lower does not.
    const RotationGroup& grp = RotationGroup::of_order(12);
    QuadraticNumber one(1);
    Tiling t{Prototile::trapezoid_pi3(one),
             Region{QuadraticNumber(40), QuadraticNumber(40)},
             {},
             AngleMode::bound(1, 3)};
    const Point a = t.prototile.pa();
    const Point U = pt(10, 10);
    // tile above with its hypotenuse on [U, U+(2,0)], obtuse corner at U
    t.tiles.push_back(PlacedTile{0, corner_at(4, a, pt(12, 10), grp)});
    // reflected tile below with its long side on the same stretch
    t.tiles.push_back(PlacedTile{1, Isometry{0, true, QuadraticNumber(10), QuadraticNumber(10)}});

    // both orientations of the shared stretch are special: the obtuse corner
    // anchors one end, the acute corner the other
    auto specials = scan_special_segments(t);
    REQUIRE(specials.size() == 2);
    const HeadInformation expectFwd{U, Vec{one, QuadraticNumber(0)}, SegmentSide::Upper,
                                    HeadAngle::Obtuse};
    const HeadInformation expectRev{pt(12, 10), Vec{-one, QuadraticNumber(0)},
                                    SegmentSide::Lower, HeadAngle::Acute};
    CHECK(std::count_if(specials.begin(), specials.end(),
                        [&](const SpecialSegment& s) { return s.head == expectFwd; }) == 1);
    CHECK(std::count_if(specials.begin(), specials.end(),
                        [&](const SpecialSegment& s) { return s.head == expectRev; }) == 1);
}

TEST_CASE("prec: cone membership relative to a direction") {
    const Vec x{QuadraticNumber(1), QuadraticNumber(0)};
    const Point u = pt(3, 7);

    CHECK(prec(u, u + x.scaled(QuadraticNumber(2)), x));
    CHECK_FALSE(prec(u, u, x));
    CHECK_FALSE(prec(u, u - x, x));

    // ω²x = x rotated −120°; inside the cone. ωx is outside.
    const Vec w2 = apply_linear(Isometry{-4}, x, RotationGroup::of_order(12));
    const Vec w1 = apply_linear(Isometry{4}, x, RotationGroup::of_order(12));
    CHECK(prec(u, u + w2, x));
    CHECK(prec(u, u + x + w2, x));
    CHECK_FALSE(prec(u, u + w1, x));

    CHECK_THROWS_AS(prec(u, u, Vec{QuadraticNumber(0), QuadraticNumber(0)}),
                    std::invalid_argument);
}

TEST_CASE("prec is a strict partial order on sampled points") {
    const Vec x{qn(1, 2, 0, 1, 0), qn(0, 1, 1, 2, 3)};  // unit at 60°
    std::vector<Point> pts;
    for (int i = -2; i <= 2; ++i)
        for (int j = -2; j <= 2; ++j)
            pts.push_back(Point{QuadraticNumber(i), QuadraticNumber(0)} +
                          Vec{qn(0, 1, j, 2, 3), qn(j, 2, 0, 1, 0)});
    for (const auto& p : pts) CHECK_FALSE(prec(p, p, x));
    for (const auto& p : pts)
        for (const auto& q : pts)
            for (const auto& r : pts)
                if (prec(p, q, x) && prec(q, r, x)) CHECK(prec(p, r, x));
    for (const auto& p : pts)
        for (const auto& q : pts)
            if (prec(p, q, x)) CHECK_FALSE(prec(q, p, x));
}

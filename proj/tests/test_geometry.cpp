#include "dissect/geometry.hpp"

#include <doctest.h>

#include <random>

using namespace dissect;

namespace {

QuadraticNumber qn(long long rn, long long rd, long long sn, long long sd, int d) {
    return QuadraticNumber(Rational(rn, rd), Rational(sn, sd), d);
}

Point pt(long long x, long long y) { return Point{QuadraticNumber(x), QuadraticNumber(y)}; }

const QuadraticNumber kX = qn(-1, 2, 1, 2, 3);  // (√3−1)/2

}  // namespace

TEST_CASE("rotation group tables close and hit right angles") {
    const RotationGroup& g12 = RotationGroup::of_order(12);
    CHECK(g12.cos_at(0) == QuadraticNumber(1));
    CHECK(g12.cos_at(3) == QuadraticNumber(0));  // π/2
    CHECK(g12.sin_at(3) == QuadraticNumber(1));
    CHECK(g12.cos_at(6) == QuadraticNumber(-1));  // π
    CHECK(g12.sin_at(2) == qn(0, 1, 1, 2, 3));    // sin π/3 = √3/2
    const RotationGroup& g8 = RotationGroup::of_order(8);
    CHECK(g8.cos_at(1) == qn(0, 1, 1, 2, 2));
    CHECK(g8.cos_at(2) == QuadraticNumber(0));
    const RotationGroup& g4 = RotationGroup::of_order(4);
    CHECK(g4.sin_at(1) == QuadraticNumber(1));
}

TEST_CASE("apply_isometry worked instances") {
    const RotationGroup& g = RotationGroup::of_order(12);
    Isometry quarter{3, false, QuadraticNumber(0), QuadraticNumber(0)};
    CHECK(apply_isometry(quarter, pt(1, 0), g) == pt(0, 1));
    Isometry ident{};
    CHECK(apply_isometry(ident, Point{kX, sqrt_of(3)}, g) == Point{kX, sqrt_of(3)});
    Isometry rx{0, true, QuadraticNumber(0), sqrt_of(3)};
    CHECK(apply_isometry(rx, Point{kX, QuadraticNumber(0)}, g) == Point{kX, sqrt_of(3)});
}

TEST_CASE("apply_isometry preserves squared distance") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long long> c(-9, 9);
    std::uniform_int_distribution<int> k(0, 11);
    const RotationGroup& g = RotationGroup::of_order(12);
    for (int i = 0; i < 300; ++i) {
        Point p{qn(c(rng), 2, c(rng), 3, 3), qn(c(rng), 1, c(rng), 2, 3)};
        Point q{qn(c(rng), 3, c(rng), 1, 3), qn(c(rng), 2, c(rng), 2, 3)};
        Isometry iso{k(rng), (i % 2) == 0, qn(c(rng), 1, c(rng), 1, 3), qn(c(rng), 1, c(rng), 1, 3)};
        Vec before = q - p;
        Vec after = apply_isometry(iso, q, g) - apply_isometry(iso, p, g);
        CHECK(dot(before, before) == dot(after, after));
    }
}

TEST_CASE("polygon area instances") {
    std::vector<Point> square = {pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)};
    CHECK(polygon_area(square) == QuadraticNumber(1));
    std::vector<Point> rev(square.rbegin(), square.rend());
    CHECK(polygon_area(rev) == QuadraticNumber(-1));

    Prototile p = Prototile::trapezoid_pi3(kX);
    CHECK(polygon_area(p.boundary()) == QuadraticNumber(Rational(3, 2)));
    CHECK(p.area() == QuadraticNumber(Rational(3, 2)));

    // Symbolic x = r + s√3: area = 3s + (2r+1)/2·√3.
    Rational r(1, 3), s(2, 5);
    Prototile ps = Prototile::trapezoid_pi3(QuadraticNumber(r, s, 3));
    QuadraticNumber expect(Rational(3) * s, (Rational(2) * r + Rational(1)) * Rational(1, 2), 3);
    CHECK(ps.area() == expect);
}

TEST_CASE("trapezoid prototile shape") {
    Prototile p = Prototile::trapezoid_pi3(kX);
    CHECK(p.sides() == 4);
    CHECK(p.pa() == pt(0, 0));
    CHECK(p.pb() == Point{QuadraticNumber(1), sqrt_of(3)});
    CHECK(p.pc() == Point{kX + QuadraticNumber(1), sqrt_of(3)});
    CHECK(p.pd() == Point{kX + QuadraticNumber(1), QuadraticNumber(0)});
    // Hypotenuse a–b has length 2.
    Vec hyp = p.pb() - p.pa();
    CHECK(dot(hyp, hyp) == QuadraticNumber(4));
    CHECK(p.side_length(0) == kX + QuadraticNumber(1));  // bottom x+1
    CHECK(p.side_length(1) == sqrt_of(3));               // leg
    CHECK(p.side_length(2) == kX);                       // top x
    CHECK(p.side_length(3) == QuadraticNumber(2));       // hypotenuse
    CHECK(p.corner_angles()[0] == ExactAngle::alpha());
    CHECK(p.corner_angles()[3] == ExactAngle::beta());
    CHECK(p.field_radicand() == 3);
    CHECK(p.rotation_group().order() == 12);
    // Label sequence a,b,c,d is clockwise: its shoelace is negative.
    CHECK(qn_sign(polygon_area({p.pa(), p.pb(), p.pc(), p.pd()})) == Sign::Negative);

    Prototile p4 = Prototile::trapezoid_pi4(qn(0, 1, 1, 2, 2));
    CHECK(p4.rotation_group().order() == 8);
    CHECK(p4.side_length(0) == qn(0, 1, 3, 2, 2));  // x + √2 with x = √2/2

    CHECK(Prototile::rectangle(QuadraticNumber(2), QuadraticNumber(1)).rotation_group().order() == 4);
    CHECK_THROWS(Prototile::trapezoid_pi3(QuadraticNumber(0)));
}

TEST_CASE("segment relations") {
    auto seg = [](Point a, Point b) { return Segment{a, b}; };
    CHECK(std::holds_alternative<SegDisjoint>(
        segment_relation(seg(pt(0, 0), pt(1, 0)), seg(pt(0, 1), pt(1, 1)))));
    auto ov = segment_relation(seg(pt(0, 0), pt(2, 0)), seg(pt(1, 0), pt(3, 0)));
    REQUIRE(std::holds_alternative<SegOverlap>(ov));
    CHECK(std::get<SegOverlap>(ov).s.a == pt(1, 0));
    CHECK(std::get<SegOverlap>(ov).s.b == pt(2, 0));
    auto x = segment_relation(seg(pt(0, 0), pt(1, 1)), seg(pt(1, 0), pt(0, 1)));
    REQUIRE(std::holds_alternative<SegPoint>(x));
    CHECK(std::get<SegPoint>(x).p == Point{QuadraticNumber(Rational(1, 2)), QuadraticNumber(Rational(1, 2))});
    // Endpoint touch counts as a point.
    auto t = segment_relation(seg(pt(0, 0), pt(1, 0)), seg(pt(1, 0), pt(1, 5)));
    REQUIRE(std::holds_alternative<SegPoint>(t));
    CHECK(std::get<SegPoint>(t).p == pt(1, 0));
    // Collinear but separated.
    CHECK(std::holds_alternative<SegDisjoint>(
        segment_relation(seg(pt(0, 0), pt(1, 0)), seg(pt(2, 0), pt(3, 0)))));
}

TEST_CASE("direction equivalence") {
    CHECK(direction_equiv(Vec{QuadraticNumber(1), QuadraticNumber(0)},
                          Vec{QuadraticNumber(0), QuadraticNumber(-1)}));
    CHECK(!direction_equiv(Vec{QuadraticNumber(1), QuadraticNumber(0)},
                           Vec{QuadraticNumber(1), QuadraticNumber(1)}));
    CHECK(direction_equiv(Vec{QuadraticNumber(1), sqrt_of(3)},
                          Vec{-sqrt_of(3), QuadraticNumber(1)}));

    // Equivalence relation on directions drawn from the order-12 group.
    const RotationGroup& g = RotationGroup::of_order(12);
    std::vector<Vec> dirs;
    for (int k = 0; k < 12; ++k) dirs.push_back(Vec{g.cos_at(k), g.sin_at(k)});
    for (const Vec& u : dirs) {
        CHECK(direction_equiv(u, u));
        for (const Vec& v : dirs) {
            CHECK(direction_equiv(u, v) == direction_equiv(v, u));
            for (const Vec& w : dirs)
                if (direction_equiv(u, v) && direction_equiv(v, w)) CHECK(direction_equiv(u, w));
        }
    }
}

TEST_CASE("convex containment and overlap") {
    std::vector<Point> tri = {pt(0, 0), pt(4, 0), pt(0, 4)};
    CHECK(point_in_convex(tri, pt(1, 1)) == Containment::Inside);
    CHECK(point_in_convex(tri, pt(2, 2)) == Containment::Boundary);
    CHECK(point_in_convex(tri, pt(5, 5)) == Containment::Outside);

    std::vector<Point> sq1 = {pt(0, 0), pt(2, 0), pt(2, 2), pt(0, 2)};
    std::vector<Point> sq2 = {pt(1, 1), pt(3, 1), pt(3, 3), pt(1, 3)};
    std::vector<Point> sq3 = {pt(2, 0), pt(4, 0), pt(4, 2), pt(2, 2)};  // shares an edge with sq1
    std::vector<Point> sq4 = {pt(3, 3), pt(5, 3), pt(5, 5), pt(3, 5)};  // touches sq2 at one point
    CHECK(convex_interiors_overlap(sq1, sq2));
    CHECK(!convex_interiors_overlap(sq1, sq3));
    CHECK(!convex_interiors_overlap(sq2, sq4));
    CHECK(!convex_interiors_overlap(sq1, sq4));
    CHECK(convex_interiors_overlap(sq1, sq1));
}

TEST_CASE("half plane clipping") {
    std::vector<Point> sq = {pt(0, 0), pt(4, 0), pt(4, 4), pt(0, 4)};
    // Keep the half plane left of the upward line x = 2.
    auto left = clip_half_plane(sq, pt(2, 0), Vec{QuadraticNumber(0), QuadraticNumber(1)});
    REQUIRE(left.size() == 4);
    CHECK(polygon_area(left) == QuadraticNumber(8));
    // Clip entirely away.
    auto none = clip_half_plane(sq, pt(9, 0), Vec{QuadraticNumber(0), QuadraticNumber(-1)});
    CHECK(none.empty());
    // Diagonal cut through corners yields a triangle.
    auto tri = clip_half_plane(sq, pt(0, 0), Vec{QuadraticNumber(1), QuadraticNumber(1)});
    REQUIRE(tri.size() == 3);
    CHECK(polygon_area(tri) == QuadraticNumber(8));
}

TEST_CASE("rotation index search") {
    const RotationGroup& g = RotationGroup::of_order(12);
    Vec e1{QuadraticNumber(1), QuadraticNumber(0)};
    auto k = g.index_mapping(e1, Vec{QuadraticNumber(0), QuadraticNumber(5)});
    REQUIRE(k.has_value());
    CHECK(*k == 3);
    auto none = g.index_mapping(e1, Vec{QuadraticNumber(1), QuadraticNumber(1)});
    CHECK(!none.has_value());
    auto back = g.index_mapping(Vec{QuadraticNumber(0), QuadraticNumber(1)}, e1);
    REQUIRE(back.has_value());
    CHECK(*back == 9);
}

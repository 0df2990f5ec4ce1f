#include "dissect/tiling.hpp"

#include "builders.hpp"

#include <doctest.h>

#include <algorithm>

using namespace dissect;
using namespace builders;

TEST_CASE("pair tiling is a valid square dissection") {
    Tiling t = pair_tiling();
    CHECK(t.region.is_square());
    CHECK(t.region.width == rt3());
    ValidationReport rep = validate(t);
    CHECK_MESSAGE(rep.valid, rep.summary());
    CHECK(tile_orientation(t, 0) == Orientation::Positive);
    CHECK(tile_orientation(t, 1) == Orientation::Positive);
}

TEST_CASE("two coincident squares fail with overlap and area mismatch") {
    Tiling t{Prototile::rectangle(QuadraticNumber(1), QuadraticNumber(1)),
             Region{QuadraticNumber(1), QuadraticNumber(1)},
             {},
             AngleMode::generic()};
    t.tiles.push_back(PlacedTile{0, Isometry{}});
    t.tiles.push_back(PlacedTile{1, Isometry{}});
    ValidationReport rep = validate(t);
    CHECK(!rep.valid);
    bool overlap = false, area = false;
    for (const Failure& f : rep.failures) {
        if (f.kind == Failure::Kind::Overlap && f.i == 0 && f.j == 1) overlap = true;
        if (f.kind == Failure::Kind::AreaMismatch) area = true;
    }
    CHECK(overlap);
    CHECK(area);
}

TEST_CASE("undersized tiling fails with gap and area mismatch") {
    Tiling t{Prototile::rectangle(QuadraticNumber(1), QuadraticNumber(1)),
             Region{QuadraticNumber(2), QuadraticNumber(2)},
             {},
             AngleMode::generic()};
    t.tiles.push_back(PlacedTile{0, Isometry{}});
    ValidationReport rep = validate(t);
    CHECK(!rep.valid);
    bool gap = false, area = false;
    for (const Failure& f : rep.failures) {
        if (f.kind == Failure::Kind::Gap) {
            gap = true;
            REQUIRE(f.witness.has_value());
            // The witness must sit in the region but in no tile.
            CHECK(t.region.contains(*f.witness) == Containment::Inside);
            CHECK(point_in_convex(t.tile_polygon(0), *f.witness) == Containment::Outside);
        }
        if (f.kind == Failure::Kind::AreaMismatch) area = true;
    }
    CHECK(gap);
    CHECK(area);
}

TEST_CASE("tile sticking out of the region is flagged") {
    Tiling t = grid_tiling(2, 2);
    t.tiles[3].iso.dx = QuadraticNumber(5);
    ValidationReport rep = validate(t);
    CHECK(!rep.valid);
    CHECK(std::any_of(rep.failures.begin(), rep.failures.end(), [](const Failure& f) {
        return f.kind == Failure::Kind::OutOfRegion && f.i == 3;
    }));
}

TEST_CASE("validation verdict survives permutation and square symmetries") {
    Tiling t = pair_tiling();
    std::swap(t.tiles[0], t.tiles[1]);
    t.tiles[0].id = 0;
    t.tiles[1].id = 1;
    CHECK(validate(t).valid);
    for (const Isometry& sym : region_symmetries(t.region, t.group())) {
        Tiling u = transform_tiling(t, sym);
        CHECK(validate(u).valid);
    }
    CHECK(region_symmetries(t.region, t.group()).size() == 8);
    Region rect{QuadraticNumber(2), QuadraticNumber(1)};
    CHECK(region_symmetries(rect, RotationGroup::of_order(4)).size() == 4);
}

TEST_CASE("validation is thread-count independent") {
    Tiling t = grid_tiling(3, 3);
    t.tiles[4].iso.dx += QuadraticNumber(Rational(1, 3));
    ValidationReport serial = validate(t, 1);
    ValidationReport parallel = validate(t, 4);
    REQUIRE(serial.failures.size() == parallel.failures.size());
    for (size_t i = 0; i < serial.failures.size(); ++i) {
        CHECK(serial.failures[i].kind == parallel.failures[i].kind);
        CHECK(serial.failures[i].i == parallel.failures[i].i);
        CHECK(serial.failures[i].j == parallel.failures[i].j);
    }
}

TEST_CASE("vertex and side extraction counts") {
    auto vs_pair = extract_vertices_and_sides(pair_tiling());
    CHECK(vs_pair.vertices.size() == 6);
    CHECK(vs_pair.sides.size() == 8);

    Tiling single{Prototile::rectangle(QuadraticNumber(1), QuadraticNumber(1)),
                  Region{QuadraticNumber(1), QuadraticNumber(1)},
                  {PlacedTile{0, Isometry{}}},
                  AngleMode::generic()};
    auto vs1 = extract_vertices_and_sides(single);
    CHECK(vs1.vertices.size() == 4);
    CHECK(vs1.sides.size() == 4);

    auto vs4 = extract_vertices_and_sides(grid_tiling(2, 2));
    CHECK(vs4.vertices.size() == 9);
    CHECK(vs4.sides.size() == 16);

    // Vertices come out sorted and deduplicated.
    CHECK(std::is_sorted(vs4.vertices.begin(), vs4.vertices.end(), point_less));
}

TEST_CASE("arrangement faces partition the region") {
    for (const Tiling& t : {pair_tiling(), grid_tiling(2, 3), brick_tiling()}) {
        auto faces = arrangement_faces(t);
        QuadraticNumber total(0);
        for (const auto& f : faces) {
            QuadraticNumber a = polygon_area(f);
            CHECK(qn_sign(a) == Sign::Positive);
            total += a;
        }
        CHECK(total == t.region.area());
    }
}

TEST_CASE("save and load round trip") {
    Tiling t = pair_tiling();
    std::string bytes = save_tiling(t);
    Tiling u = load_tiling(bytes);
    CHECK(u.size() == 2);
    CHECK(u.prototile == t.prototile);
    CHECK(u.region.width == t.region.width);
    CHECK(save_tiling(u) == bytes);  // fixed point
    CHECK(validate(u).valid);

    Tiling g = grid_tiling(2, 2);
    CHECK(save_tiling(load_tiling(save_tiling(g))) == save_tiling(g));
}

TEST_CASE("load rejects malformed documents with pointed errors") {
    CHECK_THROWS_AS(load_tiling("{"), LoadError);
    CHECK_THROWS_AS(load_tiling("[]"), LoadError);
    CHECK_THROWS_AS(load_tiling("{}"), LoadError);

    auto throws_containing = [](const std::string& doc, const std::string& needle) {
        try {
            load_tiling(doc);
        } catch (const LoadError& e) {
            return std::string(e.what()).find(needle) != std::string::npos;
        }
        return false;
    };

    std::string good = save_tiling(pair_tiling());
    // Mismatched radicand: field says 2, coordinates carry √3.
    std::string bad = good;
    bad.replace(bad.find("\"field\": 3"), 10, "\"field\": 2");
    CHECK(throws_containing(bad, "radicand mismatch"));

    // Degenerate prototile x = 0.
    Tiling t = pair_tiling();
    std::string doc = save_tiling(t);
    auto xpos = doc.find("\"x\"");
    REQUIRE(xpos != std::string::npos);
    std::string degenerate = doc.substr(0, xpos) +
                             "\"x\": {\"rat\": [0,1], \"rad\": [0,1], \"sqrt\": 0}" +
                             doc.substr(doc.find('}', xpos) + 1);
    CHECK_THROWS_AS(load_tiling(degenerate), LoadError);

    // Unrealizable wedge.
    std::string pi5 = good;
    pi5.replace(pi5.find("\"q\": 3"), 6, "\"q\": 5");
    CHECK(throws_containing(pi5, "wedges"));

    // Rotation outside the group.
    std::string rot = good;
    rot.replace(rot.find("\"rot\": 6"), 8, "\"rot\": 17");
    CHECK(throws_containing(rot, "group"));
}

TEST_CASE("canonical save order is position-sorted") {
    Tiling t = pair_tiling();
    std::swap(t.tiles[0], t.tiles[1]);
    std::string a = save_tiling(t);
    std::swap(t.tiles[0], t.tiles[1]);
    std::string b = save_tiling(t);
    CHECK(a == b);
}

TEST_CASE("svg rendering is deterministic with exact decimals") {
    Tiling t = pair_tiling();
    RenderOverlays ov;
    for (int j = 0; j < t.size(); ++j)
        ov.arrows.emplace_back(t.image(j, t.prototile.pa()), t.image(j, t.prototile.pb()));
    std::string svg1 = render_svg(t, ov);
    std::string svg2 = render_svg(t, ov);
    CHECK(svg1 == svg2);
    auto count = [&](const std::string& hay, const std::string& needle) {
        size_t n = 0;
        for (size_t p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
        return n;
    };
    CHECK(count(svg1, "<polygon") == 2);
    CHECK(count(svg1, "marker-end") == 2);
    std::string plain = render_svg(t);
    CHECK(count(plain, "<polygon") == 2);
    CHECK(count(plain, "marker-end") == 0);

    CHECK(svg_number(sqrt_of(3)) == "1.73205080757");
    CHECK(svg_number(QuadraticNumber(0)) == "0");
    CHECK(svg_number(QuadraticNumber(Rational(1, 3))) == "0.333333333333");
    CHECK(svg_number(QuadraticNumber(-2) * sqrt_of(3)) == "-3.46410161514");
    CHECK(svg_number(QuadraticNumber(1234)) == "1234.0");
}

TEST_CASE("other fixtures validate") {
    CHECK(validate(two_pair_tiling()).valid);
    CHECK(validate(pi4_square_tiling()).valid);
    CHECK(validate(brick_tiling()).valid);
    CHECK(validate(grid_tiling(5, 5)).valid);
}

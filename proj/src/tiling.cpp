#include "dissect/tiling.hpp"

#include "dissect/serialize.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <set>

namespace dissect {

std::vector<Point> Region::corners() const {
    QuadraticNumber z(0);
    return {Point{z, z}, Point{width, z}, Point{width, height}, Point{z, height}};
}

Containment Region::contains(const Point& p) const {
    Sign sx0 = qn_sign(p.x), sy0 = qn_sign(p.y);
    Sign sx1 = qn_sign(width - p.x), sy1 = qn_sign(height - p.y);
    if (sx0 == Sign::Negative || sy0 == Sign::Negative || sx1 == Sign::Negative ||
        sy1 == Sign::Negative)
        return Containment::Outside;
    if (sx0 == Sign::Zero || sy0 == Sign::Zero || sx1 == Sign::Zero || sy1 == Sign::Zero)
        return Containment::Boundary;
    return Containment::Inside;
}

Point Tiling::image(int j, const Point& p) const {
    return apply_isometry(tiles[j].iso, p, group());
}

std::vector<Point> Tiling::tile_vertex_images(int j) const {
    std::vector<Point> out;
    out.reserve(prototile.boundary().size());
    for (const Point& v : prototile.boundary()) out.push_back(image(j, v));
    return out;
}

std::vector<Point> Tiling::tile_polygon(int j) const {
    std::vector<Point> out = tile_vertex_images(j);
    if (tiles[j].iso.reflect) std::reverse(out.begin(), out.end());
    return out;
}

Orientation tile_orientation(const Tiling& t, int j) {
    if (t.prototile.kind() != Prototile::Kind::RightTrapezoid)
        throw std::domain_error("tile_orientation: prototile has no a,b,c,d labels");
    std::vector<Point> labels = {t.image(j, t.prototile.pa()), t.image(j, t.prototile.pb()),
                                 t.image(j, t.prototile.pc()), t.image(j, t.prototile.pd())};
    Sign s = qn_sign(polygon_area(labels));
    if (s == Sign::Zero) throw std::logic_error("tile_orientation: degenerate image");
    return s == Sign::Negative ? Orientation::Positive : Orientation::Negative;
}

namespace {

std::string point_str(const Point& p) { return p.str(); }

}  // namespace

std::string ValidationReport::summary() const {
    if (valid) return "valid";
    std::string s;
    for (const Failure& f : failures) {
        if (!s.empty()) s += "; ";
        switch (f.kind) {
            case Failure::Kind::Overlap:
                s += "overlap(" + std::to_string(f.i) + "," + std::to_string(f.j) + ")";
                break;
            case Failure::Kind::Gap:
                s += "gap(" + (f.witness ? point_str(*f.witness) : "?") + ")";
                break;
            case Failure::Kind::OutOfRegion:
                s += "outOfRegion(" + std::to_string(f.i) + ")";
                break;
            case Failure::Kind::AreaMismatch:
                s += "areaMismatch";
                break;
        }
        if (!f.detail.empty()) s += " [" + f.detail + "]";
    }
    return s;
}

std::vector<std::vector<Point>> arrangement_faces(const Tiling& t) {
    std::set<LineKey> lines;
    for (int j = 0; j < t.size(); ++j) {
        std::vector<Point> poly = t.tile_polygon(j);
        for (size_t i = 0; i < poly.size(); ++i) {
            const Point& p = poly[i];
            const Point& q = poly[(i + 1) % poly.size()];
            lines.insert(canonical_line(p, q - p));
        }
    }
    std::vector<std::vector<Point>> faces = {t.region.corners()};
    for (const LineKey& L : lines) {
        // Rebuild p/dir from the canonical coefficients a·x + b·y = c.
        Point on = L.a.is_zero() ? Point{QuadraticNumber(0), L.c / L.b}
                                 : Point{L.c / L.a, QuadraticNumber(0)};
        Vec dir{L.b, -L.a};
        std::vector<std::vector<Point>> next;
        for (const std::vector<Point>& f : faces) {
            std::vector<Point> pos = clip_half_plane(f, on, dir);
            std::vector<Point> neg = clip_half_plane(f, on, -dir);
            if (!pos.empty()) next.push_back(std::move(pos));
            if (!neg.empty()) next.push_back(std::move(neg));
        }
        faces = std::move(next);
    }
    return faces;
}

ValidationReport validate(const Tiling& t, int threads) {
    ValidationReport rep;
    if (t.tiles.empty()) {
        rep.failures.push_back({Failure::Kind::AreaMismatch, -1, -1, std::nullopt, "no tiles"});
        return rep;
    }

    // Stage 1: exact area bookkeeping.
    QuadraticNumber total(0);
    QuadraticNumber tile_area = t.prototile.area();
    total = tile_area * QuadraticNumber(Rational(t.size()));
    if (!(total == t.region.area()))
        rep.failures.push_back({Failure::Kind::AreaMismatch, -1, -1, std::nullopt,
                                total.str() + " != " + t.region.area().str()});

    // Containment: every tile inside the region.
    std::vector<std::vector<Point>> polys;
    polys.reserve(t.size());
    for (int j = 0; j < t.size(); ++j) polys.push_back(t.tile_polygon(j));
    for (int j = 0; j < t.size(); ++j)
        for (const Point& v : polys[j])
            if (t.region.contains(v) == Containment::Outside) {
                rep.failures.push_back({Failure::Kind::OutOfRegion, j, -1, v, ""});
                break;
            }

    // Stage 2: pairwise interior disjointness (parallel over pair chunks;
    // results merged in index order so the report is schedule-independent).
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < t.size(); ++i)
        for (int j = i + 1; j < t.size(); ++j) pairs.emplace_back(i, j);
    int nthreads = std::max(1, threads);
    std::vector<std::future<std::vector<std::pair<int, int>>>> futs;
    size_t chunk = (pairs.size() + nthreads - 1) / std::max<size_t>(1, nthreads);
    for (int w = 0; w < nthreads && chunk > 0; ++w) {
        size_t lo = w * chunk, hi = std::min(pairs.size(), lo + chunk);
        if (lo >= hi) break;
        futs.push_back(std::async(std::launch::async, [&, lo, hi] {
            std::vector<std::pair<int, int>> bad;
            for (size_t k = lo; k < hi; ++k)
                if (convex_interiors_overlap(polys[pairs[k].first], polys[pairs[k].second]))
                    bad.push_back(pairs[k]);
            return bad;
        }));
    }
    std::vector<std::pair<int, int>> overlaps;
    for (auto& f : futs) {
        auto part = f.get();
        overlaps.insert(overlaps.end(), part.begin(), part.end());
    }
    std::sort(overlaps.begin(), overlaps.end());
    for (auto [i, j] : overlaps)
        rep.failures.push_back({Failure::Kind::Overlap, i, j, std::nullopt, ""});

    // Stage 3: coverage via one witness point per arrangement face.
    for (const std::vector<Point>& face : arrangement_faces(t)) {
        Point w = polygon_centroid_vertexmean(face);
        int covered = 0;
        for (int j = 0; j < t.size(); ++j)
            if (point_in_convex(polys[j], w) == Containment::Inside) ++covered;
        if (covered == 0)
            rep.failures.push_back({Failure::Kind::Gap, -1, -1, w, ""});
        // covered >= 2 is already reported by stage 2.
    }

    rep.valid = rep.failures.empty();
    return rep;
}

VerticesAndSides extract_vertices_and_sides(const Tiling& t) {
    VerticesAndSides out;
    std::set<int> dummy;
    std::vector<Point> all;
    for (int j = 0; j < t.size(); ++j) {
        std::vector<Point> imgs = t.tile_vertex_images(j);
        for (const Point& p : imgs) all.push_back(p);
        int n = static_cast<int>(imgs.size());
        for (int i = 0; i < n; ++i)
            out.sides.push_back(PlacedSide{j, i, Segment{imgs[i], imgs[(i + 1) % n]},
                                           t.prototile.side_tags()[i]});
    }
    std::sort(all.begin(), all.end(), point_less);
    for (const Point& p : all)
        if (out.vertices.empty() || !(out.vertices.back() == p)) out.vertices.push_back(p);
    return out;
}

std::vector<Isometry> region_symmetries(const Region& r, const RotationGroup& g) {
    int quarter = g.order() / 4;
    QuadraticNumber half(Rational(1, 2));
    QuadraticNumber cx = r.width * half, cy = r.height * half;
    std::vector<Isometry> out;
    auto about_center = [&](int rot, bool reflect) {
        // p ↦ R·S·(p − c) + c, expressed with translation c − R·S·c.
        Isometry lin{rot, reflect, QuadraticNumber(0), QuadraticNumber(0)};
        Vec rc = apply_linear(lin, Vec{cx, cy}, g);
        return Isometry{rot, reflect, cx - rc.dx, cy - rc.dy};
    };
    if (r.is_square()) {
        for (int i = 0; i < 4; ++i) {
            out.push_back(about_center(i * quarter, false));
            out.push_back(about_center(i * quarter, true));
        }
    } else {
        out.push_back(about_center(0, false));
        out.push_back(about_center(2 * quarter, false));
        out.push_back(about_center(0, true));
        out.push_back(about_center(2 * quarter, true));
    }
    return out;
}

Tiling transform_tiling(const Tiling& t, const Isometry& sym) {
    Tiling out = t;
    for (PlacedTile& p : out.tiles) p.iso = compose(sym, p.iso, t.group());
    return out;
}

namespace {

const char* kSchemaHint = " (expected {field, region, prototile, angle, tiles})";

ojson get_field(const ojson& j, const char* name) {
    if (!j.contains(name)) throw LoadError(std::string("missing field '") + name + "'" + kSchemaHint);
    return j.at(name);
}

}  // namespace

Tiling load_tiling(const std::string& bytes) {
    ojson j;
    try {
        j = ojson::parse(bytes);
    } catch (const std::exception& e) {
        throw LoadError(std::string("not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw LoadError(std::string("top level must be an object") + kSchemaHint);

    int field = get_field(j, "field").get<int>();

    ojson jr = get_field(j, "region");
    Region region{qn_from_json(get_field(jr, "w")), qn_from_json(get_field(jr, "h"))};
    if (qn_sign(region.width) != Sign::Positive || qn_sign(region.height) != Sign::Positive)
        throw LoadError("region: sides must be positive");

    ojson ja = get_field(j, "angle");
    std::string mode = get_field(ja, "mode").get<std::string>();
    AngleMode angle;
    if (mode == "bound") {
        long long p = get_field(ja, "p").get<long long>();
        long long q = get_field(ja, "q").get<long long>();
        try {
            angle = AngleMode::bound(p, q);
        } catch (const std::exception& e) {
            throw LoadError(std::string("angle: ") + e.what());
        }
    } else if (mode != "generic") {
        throw LoadError("angle.mode: expected 'generic' or 'bound'");
    }

    ojson jp = get_field(j, "prototile");
    std::string kind = get_field(jp, "kind").get<std::string>();
    Prototile proto = Prototile::rectangle(QuadraticNumber(1), QuadraticNumber(1));
    try {
        if (kind == "trapezoid") {
            QuadraticNumber x = qn_from_json(get_field(jp, "x"));
            if (qn_sign(x) != Sign::Positive)
                throw LoadError("prototile: trapezoid needs x > 0");
            if (angle.kind != AngleMode::Kind::BoundAlpha)
                throw LoadError("prototile: trapezoid placement needs a bound wedge");
            if (angle.p == 1 && angle.q == 3) proto = Prototile::trapezoid_pi3(x);
            else if (angle.p == 1 && angle.q == 4) proto = Prototile::trapezoid_pi4(x);
            else throw LoadError("prototile: only wedges of 1/3·π and 1/4·π have exact placements");
        } else if (kind == "rectangle") {
            proto = Prototile::rectangle(qn_from_json(get_field(jp, "w")),
                                         qn_from_json(get_field(jp, "h")));
        } else if (kind == "polygon") {
            std::vector<Point> verts;
            for (const ojson& v : get_field(jp, "vertices")) verts.push_back(point_from_json(v));
            proto = Prototile::convex_polygon(std::move(verts));
        } else {
            throw LoadError("prototile.kind: expected trapezoid|rectangle|polygon");
        }
    } catch (const LoadError&) {
        throw;
    } catch (const std::exception& e) {
        throw LoadError(std::string("prototile: ") + e.what());
    }

    Tiling t{std::move(proto), region, {}, angle};
    if (t.prototile.field_radicand() != 0 && field != t.prototile.field_radicand())
        throw LoadError("field: radicand mismatch with prototile");

    int order = t.group().order();
    int idx = 0;
    for (const ojson& ji : get_field(j, "tiles")) {
        Isometry iso;
        try {
            iso = isometry_from_json(ji);
        } catch (const std::exception& e) {
            throw LoadError("tiles[" + std::to_string(idx) + "]: " + e.what());
        }
        if (iso.rot < 0 || iso.rot >= order)
            throw LoadError("tiles[" + std::to_string(idx) + "]: rot outside group of order " +
                            std::to_string(order));
        for (const QuadraticNumber* c : {&iso.dx, &iso.dy})
            if (c->d() != 0 && field != 0 && c->d() != field)
                throw LoadError("tiles[" + std::to_string(idx) + "]: radicand mismatch");
        t.tiles.push_back(PlacedTile{idx++, iso});
    }
    if (t.tiles.empty()) throw LoadError("tiles: need at least one");
    return t;
}

std::string save_tiling(const Tiling& t) {
    ojson j;
    j["field"] = t.prototile.field_radicand();
    j["region"] = ojson{{"w", to_json(t.region.width)}, {"h", to_json(t.region.height)}};
    switch (t.prototile.kind()) {
        case Prototile::Kind::RightTrapezoid:
            j["prototile"] = ojson{{"kind", "trapezoid"}, {"x", to_json(t.prototile.x())}};
            break;
        case Prototile::Kind::Rectangle:
            j["prototile"] = ojson{{"kind", "rectangle"},
                                   {"w", to_json(t.prototile.rect_w())},
                                   {"h", to_json(t.prototile.rect_h())}};
            break;
        case Prototile::Kind::ConvexPolygon: {
            ojson verts = ojson::array();
            for (const Point& p : t.prototile.boundary()) verts.push_back(to_json(p));
            j["prototile"] = ojson{{"kind", "polygon"}, {"vertices", verts}};
            break;
        }
    }
    if (t.angleMode.kind == AngleMode::Kind::BoundAlpha)
        j["angle"] = ojson{{"mode", "bound"}, {"p", t.angleMode.p}, {"q", t.angleMode.q}};
    else
        j["angle"] = ojson{{"mode", "generic"}};

    std::vector<PlacedTile> sorted = t.tiles;
    std::stable_sort(sorted.begin(), sorted.end(), [](const PlacedTile& a, const PlacedTile& b) {
        if (a.iso.dy != b.iso.dy) return a.iso.dy < b.iso.dy;
        if (a.iso.dx != b.iso.dx) return a.iso.dx < b.iso.dx;
        if (a.iso.rot != b.iso.rot) return a.iso.rot < b.iso.rot;
        return a.iso.reflect < b.iso.reflect;
    });
    ojson tiles = ojson::array();
    for (const PlacedTile& p : sorted) tiles.push_back(to_json(p.iso));
    j["tiles"] = tiles;
    return j.dump(2) + "\n";
}

}  // namespace dissect

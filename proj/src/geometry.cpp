#include "dissect/geometry.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace dissect {

bool point_less(const Point& a, const Point& b) {
    if (a.y != b.y) return a.y < b.y;
    return a.x < b.x;
}

QuadraticNumber cross(const Vec& u, const Vec& v) { return u.dx * v.dy - u.dy * v.dx; }
QuadraticNumber dot(const Vec& u, const Vec& v) { return u.dx * v.dx + u.dy * v.dy; }

Sign orient(const Point& a, const Point& b, const Point& c) {
    return qn_sign(cross(b - a, c - a));
}

bool direction_equiv(const Vec& u, const Vec& v) {
    if (u.is_zero() || v.is_zero()) throw std::domain_error("direction_equiv: zero direction");
    return cross(u, v).is_zero() || dot(u, v).is_zero();
}

bool point_on_segment(const Point& p, const Segment& s) {
    if (orient(s.a, s.b, p) != Sign::Zero) return false;
    Vec d = s.b - s.a;
    QuadraticNumber t = dot(p - s.a, d);
    return qn_sign(t) != Sign::Negative && t <= dot(d, d);
}

SegRelation segment_relation(const Segment& s1, const Segment& s2) {
    Vec d1 = s1.b - s1.a, d2 = s2.b - s2.a;
    if (d1.is_zero() || d2.is_zero())
        throw std::domain_error("segment_relation: degenerate segment");
    QuadraticNumber denom = cross(d1, d2);
    if (!denom.is_zero()) {
        // Proper lines crossing at one point; in-range checks via parameters.
        Vec w = s2.a - s1.a;
        QuadraticNumber t = cross(w, d2);  // along s1, scaled by denom
        QuadraticNumber u = cross(w, d1);  // along s2, scaled by denom
        auto in01 = [&](const QuadraticNumber& v) {
            if (qn_sign(denom) == Sign::Positive)
                return qn_sign(v) != Sign::Negative && v <= denom;
            return qn_sign(v) != Sign::Positive && v >= denom;
        };
        if (!in01(t) || !in01(u)) return SegDisjoint{};
        QuadraticNumber tt = t / denom;
        return SegPoint{Point{s1.a.x + d1.dx * tt, s1.a.y + d1.dy * tt}};
    }
    if (!cross(d1, s2.a - s1.a).is_zero()) return SegDisjoint{};  // parallel, distinct lines
    // Collinear: project endpoints of s2 on s1's parameter line.
    QuadraticNumber len2 = dot(d1, d1);
    QuadraticNumber ta = dot(s2.a - s1.a, d1), tb = dot(s2.b - s1.a, d1);
    if (ta > tb) std::swap(ta, tb);
    QuadraticNumber lo = ta < QuadraticNumber(0) ? QuadraticNumber(0) : ta;
    QuadraticNumber hi = tb < len2 ? tb : len2;
    Sign c = qn_sign(hi - lo);
    if (c == Sign::Negative) return SegDisjoint{};
    auto at = [&](const QuadraticNumber& t) {
        QuadraticNumber tt = t / len2;
        return Point{s1.a.x + d1.dx * tt, s1.a.y + d1.dy * tt};
    };
    if (c == Sign::Zero) return SegPoint{at(lo)};
    return SegOverlap{Segment{at(lo), at(hi)}};
}

QuadraticNumber polygon_area(const std::vector<Point>& poly) {
    if (poly.size() < 3) throw std::domain_error("polygon_area: fewer than 3 vertices");
    QuadraticNumber s(0);
    for (size_t i = 0; i < poly.size(); ++i) {
        const Point& p = poly[i];
        const Point& q = poly[(i + 1) % poly.size()];
        s += p.x * q.y - q.x * p.y;
    }
    return s * QuadraticNumber(Rational(1, 2));
}

Containment point_in_convex(const std::vector<Point>& ccw, const Point& p) {
    bool boundary = false;
    for (size_t i = 0; i < ccw.size(); ++i) {
        Sign s = orient(ccw[i], ccw[(i + 1) % ccw.size()], p);
        if (s == Sign::Negative) return Containment::Outside;
        if (s == Sign::Zero) boundary = true;
    }
    if (!boundary) return Containment::Inside;
    // On some edge line; confirm it's within the hull (it is, since no side
    // reported Outside), distinguish boundary from inside for degenerate hulls.
    return Containment::Boundary;
}

namespace {

// All of `pts` within the closed negative side of the directed line a→b?
bool all_right_or_on(const Point& a, const Point& b, const std::vector<Point>& pts) {
    for (const Point& p : pts)
        if (orient(a, b, p) == Sign::Positive) return false;
    return true;
}

}  // namespace

bool convex_interiors_overlap(const std::vector<Point>& a, const std::vector<Point>& b) {
    // Separating-axis test: interiors are disjoint iff some edge of either
    // polygon has the entire other polygon on its closed outer side.
    for (size_t i = 0; i < a.size(); ++i)
        if (all_right_or_on(a[i], a[(i + 1) % a.size()], b)) return false;
    for (size_t i = 0; i < b.size(); ++i)
        if (all_right_or_on(b[i], b[(i + 1) % b.size()], a)) return false;
    return true;
}

std::vector<Point> clip_half_plane(const std::vector<Point>& ccw, const Point& on, const Vec& dir) {
    std::vector<Point> out;
    size_t n = ccw.size();
    auto side = [&](const Point& p) { return qn_sign(cross(dir, p - on)); };
    for (size_t i = 0; i < n; ++i) {
        const Point& cur = ccw[i];
        const Point& nxt = ccw[(i + 1) % n];
        Sign sc = side(cur), sn = side(nxt);
        if (sc != Sign::Negative) out.push_back(cur);
        if ((sc == Sign::Positive && sn == Sign::Negative) ||
            (sc == Sign::Negative && sn == Sign::Positive)) {
            Vec d = nxt - cur;
            QuadraticNumber t = cross(dir, on - cur) / cross(dir, d);
            out.push_back(Point{cur.x + d.dx * t, cur.y + d.dy * t});
        }
    }
    // Drop consecutive duplicates introduced by vertices on the line.
    std::vector<Point> dedup;
    for (const Point& p : out)
        if (dedup.empty() || !(dedup.back() == p)) dedup.push_back(p);
    while (dedup.size() > 1 && dedup.front() == dedup.back()) dedup.pop_back();
    if (dedup.size() < 3) return {};
    return dedup;
}

Point polygon_centroid_vertexmean(const std::vector<Point>& poly) {
    QuadraticNumber sx(0), sy(0);
    for (const Point& p : poly) { sx += p.x; sy += p.y; }
    QuadraticNumber n(Rational(1, static_cast<long long>(poly.size())));
    return Point{sx * n, sy * n};
}

bool LineKey::operator<(const LineKey& o) const {
    if (a != o.a) return a < o.a;
    if (b != o.b) return b < o.b;
    return c < o.c;
}

LineKey canonical_line(const Point& p, const Vec& dir) {
    if (dir.is_zero()) throw std::domain_error("canonical_line: zero direction");
    QuadraticNumber a = -dir.dy, b = dir.dx;
    QuadraticNumber c = a * p.x + b * p.y;
    const QuadraticNumber& lead = a.is_zero() ? b : a;
    return LineKey{a / lead, b / lead, c / lead};
}

RotationGroup::RotationGroup(int order) : order_(order) {
    QuadraticNumber c, s;
    switch (order) {
        case 4: c = QuadraticNumber(0); s = QuadraticNumber(1); break;
        case 8: c = QuadraticNumber(Rational(0), Rational(1, 2), 2); s = c; break;
        case 12:
            c = QuadraticNumber(Rational(0), Rational(1, 2), 3);
            s = QuadraticNumber(Rational(1, 2));
            break;
        default: throw std::domain_error("RotationGroup: unsupported order");
    }
    QuadraticNumber ck(1), sk(0);
    for (int k = 0; k < order; ++k) {
        table_.emplace_back(ck, sk);
        QuadraticNumber cn = ck * c - sk * s;
        QuadraticNumber sn = ck * s + sk * c;
        ck = cn;
        sk = sn;
    }
    if (!(ck == QuadraticNumber(1)) || !sk.is_zero())
        throw std::logic_error("RotationGroup: table does not close");
}

const RotationGroup& RotationGroup::of_order(int order) {
    static const RotationGroup g4(4), g8(8), g12(12);
    switch (order) {
        case 4: return g4;
        case 8: return g8;
        case 12: return g12;
    }
    throw std::domain_error("RotationGroup: unsupported order");
}

std::optional<int> RotationGroup::index_mapping(const Vec& u, const Vec& v) const {
    for (int k = 0; k < order_; ++k) {
        Vec ru{cos_at(k) * u.dx - sin_at(k) * u.dy, sin_at(k) * u.dx + cos_at(k) * u.dy};
        if (cross(ru, v).is_zero() && qn_sign(dot(ru, v)) == Sign::Positive) return k;
    }
    return std::nullopt;
}

Point apply_isometry(const Isometry& iso, const Point& p, const RotationGroup& g) {
    Vec v = apply_linear(iso, Vec{p.x, p.y}, g);
    return Point{v.dx + iso.dx, v.dy + iso.dy};
}

Vec apply_linear(const Isometry& iso, const Vec& v, const RotationGroup& g) {
    QuadraticNumber x = v.dx, y = v.dy;
    if (iso.reflect) y = -y;
    const QuadraticNumber& c = g.cos_at(iso.rot);
    const QuadraticNumber& s = g.sin_at(iso.rot);
    return Vec{c * x - s * y, s * x + c * y};
}

Isometry compose(const Isometry& g, const Isometry& f, const RotationGroup& grp) {
    Isometry out;
    int k = g.reflect ? -f.rot : f.rot;
    out.rot = ((g.rot + k) % grp.order() + grp.order()) % grp.order();
    out.reflect = g.reflect != f.reflect;
    Vec t = apply_linear(g, Vec{f.dx, f.dy}, grp);
    out.dx = t.dx + g.dx;
    out.dy = t.dy + g.dy;
    return out;
}

std::string side_tag_name(SideTag t) {
    switch (t) {
        case SideTag::X: return "x";
        case SideTag::XP1: return "x+1";
        case SideTag::Two: return "2";
        case SideTag::Leg: return "leg";
        case SideTag::RectW: return "w";
        case SideTag::RectH: return "h";
        case SideTag::Poly: return "side";
    }
    return "?";
}

Prototile Prototile::right_trapezoid(QuadraticNumber x, QuadraticNumber cosA, QuadraticNumber sinA) {
    if (qn_sign(x) != Sign::Positive) throw std::domain_error("Prototile: x must be positive");
    if (qn_sign(cosA) != Sign::Positive || qn_sign(sinA) != Sign::Positive)
        throw std::domain_error("Prototile: wedge must be acute");
    if (!(cosA * cosA + sinA * sinA == QuadraticNumber(1)))
        throw std::domain_error("Prototile: cos²+sin² must be 1");
    Prototile t;
    t.kind_ = Kind::RightTrapezoid;
    t.x_ = x;
    t.cosA_ = cosA;
    t.sinA_ = sinA;
    QuadraticNumber two(2);
    QuadraticNumber bx = two * cosA, ty = two * sinA;
    Point a{QuadraticNumber(0), QuadraticNumber(0)};
    Point b{bx, ty};
    Point c{x + bx, ty};
    Point d{x + bx, QuadraticNumber(0)};
    t.boundary_ = {a, d, c, b};
    t.angles_ = {ExactAngle::alpha(), ExactAngle::right(), ExactAngle::right(), ExactAngle::beta()};
    t.tags_ = {SideTag::XP1, SideTag::Leg, SideTag::X, SideTag::Two};
    return t;
}

Prototile Prototile::trapezoid_pi3(QuadraticNumber x) {
    return right_trapezoid(std::move(x), QuadraticNumber(Rational(1, 2)),
                           QuadraticNumber(Rational(0), Rational(1, 2), 3));
}

Prototile Prototile::trapezoid_pi4(QuadraticNumber x) {
    QuadraticNumber h(Rational(0), Rational(1, 2), 2);
    return right_trapezoid(std::move(x), h, h);
}

Prototile Prototile::rectangle(QuadraticNumber w, QuadraticNumber h) {
    if (qn_sign(w) != Sign::Positive || qn_sign(h) != Sign::Positive)
        throw std::domain_error("Prototile: rectangle sides must be positive");
    Prototile t;
    t.kind_ = Kind::Rectangle;
    t.w_ = w;
    t.h_ = h;
    QuadraticNumber z(0);
    t.boundary_ = {Point{z, z}, Point{w, z}, Point{w, h}, Point{z, h}};
    t.angles_ = std::vector<ExactAngle>(4, ExactAngle::right());
    t.tags_ = {SideTag::RectW, SideTag::RectH, SideTag::RectW, SideTag::RectH};
    return t;
}

Prototile Prototile::convex_polygon(std::vector<Point> ccw) {
    if (ccw.size() < 3) throw std::domain_error("Prototile: need at least 3 vertices");
    size_t n = ccw.size();
    for (size_t i = 0; i < n; ++i)
        if (orient(ccw[i], ccw[(i + 1) % n], ccw[(i + 2) % n]) != Sign::Positive)
            throw std::domain_error("Prototile: polygon must be strictly convex counterclockwise");
    Prototile t;
    t.kind_ = Kind::ConvexPolygon;
    t.boundary_ = std::move(ccw);
    t.tags_ = std::vector<SideTag>(n, SideTag::Poly);
    return t;
}

QuadraticNumber Prototile::side_length(int i) const {
    const Point& p = boundary_[i];
    const Point& q = boundary_[(i + 1) % boundary_.size()];
    switch (tags_[i]) {
        case SideTag::X: return x_;
        case SideTag::XP1: return x_ + QuadraticNumber(2) * cosA_;
        case SideTag::Two: return QuadraticNumber(2);
        case SideTag::Leg: return QuadraticNumber(2) * sinA_;
        case SideTag::RectW: return w_;
        case SideTag::RectH: return h_;
        case SideTag::Poly: break;
    }
    // Length only when the squared length is a perfect square in the field.
    QuadraticNumber sq = dot(q - p, q - p);
    if (sq.is_rational() && sq.rat().is_integer()) {
        BigInt r = boost::multiprecision::sqrt(sq.rat().num());
        if (r * r == sq.rat().num()) return QuadraticNumber(Rational(r));
    }
    throw std::domain_error("side_length: not representable");
}

QuadraticNumber Prototile::area() const {
    return polygon_area(boundary_);
}

const RotationGroup& Prototile::rotation_group() const {
    switch (kind_) {
        case Kind::RightTrapezoid: {
            int d = field_radicand();
            if (d == 3) return RotationGroup::of_order(12);
            if (d == 2) return RotationGroup::of_order(8);
            throw std::domain_error("rotation_group: unsupported trapezoid field");
        }
        case Kind::Rectangle:
        case Kind::ConvexPolygon: return RotationGroup::of_order(4);
    }
    throw std::logic_error("rotation_group: bad kind");
}

int Prototile::field_radicand() const {
    if (kind_ == Kind::RightTrapezoid) {
        if (cosA_.d() != 0) return cosA_.d();
        if (sinA_.d() != 0) return sinA_.d();
        return x_.d();
    }
    int d = 0;
    for (const Point& p : boundary_) {
        for (int dd : {p.x.d(), p.y.d()}) {
            if (dd == 0) continue;
            if (d == 0) d = dd;
            else if (d != dd) throw std::domain_error("field_radicand: mixed radicands");
        }
    }
    return d;
}

bool Prototile::operator==(const Prototile& o) const {
    return kind_ == o.kind_ && boundary_ == o.boundary_;
}

}  // namespace dissect

#include "dissect/tiling.hpp"

#include <sstream>

namespace dissect {

std::string svg_number(const QuadraticNumber& v) {
    if (v.is_zero()) return "0";
    QuadraticNumber a = qn_sign(v) == Sign::Negative ? -v : v;
    // Order of magnitude: e with 10^e <= a < 10^{e+1}, located exactly.
    int e = 0;
    double approx = a.to_double();
    if (approx > 0) e = static_cast<int>(std::floor(std::log10(approx)));
    auto pow10 = [](int k) {
        Rational r(1);
        for (int i = 0; i < k; ++i) r *= Rational(10);
        for (int i = 0; i > k; --i) r /= Rational(10);
        return QuadraticNumber(r);
    };
    while (a < pow10(e)) --e;
    while (a >= pow10(e + 1)) ++e;
    int frac = 11 - e;
    if (frac < 0) frac = 0;
    return qn_decimal(v, frac);
}

namespace {

const char* kPalette[] = {"#cfe8f3", "#f9d5c0", "#d8ecc5", "#f3d1e5", "#fdf3bf",
                          "#d5d8f0", "#c9ece8", "#f4c6c6", "#e3dbc8", "#d7e3f4"};

struct Mapper {
    QuadraticNumber scale, margin, H;
    std::string x(const QuadraticNumber& v) const { return svg_number(margin + scale * v); }
    std::string y(const QuadraticNumber& v) const { return svg_number(margin + scale * (H - v)); }
};

}  // namespace

std::string render_svg(const Tiling& t, const RenderOverlays& ov) {
    Mapper m{QuadraticNumber(120), QuadraticNumber(24), t.region.height};
    QuadraticNumber w = m.margin * QuadraticNumber(2) + m.scale * t.region.width;
    QuadraticNumber h = m.margin * QuadraticNumber(2) + m.scale * t.region.height;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << svg_number(w) << "\" height=\""
        << svg_number(h) << "\" viewBox=\"0 0 " << svg_number(w) << " " << svg_number(h)
        << "\">\n";
    out << "<defs><marker id=\"tip\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" "
           "markerWidth=\"7\" markerHeight=\"7\" orient=\"auto-start-reverse\">"
           "<path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"#8a2b2b\"/></marker></defs>\n";

    out << "<rect x=\"" << svg_number(m.margin) << "\" y=\"" << svg_number(m.margin)
        << "\" width=\"" << svg_number(m.scale * t.region.width) << "\" height=\""
        << svg_number(m.scale * t.region.height)
        << "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1.5\"/>\n";

    for (int j = 0; j < t.size(); ++j) {
        out << "<polygon points=\"";
        bool first = true;
        for (const Point& p : t.tile_polygon(j)) {
            if (!first) out << " ";
            first = false;
            out << m.x(p.x) << "," << m.y(p.y);
        }
        out << "\" fill=\"" << kPalette[j % 10]
            << "\" stroke=\"#222\" stroke-width=\"1\" fill-opacity=\"0.85\"/>\n";
    }

    for (const Segment& s : ov.highlights)
        out << "<line x1=\"" << m.x(s.a.x) << "\" y1=\"" << m.y(s.a.y) << "\" x2=\"" << m.x(s.b.x)
            << "\" y2=\"" << m.y(s.b.y)
            << "\" stroke=\"#1155cc\" stroke-width=\"4\" stroke-opacity=\"0.55\"/>\n";

    for (const auto& [from, to] : ov.arrows)
        out << "<line x1=\"" << m.x(from.x) << "\" y1=\"" << m.y(from.y) << "\" x2=\"" << m.x(to.x)
            << "\" y2=\"" << m.y(to.y)
            << "\" stroke=\"#8a2b2b\" stroke-width=\"2\" marker-end=\"url(#tip)\"/>\n";

    for (const auto& [at, text] : ov.labels)
        out << "<text x=\"" << m.x(at.x) << "\" y=\"" << m.y(at.y)
            << "\" font-size=\"11\" font-family=\"monospace\" fill=\"#333\">" << text
            << "</text>\n";

    out << "</svg>\n";
    return out.str();
}

}  // namespace dissect

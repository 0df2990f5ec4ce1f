#pragma once

#include "dissect/geometry.hpp"
#include "dissect/quadratic.hpp"
#include "dissect/rational.hpp"

#include <json.hpp>

#include <limits>
#include <stdexcept>

namespace dissect {

using ojson = nlohmann::ordered_json;

// Rational ↔ [numerator, denominator]; components emit as int64 when they
// fit, decimal strings otherwise; both accepted on input.
inline ojson to_json(const BigInt& n) {
    static const BigInt lo = std::numeric_limits<long long>::min();
    static const BigInt hi = std::numeric_limits<long long>::max();
    if (n >= lo && n <= hi) return ojson(n.convert_to<long long>());
    return ojson(n.str());
}

inline BigInt bigint_from_json(const ojson& j) {
    if (j.is_number_integer()) return BigInt(j.get<long long>());
    if (j.is_string()) return BigInt(j.get<std::string>());
    throw std::domain_error("bigint: expected integer or string");
}

inline ojson to_json(const Rational& r) {
    return ojson::array({to_json(r.num()), to_json(r.den())});
}

inline Rational rational_from_json(const ojson& j) {
    if (!j.is_array() || j.size() != 2) throw std::domain_error("rational: expected [num, den]");
    return Rational(bigint_from_json(j[0]), bigint_from_json(j[1]));
}

inline ojson to_json(const QuadraticNumber& q) {
    return ojson{{"rat", to_json(q.rat())}, {"rad", to_json(q.rad())}, {"sqrt", q.d()}};
}

inline QuadraticNumber qn_from_json(const ojson& j) {
    Rational rat = rational_from_json(j.at("rat"));
    Rational rad = rational_from_json(j.at("rad"));
    int d = j.at("sqrt").get<int>();
    if (rad.is_zero()) return QuadraticNumber(rat);
    return QuadraticNumber(rat, rad, d);
}

inline ojson to_json(const Isometry& iso) {
    return ojson{{"rot", iso.rot},
                 {"reflect", iso.reflect},
                 {"dx", to_json(iso.dx)},
                 {"dy", to_json(iso.dy)}};
}

inline Isometry isometry_from_json(const ojson& j) {
    Isometry iso;
    iso.rot = j.at("rot").get<int>();
    iso.reflect = j.at("reflect").get<bool>();
    iso.dx = qn_from_json(j.at("dx"));
    iso.dy = qn_from_json(j.at("dy"));
    return iso;
}

inline ojson to_json(const Point& p) {
    return ojson{{"x", to_json(p.x)}, {"y", to_json(p.y)}};
}

inline Point point_from_json(const ojson& j) {
    return Point{qn_from_json(j.at("x")), qn_from_json(j.at("y"))};
}

}  // namespace dissect

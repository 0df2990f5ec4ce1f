#include "dissect/angle.hpp"

#include <stdexcept>

namespace dissect {

std::string ExactAngle::str() const {
    std::string s = std::to_string(alphaCoeff) + "a";
    if (rightCoeff >= 0) s += "+";
    return s + std::to_string(rightCoeff) + "(pi/2)";
}

AngleMode AngleMode::bound(long long p, long long q) {
    if (q <= 0 || p <= 0 || 2 * p >= q)
        throw std::domain_error("AngleMode: need 0 < p/q < 1/2");
    AngleMode m;
    m.kind = Kind::BoundAlpha;
    m.p = p;
    m.q = q;
    return m;
}

Rational AngleMode::in_pi(const ExactAngle& a) const {
    if (kind != Kind::BoundAlpha)
        throw std::logic_error("AngleMode::in_pi: alpha is not bound");
    return Rational(a.alphaCoeff) * Rational(p, q) + Rational(a.rightCoeff, 2);
}

bool angle_eq(const ExactAngle& x, const ExactAngle& y, const AngleMode& mode) {
    if (mode.kind == AngleMode::Kind::GenericAlpha) return x == y;
    return mode.in_pi(x) == mode.in_pi(y);
}

}  // namespace dissect

#pragma once

#include "dissect/rational.hpp"

#include <string>

namespace dissect {

// Integer combination a·α + c·(π/2) of the base wedge α and the right angle.
// β is represented as −α + 2·(π/2), i.e. π − α.
struct ExactAngle {
    long long alphaCoeff = 0;
    long long rightCoeff = 0;

    ExactAngle() = default;
    ExactAngle(long long a, long long c) : alphaCoeff(a), rightCoeff(c) {}

    static ExactAngle alpha() { return {1, 0}; }
    static ExactAngle beta() { return {-1, 2}; }
    static ExactAngle right() { return {0, 1}; }
    static ExactAngle zero() { return {0, 0}; }
    static ExactAngle pi() { return {0, 2}; }
    static ExactAngle two_pi() { return {0, 4}; }

    ExactAngle operator+(const ExactAngle& o) const {
        return {alphaCoeff + o.alphaCoeff, rightCoeff + o.rightCoeff};
    }
    ExactAngle operator-(const ExactAngle& o) const {
        return {alphaCoeff - o.alphaCoeff, rightCoeff - o.rightCoeff};
    }
    bool operator==(const ExactAngle& o) const = default;

    std::string str() const;
};

// How α relates to π: as a free symbol, or pinned to (p/q)·π with 0 < p/q < 1/2.
struct AngleMode {
    enum class Kind { GenericAlpha, BoundAlpha } kind = Kind::GenericAlpha;
    long long p = 0, q = 1;

    static AngleMode generic() { return {}; }
    static AngleMode bound(long long p, long long q);

    // Angle value as a rational multiple of π (BoundAlpha only).
    Rational in_pi(const ExactAngle& a) const;
};

bool angle_eq(const ExactAngle& x, const ExactAngle& y, const AngleMode& mode);

}  // namespace dissect

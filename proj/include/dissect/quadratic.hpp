#pragma once

#include "dissect/rational.hpp"

#include <optional>
#include <string>

namespace dissect {

enum class Sign { Negative = -1, Zero = 0, Positive = 1 };

// Value rat + rad·√d for a small positive squarefree radicand d.
// Invariant: rad == 0 implies d == 0 (neutral tag), so pure rationals
// interoperate with any radicand; otherwise d > 1 and squarefree.
// Mixing two values with distinct nonzero radicands is a domain error.
class QuadraticNumber {
public:
    QuadraticNumber() : d_(0) {}
    QuadraticNumber(Rational r) : rat_(std::move(r)), d_(0) {}
    QuadraticNumber(long long r) : rat_(r), d_(0) {}
    QuadraticNumber(Rational rat, Rational rad, int d);

    const Rational& rat() const { return rat_; }
    const Rational& rad() const { return rad_; }
    int d() const { return d_; }

    bool is_zero() const { return rat_.is_zero() && rad_.is_zero(); }
    bool is_rational() const { return rad_.is_zero(); }

    QuadraticNumber operator-() const;
    QuadraticNumber operator+(const QuadraticNumber& o) const;
    QuadraticNumber operator-(const QuadraticNumber& o) const;
    QuadraticNumber operator*(const QuadraticNumber& o) const;
    QuadraticNumber operator/(const QuadraticNumber& o) const;  // throws on o == 0
    QuadraticNumber& operator+=(const QuadraticNumber& o) { return *this = *this + o; }
    QuadraticNumber& operator-=(const QuadraticNumber& o) { return *this = *this - o; }
    QuadraticNumber& operator*=(const QuadraticNumber& o) { return *this = *this * o; }

    QuadraticNumber conjugate() const;  // rat − rad√d

    bool operator==(const QuadraticNumber& o) const {
        return rat_ == o.rat_ && rad_ == o.rad_ && d_ == o.d_;
    }
    bool operator!=(const QuadraticNumber& o) const { return !(*this == o); }
    bool operator<(const QuadraticNumber& o) const;
    bool operator<=(const QuadraticNumber& o) const { return *this == o || *this < o; }
    bool operator>(const QuadraticNumber& o) const { return o < *this; }
    bool operator>=(const QuadraticNumber& o) const { return o <= *this; }

    BigInt floor() const;
    double to_double() const;

    // Canonical text: "r", "r+s√d", "s√d", "√d", with rationals as n or n/d.
    std::string str() const;

    // Accepts str() output plus "(a)+(b)√d" and spaced/signed variants.
    static std::optional<QuadraticNumber> parse(const std::string& text);

private:
    Rational rat_, rad_;
    int d_;
};

Sign qn_sign(const QuadraticNumber& a);

inline QuadraticNumber qn_add(const QuadraticNumber& a, const QuadraticNumber& b) { return a + b; }
inline QuadraticNumber qn_mul(const QuadraticNumber& a, const QuadraticNumber& b) { return a * b; }

inline QuadraticNumber sqrt_of(int d) { return QuadraticNumber(Rational(0), Rational(1), d); }

// Round-half-up fixed-point decimal with `digits` fractional digits; exact,
// so equal inputs always print identically.
std::string qn_decimal(const QuadraticNumber& v, int digits);

}  // namespace dissect

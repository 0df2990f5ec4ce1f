#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace dissect {

using BigInt = boost::multiprecision::cpp_int;

// Arbitrary-precision rational. Invariants: den > 0, gcd(num, den) == 1,
// zero is canonically 0/1.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(BigInt n) : num_(std::move(n)), den_(1) {}
    Rational(BigInt n, BigInt d);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ == 0 ? 0 : (num_ > 0 ? 1 : -1); }

    Rational operator-() const;
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;  // throws on o == 0
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    std::strong_ordering operator<=>(const Rational& o) const;

    Rational abs() const { return num_ >= 0 ? *this : -*this; }
    BigInt floor() const;  // greatest integer <= value

    // "n" when integral, else "n/d".
    std::string str() const;
    // Accepts "n", "n/d", optional leading sign; nullopt on malformed input.
    static std::optional<Rational> parse(const std::string& text);

    double to_double() const;

private:
    BigInt num_, den_;
    void reduce();
};

inline Rational operator*(long long a, const Rational& b) { return Rational(a) * b; }

}  // namespace dissect

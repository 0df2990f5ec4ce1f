#include "dissect/quadratic.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace dissect {

namespace {

int merge_radicand(int a, int b) {
    if (a == 0) return b;
    if (b == 0) return a;
    if (a != b) throw std::domain_error("QuadraticNumber: radicand mismatch");
    return a;
}

}  // namespace

QuadraticNumber::QuadraticNumber(Rational rat, Rational rad, int d)
    : rat_(std::move(rat)), rad_(std::move(rad)), d_(d) {
    if (rad_.is_zero()) {
        d_ = 0;
    } else if (d_ <= 1) {
        throw std::domain_error("QuadraticNumber: radicand must exceed 1");
    }
}

QuadraticNumber QuadraticNumber::operator-() const {
    QuadraticNumber r;
    r.rat_ = -rat_;
    r.rad_ = -rad_;
    r.d_ = d_;
    return r;
}

QuadraticNumber QuadraticNumber::operator+(const QuadraticNumber& o) const {
    int d = merge_radicand(d_, o.d_);
    Rational rad = rad_ + o.rad_;
    if (rad.is_zero()) return QuadraticNumber(rat_ + o.rat_);
    return QuadraticNumber(rat_ + o.rat_, std::move(rad), d);
}

QuadraticNumber QuadraticNumber::operator-(const QuadraticNumber& o) const {
    return *this + (-o);
}

QuadraticNumber QuadraticNumber::operator*(const QuadraticNumber& o) const {
    int d = merge_radicand(d_, o.d_);
    Rational rat = rat_ * o.rat_ + Rational(d) * (rad_ * o.rad_);
    Rational rad = rat_ * o.rad_ + rad_ * o.rat_;
    if (rad.is_zero()) return QuadraticNumber(std::move(rat));
    return QuadraticNumber(std::move(rat), std::move(rad), d);
}

QuadraticNumber QuadraticNumber::operator/(const QuadraticNumber& o) const {
    if (o.is_zero()) throw std::domain_error("QuadraticNumber: division by zero");
    int d = merge_radicand(d_, o.d_);
    // 1/(r+s√d) = (r−s√d)/(r²−d·s²); the norm is nonzero since √d is irrational.
    Rational norm = o.rat_ * o.rat_ - Rational(d) * (o.rad_ * o.rad_);
    QuadraticNumber conj = o.conjugate();
    QuadraticNumber numer = *this * conj;
    Rational rat = numer.rat_ / norm;
    Rational rad = numer.rad_ / norm;
    if (rad.is_zero()) return QuadraticNumber(std::move(rat));
    return QuadraticNumber(std::move(rat), std::move(rad), d);
}

QuadraticNumber QuadraticNumber::conjugate() const {
    if (rad_.is_zero()) return *this;
    return QuadraticNumber(rat_, -rad_, d_);
}

Sign qn_sign(const QuadraticNumber& a) {
    int sr = a.rat().sign(), ss = a.rad().sign();
    if (ss == 0) return static_cast<Sign>(sr);
    if (sr == 0) return static_cast<Sign>(ss);
    if (sr == ss) return static_cast<Sign>(sr);
    // Opposite signs: |rat| vs |rad|·√d decides; compare squares exactly.
    Rational rr = a.rat() * a.rat();
    Rational dd = Rational(a.d()) * a.rad() * a.rad();
    auto cmp = rr <=> dd;
    if (cmp == std::strong_ordering::equal)
        throw std::logic_error("qn_sign: rational equals irrational");  // impossible for squarefree d>1
    bool rat_dominates = cmp == std::strong_ordering::greater;
    return static_cast<Sign>(rat_dominates ? sr : ss);
}

bool QuadraticNumber::operator<(const QuadraticNumber& o) const {
    return qn_sign(*this - o) == Sign::Negative;
}

BigInt QuadraticNumber::floor() const {
    if (rad_.is_zero()) return rat_.floor();
    // Bracket with doubles, then fix up exactly.
    double approx = to_double();
    BigInt n = static_cast<long long>(std::floor(approx));
    auto le_value = [&](const BigInt& k) {  // k <= value?
        return qn_sign(*this - QuadraticNumber(Rational(k))) != Sign::Negative;
    };
    while (!le_value(n)) --n;
    while (le_value(n + 1)) ++n;
    return n;
}

double QuadraticNumber::to_double() const {
    double v = rat_.to_double();
    if (!rad_.is_zero()) v += rad_.to_double() * std::sqrt(static_cast<double>(d_));
    return v;
}

std::string QuadraticNumber::str() const {
    if (rad_.is_zero()) return rat_.str();
    std::string radpart;
    if (rad_ == Rational(1)) radpart = "";
    else if (rad_ == Rational(-1)) radpart = "-";
    else radpart = rad_.str();
    radpart += "√" + std::to_string(d_);
    if (rat_.is_zero()) return radpart;
    std::string s = rat_.str();
    if (rad_.sign() > 0) s += "+";
    return s + radpart;
}

namespace {

// Splits "a+b" / "a-b" at the top-level sign separating the two terms
// (ignoring leading sign and signs inside parentheses).
bool split_terms(const std::string& s, std::string& first, std::string& second, int& second_sign) {
    int depth = (s[0] == '(') ? 1 : 0;
    for (size_t i = 1; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(') ++depth;
        else if (c == ')') --depth;
        else if (depth == 0 && (c == '+' || c == '-') && s[i - 1] != '/' && s[i - 1] != '*') {
            first = s.substr(0, i);
            second = s.substr(i + 1);
            second_sign = (c == '+') ? 1 : -1;
            return true;
        }
    }
    return false;
}

std::string strip(std::string s) {
    std::string out;
    for (char c : s)
        if (!isspace(static_cast<unsigned char>(c))) out += c;
    return out;
}

std::string unparen(std::string s) {
    while (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
        int depth = 0;
        bool wraps = true;
        for (size_t i = 0; i + 1 < s.size(); ++i) {
            if (s[i] == '(') ++depth;
            else if (s[i] == ')') --depth;
            if (depth == 0) { wraps = false; break; }
        }
        if (!wraps) break;
        s = s.substr(1, s.size() - 2);
    }
    return s;
}

// Parses "s√d", "√d", "-√d", "(r)√d" → (coefficient, d); d == 0 for no radical.
bool parse_term(const std::string& raw, Rational& coeff, int& d) {
    std::string s = unparen(raw);
    size_t pos = s.find("√");
    if (pos == std::string::npos) pos = s.find("sqrt");
    size_t radlen = (s.find("√") != std::string::npos) ? 3 : 4;
    if (pos == std::string::npos) {
        auto r = Rational::parse(s);
        if (!r) return false;
        coeff = *r;
        d = 0;
        return true;
    }
    std::string pre = unparen(s.substr(0, pos));
    std::string post = s.substr(pos + radlen);
    if (post.empty()) return false;
    for (char c : post)
        if (!isdigit(static_cast<unsigned char>(c))) return false;
    d = std::stoi(post);
    if (d <= 1) return false;
    if (pre.empty() || pre == "+") coeff = Rational(1);
    else if (pre == "-") coeff = Rational(-1);
    else {
        // Allow a trailing '*' as in "2*√3".
        if (pre.back() == '*') pre.pop_back();
        auto r = Rational::parse(unparen(pre));
        if (!r) return false;
        coeff = *r;
    }
    return true;
}

}  // namespace

std::optional<QuadraticNumber> QuadraticNumber::parse(const std::string& text) {
    std::string s = unparen(strip(text));
    if (s.empty()) return std::nullopt;
    // Normalize the unicode minus that str() never emits but humans paste.
    std::string norm;
    for (size_t i = 0; i < s.size();) {
        if (s.compare(i, 3, "−") == 0) { norm += '-'; i += 3; }
        else { norm += s[i]; ++i; }
    }
    s = norm;
    std::string a, b;
    int bsign = 1;
    try {
        if (split_terms(s, a, b, bsign)) {
            Rational c1, c2;
            int d1 = 0, d2 = 0;
            if (!parse_term(a, c1, d1) || !parse_term(b, c2, d2)) return std::nullopt;
            if (bsign < 0) c2 = -c2;
            if (d1 != 0 && d2 != 0 && d1 != d2) return std::nullopt;
            Rational rat = (d1 == 0 ? c1 : Rational(0)) + (d2 == 0 ? c2 : Rational(0));
            Rational rad = (d1 != 0 ? c1 : Rational(0)) + (d2 != 0 ? c2 : Rational(0));
            int d = d1 != 0 ? d1 : d2;
            if (d == 0) return QuadraticNumber(rat + rad);
            if (rad.is_zero()) return QuadraticNumber(rat);
            return QuadraticNumber(rat, rad, d);
        }
        Rational c;
        int d = 0;
        if (!parse_term(s, c, d)) return std::nullopt;
        if (d == 0) return QuadraticNumber(c);
        if (c.is_zero()) return QuadraticNumber(Rational(0));
        return QuadraticNumber(Rational(0), c, d);
    } catch (...) {
        return std::nullopt;
    }
}

std::string qn_decimal(const QuadraticNumber& v, int digits) {
    BigInt scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    // floor(v·scale + 1/2), all exact.
    QuadraticNumber scaled = v * QuadraticNumber(Rational(scale)) + QuadraticNumber(Rational(1, 2));
    BigInt n = scaled.floor();
    bool neg = n < 0;
    if (neg) n = -n;
    std::string ds = n.str();
    if (static_cast<int>(ds.size()) <= digits) ds.insert(0, digits + 1 - ds.size(), '0');
    std::string out = ds.substr(0, ds.size() - digits) + "." + ds.substr(ds.size() - digits);
    // Trim trailing zeros but keep at least one fractional digit.
    size_t last = out.find_last_not_of('0');
    if (out[last] == '.') ++last;
    out.erase(last + 1);
    if (neg && out.find_first_not_of("0.") != std::string::npos) out.insert(0, "-");
    return out;
}

}  // namespace dissect

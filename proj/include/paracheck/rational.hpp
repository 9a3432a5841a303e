#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace paracheck {

/// Exact rational number on 64-bit integers, always normalized so that
/// the denominator is positive and gcd(num, den) == 1.
class Rational {
public:
    Rational() = default;
    Rational(long long n) : num_(n) {}
    Rational(long long n, long long d);

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// "p" for integers, "p/q" otherwise.
    std::string str() const;

    /// Exact conversion of a decimal literal such as "2.5" or "1e-3".
    static Rational from_decimal_string(const std::string& text);

    Rational operator-() const { return Rational(-num_, den_); }
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b);

    /// b^e for integer e; e < 0 requires b != 0.
    static Rational pow(const Rational& base, long long exponent);

private:
    long long num_ = 0;
    long long den_ = 1;
};

} // namespace paracheck

#include "paracheck/rational.hpp"

#include <cctype>
#include <cstdlib>
#include <numeric>

namespace paracheck {

namespace {

using I128 = __int128;

long long checked_narrow(I128 v) {
    if (v > INT64_MAX || v < INT64_MIN) {
        throw std::overflow_error("rational arithmetic overflow");
    }
    return static_cast<long long>(v);
}

I128 gcd128(I128 a, I128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        I128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace

Rational::Rational(long long n, long long d) {
    if (d == 0) throw std::invalid_argument("rational with zero denominator");
    I128 num = n, den = d;
    if (den < 0) {
        num = -num;
        den = -den;
    }
    I128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    num_ = checked_narrow(num);
    den_ = checked_narrow(den);
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational& Rational::operator+=(const Rational& o) {
    I128 n = I128(num_) * o.den_ + I128(o.num_) * den_;
    I128 d = I128(den_) * o.den_;
    I128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    num_ = checked_narrow(n);
    den_ = checked_narrow(d);
    return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
    I128 n = I128(num_) * o.num_;
    I128 d = I128(den_) * o.den_;
    I128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    num_ = checked_narrow(n);
    den_ = checked_narrow(d);
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.num_ == 0) throw std::domain_error("rational division by zero");
    return *this *= Rational(o.den_, o.num_);
}

bool operator<(const Rational& a, const Rational& b) {
    return I128(a.num_) * b.den_ < I128(b.num_) * a.den_;
}

Rational Rational::pow(const Rational& base, long long exponent) {
    if (exponent == 0) return Rational(1);
    bool invert = exponent < 0;
    unsigned long long e = invert ? static_cast<unsigned long long>(-(exponent + 1)) + 1ULL
                                  : static_cast<unsigned long long>(exponent);
    Rational acc(1);
    Rational b = base;
    while (e > 0) {
        if (e & 1ULL) acc *= b;
        b *= b;
        e >>= 1;
        if (e == 0) break;
    }
    if (invert) {
        if (acc.num_ == 0) throw std::domain_error("zero raised to a negative power");
        return Rational(1) / acc;
    }
    return acc;
}

Rational Rational::from_decimal_string(const std::string& text) {
    size_t i = 0;
    bool neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        neg = text[i] == '-';
        ++i;
    }
    I128 mantissa = 0;
    long long frac_digits = 0;
    bool any = false;
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
        mantissa = mantissa * 10 + (text[i] - '0');
        any = true;
    }
    if (i < text.size() && text[i] == '.') {
        ++i;
        for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
            mantissa = mantissa * 10 + (text[i] - '0');
            ++frac_digits;
            any = true;
        }
    }
    long long exp10 = 0;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            eneg = text[i] == '-';
            ++i;
        }
        bool eany = false;
        for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
            exp10 = exp10 * 10 + (text[i] - '0');
            eany = true;
        }
        if (!eany) throw std::invalid_argument("malformed exponent in number: " + text);
        if (eneg) exp10 = -exp10;
    }
    if (!any || i != text.size()) throw std::invalid_argument("malformed number: " + text);

    Rational value(checked_narrow(mantissa));
    long long shift = exp10 - frac_digits;
    if (shift > 0) value *= Rational::pow(Rational(10), shift);
    if (shift < 0) value /= Rational::pow(Rational(10), -shift);
    return neg ? -value : value;
}

} // namespace paracheck

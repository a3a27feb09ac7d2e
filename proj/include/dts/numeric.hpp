#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

// All domain quantities (ticks, bytes, bandwidth units, currency) are 64-bit
// integers so that solver results compare exactly. +infinity is a saturating
// sentinel usable in min/add chains.

namespace dts {

using i64 = std::int64_t;

inline constexpr i64 kInf = std::numeric_limits<i64>::max();

struct InvalidInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

// Addition that saturates at the +infinity sentinel instead of overflowing.
inline i64 sat_add(i64 a, i64 b) {
    if (a == kInf || b == kInf) return kInf;
    if (a > 0 && b > kInf - a) return kInf;
    return a + b;
}

inline i64 ceil_div(i64 a, i64 b) {
    if (b <= 0) throw InvalidInput("ceil_div: non-positive divisor");
    if (a <= 0) return a / b;
    return (a - 1) / b + 1;
}

// Exact rational with canonical form (den > 0, gcd(num, den) = 1).
// Scenario probabilities and pricing coefficients use this so revenue
// identities hold exactly.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(i64 value) : num_(value), den_(1) {}  // NOLINT: implicit by design
    Rational(i64 num, i64 den) : num_(num), den_(den) { normalize(); }

    i64 num() const { return num_; }
    i64 den() const { return den_; }

    static Rational from_decimal(double x);

    Rational operator+(const Rational& o) const {
        return make(i128(num_) * o.den_ + i128(o.num_) * den_, i128(den_) * o.den_);
    }
    Rational operator-(const Rational& o) const {
        return make(i128(num_) * o.den_ - i128(o.num_) * den_, i128(den_) * o.den_);
    }
    Rational operator*(const Rational& o) const {
        return make(i128(num_) * o.num_, i128(den_) * o.den_);
    }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw InvalidInput("rational division by zero");
        return make(i128(num_) * o.den_, i128(den_) * o.num_);
    }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return i128(num_) * o.den_ < i128(o.num_) * den_; }
    bool operator<=(const Rational& o) const { return i128(num_) * o.den_ <= i128(o.num_) * den_; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    i64 floor() const {
        i64 q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }
    i64 ceil() const {
        i64 q = num_ / den_;
        if (num_ % den_ != 0 && num_ > 0) ++q;
        return q;
    }
    // Commercial rounding: .5 rounds away from zero toward +inf for the
    // nonnegative amounts we price.
    i64 round_half_up() const { return Rational(*this + Rational(1, 2)).floor(); }

    double to_double() const { return double(num_) / double(den_); }
    std::string to_string() const {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }

  private:
    using i128 = __int128;

    static Rational make(i128 num, i128 den) {
        if (den == 0) throw InvalidInput("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        i128 a = num < 0 ? -num : num;
        i128 g = gcd128(a, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num > std::numeric_limits<i64>::max() || num < std::numeric_limits<i64>::min() ||
            den > std::numeric_limits<i64>::max()) {
            throw InvalidInput("rational overflow");
        }
        Rational r;
        r.num_ = i64(num);
        r.den_ = i64(den);
        return r;
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) {
            i128 t = a % b;
            a = b;
            b = t;
        }
        return a < 0 ? -a : a;
    }

    void normalize() { *this = make(num_, den_); }

    i64 num_;
    i64 den_;
};

// Decimal inputs are quantized to 1e-9 before conversion; exact inputs
// should be supplied as {num, den} pairs instead.
inline Rational Rational::from_decimal(double x) {
    if (x != x) throw InvalidInput("rational from NaN");
    const double scaled = x * 1e9;
    if (scaled > 9.2e18 || scaled < -9.2e18) throw InvalidInput("decimal out of rational range");
    return Rational(i64(scaled < 0 ? scaled - 0.5 : scaled + 0.5), i64(1000000000));
}

}  // namespace dts

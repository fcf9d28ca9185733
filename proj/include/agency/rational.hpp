#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace agency {

/// Exact rational number, always in lowest terms with a positive denominator.
///
/// Thin value wrapper over GMP's mpq_class. Every probability in the library
/// is a Rational so that partitions defined by probability equality are
/// decided exactly.
class Rational {
public:
    Rational() = default;
    Rational(long value) : value_(value) {}
    Rational(long num, long den);

    /// Parses "p/q", "p", or "-p/q". Throws std::invalid_argument on bad input
    /// or a zero denominator.
    static Rational parse(std::string_view text);

    static Rational zero() { return Rational{}; }
    static Rational one() { return Rational{1}; }

    std::string numerator() const { return value_.get_num().get_str(); }
    std::string denominator() const { return value_.get_den().get_str(); }

    /// Always "p/q", also for integers ("1/1", "0/1").
    std::string str() const;
    double to_double() const { return value_.get_d(); }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_positive() const { return sgn(value_) > 0; }
    bool is_negative() const { return sgn(value_) < 0; }

    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    /// Throws std::domain_error on division by zero.
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { Rational r; r.value_ = -a.value_; return r; }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend Rational abs(const Rational& a) { return a.is_negative() ? -a : a; }

    std::size_t hash() const;

private:
    mpq_class value_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace agency

template <>
struct std::hash<agency::Rational> {
    std::size_t operator()(const agency::Rational& r) const noexcept { return r.hash(); }
};

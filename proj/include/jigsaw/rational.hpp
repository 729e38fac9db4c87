#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace jigsaw {

using Integer = mpz_class;

std::size_t hash_integer(const Integer& z);
std::string to_string(const Integer& z);
Integer parse_integer(std::string_view text);

/// Exact rational number in lowest terms with a positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long value) : value_(value) {}  // NOLINT: implicit by design of arithmetic code
    Rational(const Integer& value) : value_(value) {}  // NOLINT
    template <class U>
    Rational(const __gmp_expr<mpz_t, U>& e) : value_(mpz_class(e)) {}  // NOLINT: integer expressions
    Rational(const Integer& num, const Integer& den);

    const Integer& num() const { return value_.get_num(); }
    const Integer& den() const { return value_.get_den(); }
    const mpq_class& raw() const { return value_; }

    bool is_integer() const { return den() == 1; }
    int sign() const { return sgn(value_); }

    /// Largest integer not exceeding this value.
    Integer floor() const;

    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const;

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    /// "p" for integers, otherwise "p/q".
    std::string to_string() const;
    static Rational parse(std::string_view text);

private:
    explicit Rational(mpq_class v) : value_(std::move(v)) {}
    mpq_class value_;
};

Rational abs(const Rational& r);

/// A point of the boundary of the upper half-plane: a rational or Infinity.
class ExtendedRational {
public:
    ExtendedRational() = default;  // Infinity
    ExtendedRational(const Rational& r) : value_(r) {}  // NOLINT
    ExtendedRational(long v) : value_(Rational(v)) {}   // NOLINT

    static ExtendedRational infinity() { return {}; }

    bool is_infinity() const { return !value_.has_value(); }
    const Rational& value() const { return *value_; }

    friend bool operator==(const ExtendedRational&, const ExtendedRational&) = default;

    /// "inf" or the rational encoding.
    std::string to_string() const;
    static ExtendedRational parse(std::string_view text);

private:
    std::optional<Rational> value_;
};

/// Denominator of the point in lowest terms; 0 for Infinity.
Integer denominator_height(const ExtendedRational& x);

struct RationalHash {
    std::size_t operator()(const Rational& r) const;
};

}  // namespace jigsaw

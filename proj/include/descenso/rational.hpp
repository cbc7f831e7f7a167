#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>

namespace descenso {

/// Exact rational scalar. Always canonical: denominator > 0, lowest terms.
/// Serializes as "p/q", with "/q" omitted when q = 1.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}  // NOLINT: implicit by design
    Rational(long num, long den);

    static Rational parse(const std::string& s);

    Rational operator+(const Rational& o) const { return Rational(mpq_class(v_ + o.v_)); }
    Rational operator-(const Rational& o) const { return Rational(mpq_class(v_ - o.v_)); }
    Rational operator*(const Rational& o) const { return Rational(mpq_class(v_ * o.v_)); }
    Rational operator/(const Rational& o) const;
    Rational operator-() const { return Rational(mpq_class(-v_)); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    bool operator==(const Rational& o) const { return v_ == o.v_; }
    bool operator!=(const Rational& o) const { return v_ != o.v_; }
    bool operator<(const Rational& o) const { return v_ < o.v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }

    Rational inverse() const;

    std::string str() const;

private:
    explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace descenso

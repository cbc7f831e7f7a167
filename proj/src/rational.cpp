#include "descenso/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace descenso {

Rational::Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    v_.canonicalize();
}

Rational Rational::operator/(const Rational& o) const {
    if (o.is_zero()) throw std::invalid_argument("Rational: division by zero");
    return Rational(mpq_class(v_ / o.v_));
}

Rational Rational::inverse() const {
    if (is_zero()) throw std::invalid_argument("Rational: inverse of zero");
    return Rational(mpq_class(1 / v_));
}

std::string Rational::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational Rational::parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("Rational: empty string");
    // mpq_class accepts "p/q"; validate shape first so errors are crisp.
    size_t slash = s.find('/');
    auto check_int = [&](size_t lo, size_t hi) {
        if (lo >= hi) throw std::invalid_argument("Rational: bad literal '" + s + "'");
        size_t i = lo;
        if (s[i] == '-' || s[i] == '+') ++i;
        if (i >= hi) throw std::invalid_argument("Rational: bad literal '" + s + "'");
        for (; i < hi; ++i)
            if (s[i] < '0' || s[i] > '9')
                throw std::invalid_argument("Rational: bad literal '" + s + "'");
    };
    if (slash == std::string::npos) {
        check_int(0, s.size());
    } else {
        check_int(0, slash);
        check_int(slash + 1, s.size());
    }
    mpq_class v(s);
    if (v.get_den() == 0) throw std::invalid_argument("Rational: zero denominator in '" + s + "'");
    v.canonicalize();
    if (sgn(v.get_den()) < 0) {
        v.get_num() = -v.get_num();
        v.get_den() = -v.get_den();
    }
    Rational r;
    r.v_ = v;
    return r;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace descenso

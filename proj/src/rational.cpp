#include "agency/rational.hpp"

#include <stdexcept>

namespace agency {

Rational::Rational(long num, long den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty rational");
    const auto slash = text.find('/');
    auto valid_integer = [](std::string_view s, bool allow_sign) {
        if (s.empty()) return false;
        std::size_t i = 0;
        if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    std::string num{text.substr(0, slash)};
    std::string den = slash == std::string_view::npos ? "1" : std::string{text.substr(slash + 1)};
    if (!valid_integer(num, true) || !valid_integer(den, false))
        throw std::invalid_argument("malformed rational '" + std::string{text} + "'");
    if (num[0] == '+') num.erase(0, 1);
    Rational r;
    r.value_.get_num().set_str(num, 10);
    r.value_.get_den().set_str(den, 10);
    if (sgn(r.value_.get_den()) == 0)
        throw std::invalid_argument("zero denominator in '" + std::string{text} + "'");
    r.value_.canonicalize();
    return r;
}

std::string Rational::str() const {
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    value_ /= o.value_;
    return *this;
}

std::size_t Rational::hash() const {
    // Lowest terms makes the string form canonical.
    return std::hash<std::string>{}(str());
}

}  // namespace agency

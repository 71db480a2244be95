#include "racah/rational.hpp"

#include <cctype>

namespace racah {

namespace {

bool valid_integer_token(const std::string& s) {
    if (s.empty()) return false;
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit((unsigned char)s[i])) return false;
    return true;
}

} // namespace

Rational parse_rational(const std::string& s) {
    std::string num = s, den = "1";
    if (auto pos = s.find('/'); pos != std::string::npos) {
        num = s.substr(0, pos);
        den = s.substr(pos + 1);
    }
    if (!valid_integer_token(num) || !valid_integer_token(den))
        throw BadInput("not a rational: '" + s + "'");
    Integer d(den);
    if (d == 0) throw DivisionByZero("zero denominator in '" + s + "'");
    Rational r(Integer(num), d);
    r.canonicalize();
    return r;
}

long to_long(const Rational& r) {
    if (!is_integer(r)) throw BadInput("not an integer: " + to_string(r));
    if (!r.get_num().fits_slong_p()) throw BadInput("integer out of range: " + to_string(r));
    return r.get_num().get_si();
}

} // namespace racah

#include "blockcomp/rational.hpp"

#include "blockcomp/errors.hpp"

#include <cctype>

namespace blockcomp {

namespace {

bool is_integer_literal(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

Integer parse_integer(const std::string& s) {
    return Integer(s[0] == '+' ? s.substr(1) : s);
}

}  // namespace

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const auto num = text.substr(0, slash);
        const auto den = text.substr(slash + 1);
        if (!is_integer_literal(num) || !is_integer_literal(den))
            throw ParseError("malformed rational '" + text + "'");
        Integer d = parse_integer(den);
        if (d == 0) throw ParseError("zero denominator in '" + text + "'");
        return Rational(parse_integer(num), d);
    }
    if (is_integer_literal(text)) return Rational(parse_integer(text));

    // Decimal literal: digits '.' digits, read exactly.
    const auto dot = text.find('.');
    if (dot == std::string::npos) throw ParseError("malformed rational '" + text + "'");
    std::string whole = text.substr(0, dot);
    std::string frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole = whole.substr(1);
    if (whole.empty()) whole = "0";
    if (!is_integer_literal(whole) || frac.empty() || !is_integer_literal(frac) || frac[0] == '-' ||
        frac[0] == '+')
        throw ParseError("malformed rational '" + text + "'");
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Rational value(Integer(whole) * scale + Integer(frac), scale);
    return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& value) {
    const Integer den = boost::multiprecision::denominator(value);
    if (den == 1) return boost::multiprecision::numerator(value).str();
    return boost::multiprecision::numerator(value).str() + "/" + den.str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

Integer binomial(long n, long k) {
    if (n < 0 || k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Integer result = 1;
    for (long i = 1; i <= k; ++i) {
        result *= (n - k + i);
        result /= i;
    }
    return result;
}

}  // namespace blockcomp

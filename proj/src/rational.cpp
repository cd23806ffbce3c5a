#include "qprob/rational.hpp"

#include <cctype>
#include <cmath>

#include "qprob/errors.hpp"

namespace qp {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    bool neg = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        neg = s[0] == '-';
        s.erase(0, 1);
    }
    Rational r;
    auto slash = s.find('/');
    auto dot = s.find('.');
    if (slash != std::string::npos) {
        std::string p = s.substr(0, slash), q = s.substr(slash + 1);
        if (!all_digits(p) || !all_digits(q)) throw ParseError("bad rational literal '" + text + "'");
        mpz_class den(q, 10);
        if (den == 0) throw ParseError("zero denominator in '" + text + "'");
        r = Rational(mpz_class(p, 10), den);
    } else if (dot != std::string::npos) {
        std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
        if (ip.empty()) ip = "0";
        if (!all_digits(ip) || (!fp.empty() && !all_digits(fp)) || (ip == "0" && fp.empty() && s == "."))
            throw ParseError("bad decimal literal '" + text + "'");
        mpz_class den = 1;
        for (size_t i = 0; i < fp.size(); ++i) den *= 10;
        r = Rational(mpz_class(ip + fp, 10), den);
    } else {
        if (!all_digits(s)) throw ParseError("bad rational literal '" + text + "'");
        r = Rational(mpz_class(s, 10));
    }
    r.canonicalize();
    return neg ? Rational(-r) : r;
}

std::string to_string(const Rational& r) {
    Rational c = r;
    c.canonicalize();
    return c.get_str();
}

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw InvalidInput("non-finite value cannot be made exact");
    Rational r(x);
    r.canonicalize();
    return r;
}

double to_double(const Rational& r) { return r.get_d(); }

}  // namespace qp

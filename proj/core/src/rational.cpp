#include "conic/rational.hpp"

#include "conic/errors.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace conic
{

namespace
{

using wide = __int128;

std::int64_t narrow(wide v)
{
    if (v > std::numeric_limits<std::int64_t>::max() || v < -std::numeric_limits<std::int64_t>::max()) {
        throw std::overflow_error("rational arithmetic overflow");
    }
    return static_cast<std::int64_t>(v);
}

wide wgcd(wide a, wide b)
{
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        wide t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Rational make(wide n, wide d)
{
    if (d == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    if (d < 0) {
        n = -n;
        d = -d;
    }
    const wide g = wgcd(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    return Rational(narrow(n), narrow(d));
}

std::int64_t parse_int(std::string_view s, std::string_view whole)
{
    std::int64_t v = 0;
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw DomainError("malformed number '" + std::string(whole) + "'");
    }
    return v;
}

Rational parse_decimal(std::string_view s, std::string_view whole)
{
    std::int64_t exp10 = 0;
    if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        exp10 = parse_int(s.substr(e + 1), whole);
        s = s.substr(0, e);
    }
    bool neg = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    const auto dot = s.find('.');
    std::string digits(s.substr(0, dot));
    if (dot != std::string_view::npos) {
        const auto frac = s.substr(dot + 1);
        digits += frac;
        exp10 -= static_cast<std::int64_t>(frac.size());
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
        throw DomainError("malformed number '" + std::string(whole) + "'");
    }
    if (exp10 > 18 || exp10 < -18) {
        throw DomainError("exponent out of range in '" + std::string(whole) + "'");
    }
    Rational r(parse_int(digits, whole));
    std::int64_t p = 1;
    for (std::int64_t i = 0; i < (exp10 < 0 ? -exp10 : exp10); ++i) {
        p *= 10;
    }
    r = exp10 < 0 ? r / Rational(p) : r * Rational(p);
    return neg ? -r : r;
}

}

Rational::Rational(std::int64_t n, std::int64_t d)
{
    if (d == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    wide wn = n, wd = d;
    if (wd < 0) {
        wn = -wn;
        wd = -wd;
    }
    const wide g = wgcd(wn, wd);
    if (g > 1) {
        wn /= g;
        wd /= g;
    }
    m_num = narrow(wn);
    m_den = narrow(wd);
}

Rational Rational::parse(std::string_view text)
{
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (text.empty()) {
        throw DomainError("empty number");
    }
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const auto d = parse_int(text.substr(slash + 1), text);
        if (d == 0) {
            throw DomainError("zero denominator in '" + std::string(text) + "'");
        }
        return Rational(parse_int(text.substr(0, slash), text), d);
    }
    if (text.find_first_of(".eE") != std::string_view::npos) {
        return parse_decimal(text, text);
    }
    return Rational(parse_int(text, text));
}

Rational Rational::from_double(double x, double tol, std::int64_t max_den)
{
    if (!std::isfinite(x)) {
        throw DomainError("non-finite angle");
    }
    // Continued-fraction convergents; the first one within tol wins.
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double rem = x;
    for (int iter = 0; iter < 64; ++iter) {
        const double a = std::floor(rem);
        if (std::abs(a) > 9.0e15) {
            break;
        }
        const auto ai = static_cast<std::int64_t>(a);
        const wide p2 = static_cast<wide>(ai) * p1 + p0;
        const wide q2 = static_cast<wide>(ai) * q1 + q0;
        if (q2 > max_den || p2 > std::numeric_limits<std::int64_t>::max() || p2 < -std::numeric_limits<std::int64_t>::max()) {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = static_cast<std::int64_t>(p2);
        q1 = static_cast<std::int64_t>(q2);
        if (std::abs(static_cast<double>(p1) / static_cast<double>(q1) - x) <= tol) {
            return Rational(p1, q1);
        }
        const double f = rem - a;
        if (f == 0.0) {
            break;
        }
        rem = 1.0 / f;
    }
    throw DomainError("no rational within tolerance of " + std::to_string(x));
}

std::int64_t Rational::floor() const
{
    std::int64_t q = m_num / m_den;
    if (m_num % m_den != 0 && m_num < 0) {
        --q;
    }
    return q;
}

std::int64_t Rational::ceil() const
{
    return is_integer() ? m_num : floor() + 1;
}

std::string Rational::str() const
{
    return is_integer() ? std::to_string(m_num) : std::to_string(m_num) + "/" + std::to_string(m_den);
}

Rational Rational::operator-() const
{
    Rational r;
    r.m_num = narrow(-static_cast<wide>(m_num));
    r.m_den = m_den;
    return r;
}

Rational &Rational::operator+=(const Rational &o)
{
    return *this = make(static_cast<wide>(m_num) * o.m_den + static_cast<wide>(o.m_num) * m_den,
                        static_cast<wide>(m_den) * o.m_den);
}

Rational &Rational::operator-=(const Rational &o)
{
    return *this = make(static_cast<wide>(m_num) * o.m_den - static_cast<wide>(o.m_num) * m_den,
                        static_cast<wide>(m_den) * o.m_den);
}

Rational &Rational::operator*=(const Rational &o)
{
    return *this = make(static_cast<wide>(m_num) * o.m_num, static_cast<wide>(m_den) * o.m_den);
}

Rational &Rational::operator/=(const Rational &o)
{
    if (o.m_num == 0) {
        throw std::domain_error("rational division by zero");
    }
    return *this = make(static_cast<wide>(m_num) * o.m_den, static_cast<wide>(m_den) * o.m_num);
}

std::strong_ordering operator<=>(const Rational &a, const Rational &b)
{
    const wide l = static_cast<wide>(a.m_num) * b.m_den;
    const wide r = static_cast<wide>(b.m_num) * a.m_den;
    return l < r ? std::strong_ordering::less : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
}

Rational abs(const Rational &r)
{
    return r < Rational(0) ? -r : r;
}

std::ostream &operator<<(std::ostream &os, const Rational &r)
{
    return os << r.str();
}

}

#ifndef CONIC_RATIONAL_HPP
#define CONIC_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace conic
{

/// Exact rational number with 64-bit numerator and denominator.
/**
 * Always stored in lowest terms with a positive denominator. Every arithmetic
 * operation is overflow-checked and throws std::overflow_error instead of
 * wrapping, so results are either exact or an error.
 */
class Rational
{
    public:
        constexpr Rational() = default;
        constexpr Rational(std::int64_t n) : m_num(n) {}
        Rational(std::int64_t n, std::int64_t d);

        /// Parses "p/q", an integer, or a plain decimal ("0.125", "-2.5e-1")
        /// exactly. Throws DomainError on malformed text.
        static Rational parse(std::string_view text);
        /// Closest rational with denominator <= max_den within tol of x;
        /// throws DomainError when no such fraction exists.
        static Rational from_double(double x, double tol = 1e-12, std::int64_t max_den = 1000000000);

        std::int64_t num() const { return m_num; }
        std::int64_t den() const { return m_den; }

        bool is_integer() const { return m_den == 1; }
        /// Largest integer <= *this.
        std::int64_t floor() const;
        /// Smallest integer >= *this.
        std::int64_t ceil() const;
        double to_double() const { return static_cast<double>(m_num) / static_cast<double>(m_den); }
        std::string str() const;

        Rational operator-() const;
        Rational &operator+=(const Rational &o);
        Rational &operator-=(const Rational &o);
        Rational &operator*=(const Rational &o);
        Rational &operator/=(const Rational &o);

        friend Rational operator+(Rational a, const Rational &b) { return a += b; }
        friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
        friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
        friend Rational operator/(Rational a, const Rational &b) { return a /= b; }

        friend bool operator==(const Rational &a, const Rational &b) = default;
        friend std::strong_ordering operator<=>(const Rational &a, const Rational &b);

    private:
        std::int64_t m_num = 0;
        std::int64_t m_den = 1;
};

Rational abs(const Rational &r);
std::ostream &operator<<(std::ostream &os, const Rational &r);

}

#endif

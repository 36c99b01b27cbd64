#include "conic/angles.hpp"

#include "conic/errors.hpp"

namespace conic
{

AngleVector::AngleVector(std::vector<Rational> angles, int genus) : m_angles(std::move(angles)), m_genus(genus)
{
    if (m_angles.empty()) {
        throw DomainError("at least one angle is required");
    }
    if (genus < 0) {
        throw DomainError("genus must be non-negative");
    }
    for (const auto &a : m_angles) {
        if (a <= Rational(0)) {
            throw DomainError("angles must be positive, got " + a.str());
        }
    }
}

AngleVector AngleVector::parse(std::string_view list, int genus)
{
    std::vector<Rational> out;
    while (true) {
        const auto comma = list.find(',');
        out.push_back(Rational::parse(list.substr(0, comma)));
        if (comma == std::string_view::npos) {
            break;
        }
        list.remove_prefix(comma + 1);
    }
    return AngleVector(std::move(out), genus);
}

AngleVector AngleVector::from_doubles(std::span<const double> angles, int genus, double tol)
{
    std::vector<Rational> out;
    out.reserve(angles.size());
    for (double a : angles) {
        out.push_back(Rational::from_double(a, tol));
    }
    return AngleVector(std::move(out), genus);
}

Rational AngleVector::sum() const
{
    Rational s;
    for (const auto &a : m_angles) {
        s += a;
    }
    return s;
}

std::vector<std::size_t> AngleVector::integer_indices() const
{
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < m_angles.size(); ++i) {
        if (m_angles[i].is_integer()) {
            idx.push_back(i);
        }
    }
    return idx;
}

std::vector<std::size_t> AngleVector::non_integer_indices() const
{
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < m_angles.size(); ++i) {
        if (!m_angles[i].is_integer()) {
            idx.push_back(i);
        }
    }
    return idx;
}

}

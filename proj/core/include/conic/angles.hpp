#ifndef CONIC_ANGLES_HPP
#define CONIC_ANGLES_HPP

#include "conic/rational.hpp"

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace conic
{

/// Cone angles, measured in turns (one turn is 2*pi radians), on a surface of given genus.
/**
 * Angles are held as exact rationals so that integrality and all the
 * lattice/parity tests in the admissibility conditions are decided exactly.
 * Decimal text ("0.1") parses exactly; binary doubles are snapped to the
 * nearest rational within a tolerance (default 1e-12).
 */
class AngleVector
{
    public:
        AngleVector(std::vector<Rational> angles, int genus = 0);

        /// Comma separated list such as "1/2,1/2,1/2,3/2" or "0.5, 1.5".
        static AngleVector parse(std::string_view list, int genus = 0);
        static AngleVector from_doubles(std::span<const double> angles, int genus = 0, double tol = 1e-12);

        std::span<const Rational> angles() const { return m_angles; }
        const Rational &operator[](std::size_t i) const { return m_angles[i]; }
        std::size_t size() const { return m_angles.size(); }
        int genus() const { return m_genus; }
        /// chi(S) = 2 - 2g.
        std::int64_t euler_characteristic() const { return 2 - 2 * static_cast<std::int64_t>(m_genus); }
        /// chi(S \ A) = 2 - 2g - n.
        std::int64_t punctured_euler_characteristic() const
        {
            return euler_characteristic() - static_cast<std::int64_t>(m_angles.size());
        }
        Rational sum() const;

        std::vector<std::size_t> integer_indices() const;
        std::vector<std::size_t> non_integer_indices() const;

    private:
        std::vector<Rational> m_angles;
        int m_genus;
};

}

#endif

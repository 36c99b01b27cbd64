#ifndef CONIC_ORACLE_ORACLES_HPP
#define CONIC_ORACLE_ORACLES_HPP

// Slow reference implementations used to check the library. None of these
// share code paths with the routines they verify.

#include "conic/angles.hpp"
#include "conic/elliptic.hpp"
#include "conic/rational.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace conic::oracle
{

/// l1 distance from alpha - 1 to the odd-sum integer lattice by exhaustive
/// search over the integer box alpha - 1 +- radius.
Rational closure_distance_box(const AngleVector &a, int radius = 3);

/// Number of two-row semistandard tableaux with rows of length row_length
/// and the given content, by listing every weakly increasing first row and
/// checking the columns of the resulting tableau.
std::int64_t kostka_enumerate(std::span<const std::int64_t> content, std::int64_t row_length);

/// Non-bubbling distance by scanning b = 0..ceil(|chi| + sum alpha) + 1 for
/// every subset.
Rational nonbubbling_scan(const AngleVector &a);

/// Degree from a dense integer-exponent expansion of g(x) (integer angles only).
std::int64_t chen_lin_degree_dense(const AngleVector &a);

/// Weierstrass functions on Z + tau Z by summing the lattice row by row,
/// each row in closed trigonometric form, truncated at |row| <= rows.
/// Works directly on the supplied (unreduced) basis and argument.
class LatticeSums
{
    public:
        explicit LatticeSums(cplx tau, int rows = 60);

        cplx wp(cplx z) const;
        cplx wp_prime(cplx z) const;
        cplx zeta(cplx z) const;
        cplx sigma(cplx z) const;

        /// Plain double sum of 1/(z-w)^2 - 1/w^2 over |m|, |n| <= box.
        cplx wp_box(cplx z, int box) const;

    private:
        cplx m_tau;
        int m_rows;
};

}

#endif

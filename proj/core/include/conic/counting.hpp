#ifndef CONIC_COUNTING_HPP
#define CONIC_COUNTING_HPP

#include "conic/angles.hpp"
#include "conic/rational.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace conic
{

enum class CountKind { kostka, catalan, chen_lin_degree, three_nonint_bound, torus_moduli };

std::string_view to_string(CountKind k);

/// One term c * x^exponent of a generating series.
struct SeriesTerm
{
    Rational exponent;
    std::int64_t coefficient;
};

/// Topology of the moduli space of metrics on a torus with one cone point.
struct TorusModuli
{
    std::int64_t m = 0;
    bool odd_integer = false;
    bool even_integer = false;
    /// Not an odd integer: connected surface of this genus with `punctures` punctures.
    std::optional<std::int64_t> genus;
    std::optional<std::int64_t> punctures;
    /// Odd integer: number of connected components (open disks).
    std::optional<std::int64_t> components;
    /// Even integer: degree alpha/2 of the forgetful map.
    std::optional<std::int64_t> forgetful_degree;
};

/// Intermediate data behind a count.
struct Derivation
{
    /// Degree d of the rational map (Kostka) from 2 + sum(alpha - 1) = 2d.
    std::optional<std::int64_t> map_degree;
    /// Content (alpha_j - 1) of the tableaux, with alpha_j = 1 entries dropped.
    std::vector<std::int64_t> content;
    /// T = chi + sum(alpha - 1); terms with 2 * exponent < T are summed.
    std::optional<Rational> threshold;
    /// Distinct exponents of g(x) below the threshold with their coefficients.
    std::vector<SeriesTerm> series;
    /// Index k of the last summed term (n_k), counting the constant term as 0.
    std::optional<std::int64_t> selected_k;
};

struct CountResult
{
    CountKind kind;
    std::int64_t value = 0;
    std::optional<TorusModuli> torus;
    Derivation derivation;
};

/// Number of semistandard tableaux of two-row shape (d-1, d-1) with content
/// (alpha_j - 1): the generic number of rational maps with these critical
/// points. Sphere, integer angles only; throws DomainError("parity
/// obstruction") when sum(alpha_j - 1) is odd.
CountResult kostka_count(const AngleVector &a);

/// Same count directly from a content vector and row length, by dynamic
/// programming over the first-row length.
std::int64_t two_row_kostka(std::span<const std::int64_t> content, std::int64_t row_length);

/// Catalan(k) = (2k)! / (k! (k+1)!).
std::int64_t catalan(std::int64_t k);

/// Leray-Schauder degree of the curvature equation from the coefficients of
/// g(x) = (1 + x + x^2 + ...)^(n - chi) * prod(1 - x^alpha_j).
/// Genus 0 requires allow_sphere. Throws DomainError("degree undefined on
/// critical wall") when the non-criticality condition fails.
CountResult chen_lin_degree(const AngleVector &a, bool allow_sphere = false);

/// Moduli topology for a torus with a single cone point of angle alpha1.
CountResult torus_moduli_topology(const Rational &alpha1);

/// Upper bound on the number of classes when exactly three angles are not integers.
CountResult three_nonint_bound(const AngleVector &a);

/// Exact count of metrics on the sphere when exactly two angles are non-integer.
/// Always throws UnsupportedQuery: only its existence is known here.
[[noreturn]] CountResult two_nonint_count(const AngleVector &a);

}

#endif

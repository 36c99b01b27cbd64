#ifndef CONIC_ERRORS_HPP
#define CONIC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace conic
{

/// Input is outside the domain where a condition or formula applies.
class DomainError : public std::domain_error
{
    public:
        using std::domain_error::domain_error;
};

/// Evaluation point is too close to a pole or lattice singularity.
class PoleError : public DomainError
{
    public:
        using DomainError::DomainError;
};

/// A numerical procedure failed to produce a certified answer.
class NumericalFailure : public std::runtime_error
{
    public:
        using std::runtime_error::runtime_error;
};

/// The query is well posed but has no implementable formula.
class UnsupportedQuery : public std::logic_error
{
    public:
        using std::logic_error::logic_error;
};

}

#endif

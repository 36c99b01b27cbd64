#include "conic/angles.hpp"
#include "conic/errors.hpp"
#include "conic/rational.hpp"

#include <doctest.h>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

using conic::AngleVector;
using conic::Rational;

TEST_SUITE("rational")
{
    TEST_CASE("lowest terms and sign")
    {
        const Rational r(6, -4);
        CHECK(r.num() == -3);
        CHECK(r.den() == 2);
        CHECK(r.str() == "-3/2");
        CHECK(Rational(4, 2).str() == "2");
        CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    }

    TEST_CASE("parse")
    {
        CHECK(Rational::parse("1/2") == Rational(1, 2));
        CHECK(Rational::parse(" -3/6 ") == Rational(-1, 2));
        CHECK(Rational::parse("0.125") == Rational(1, 8));
        CHECK(Rational::parse("-2.5e-1") == Rational(-1, 4));
        CHECK(Rational::parse("7") == Rational(7));
        CHECK(Rational::parse("1.5E2") == Rational(150));
        CHECK_THROWS_AS(Rational::parse("abc"), conic::DomainError);
        CHECK_THROWS_AS(Rational::parse("1/"), conic::DomainError);
        CHECK_THROWS_AS(Rational::parse(""), conic::DomainError);
    }

    TEST_CASE("from_double snaps within tolerance")
    {
        CHECK(Rational::from_double(0.1) == Rational(1, 10));
        CHECK(Rational::from_double(1.0 / 3.0) == Rational(1, 3));
        CHECK(Rational::from_double(-2.0) == Rational(-2));
    }

    TEST_CASE("floor, ceil, ordering")
    {
        CHECK(Rational(-1, 2).floor() == -1);
        CHECK(Rational(-1, 2).ceil() == 0);
        CHECK(Rational(7, 3).floor() == 2);
        CHECK(Rational(7, 3).ceil() == 3);
        CHECK(Rational(1, 3) < Rational(1, 2));
        CHECK(abs(Rational(-5, 7)) == Rational(5, 7));
    }

    TEST_CASE("overflow is reported, not wrapped")
    {
        const Rational big(std::numeric_limits<std::int64_t>::max() / 2);
        CHECK_THROWS_AS(big * Rational(3), std::overflow_error);
        CHECK_THROWS_AS(big + big + big, std::overflow_error);
    }
}

TEST_SUITE("angles")
{
    TEST_CASE("validation")
    {
        CHECK_THROWS_AS(AngleVector(std::vector<Rational>{}), conic::DomainError);
        CHECK_THROWS_AS(AngleVector({Rational(0)}), conic::DomainError);
        CHECK_THROWS_AS(AngleVector({Rational(-1, 2)}), conic::DomainError);
        CHECK_THROWS_AS(AngleVector({Rational(1)}, -1), conic::DomainError);
    }

    TEST_CASE("parse and classify")
    {
        const auto a = AngleVector::parse("1/2, 0.5,2,3/2", 0);
        CHECK(a.size() == 4);
        CHECK(a.sum() == Rational(9, 2));
        CHECK(a.integer_indices() == std::vector<std::size_t>{2});
        CHECK(a.non_integer_indices() == std::vector<std::size_t>{0, 1, 3});
        CHECK(a.euler_characteristic() == 2);
        CHECK(a.punctured_euler_characteristic() == -2);
        CHECK(AngleVector::parse("4", 1).euler_characteristic() == 0);
    }

    TEST_CASE("doubles snap to rationals")
    {
        const std::vector<double> v = {0.5, 2.0000000000001, 1.0 / 3.0};
        const auto a = AngleVector::from_doubles(v);
        CHECK(a[0] == Rational(1, 2));
        CHECK(a[1] == Rational(2));
        CHECK(a[2] == Rational(1, 3));
    }
}

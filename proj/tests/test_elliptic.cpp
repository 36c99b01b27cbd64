#include "conic/elliptic.hpp"
#include "conic/errors.hpp"
#include "conic/oracle/oracles.hpp"

#include <doctest.h>

#include <numbers>
#include <random>
#include <vector>

using namespace conic;

namespace
{

constexpr double pi = std::numbers::pi;
const cplx I(0.0, 1.0);

const std::vector<cplx> test_lattices = {cplx(0.0, 1.0), cplx(0.3, 1.1), cplx(-0.45, 0.62), cplx(0.5, 0.8660254037844386),
                                         cplx(2.7, 0.3), cplx(0.1, 3.5)};

double rel(cplx x, cplx y)
{
    return std::abs(x - y) / std::max(1.0, std::abs(y));
}

std::vector<cplx> sample_points(const EllipticContext &ctx, int n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    std::vector<cplx> pts;
    while (static_cast<int>(pts.size()) < n) {
        const cplx z = u(rng) + u(rng) * ctx.tau();
        if (ctx.distance_to_lattice(z) > 0.05 * ctx.min_period()) {
            pts.push_back(z);
        }
    }
    return pts;
}

}

TEST_SUITE("elliptic")
{
    TEST_CASE("construction")
    {
        CHECK_THROWS_AS(EllipticContext::from_tau(cplx(0.5, 0.0)), DomainError);
        const auto ctx = EllipticContext::from_tau(cplx(0.0, -2.0));
        CHECK(ctx.swapped());
        CHECK(ctx.tau().imag() > 0.0);
        CHECK(std::abs(ctx.tau() - cplx(0.0, 0.5)) < 1e-15);
        CHECK(std::abs(ctx.omega2() - 0.5) < 1e-15);
        CHECK(std::abs(ctx.omega1() - ctx.tau() / 2.0) < 1e-15);
        CHECK(std::abs(ctx.omega3() - ctx.omega1() - ctx.omega2()) < 1e-15);
    }

    TEST_CASE("square lattice")
    {
        const auto ctx = EllipticContext::from_tau(I);
        CHECK(std::abs(ctx.wp((1.0 + I) / 2.0)) < 1e-9);
        CHECK(std::abs(ctx.e3()) < 1e-9);
        CHECK(std::abs(ctx.g3()) < 1e-10);
        CHECK(std::abs(ctx.eta2() - pi / 2.0) < 1e-12);
        const oracle::LatticeSums ls(I);
        CHECK(rel(ctx.zeta(0.25), ls.zeta(0.25)) < 1e-8);
    }

    TEST_CASE("invariants on several lattices")
    {
        for (const cplx tau : test_lattices) {
            CAPTURE(tau);
            const auto ctx = EllipticContext::from_tau(tau);
            const double scale = std::abs(ctx.e1()) + std::abs(ctx.e2()) + std::abs(ctx.e3());
            CHECK(std::abs(ctx.e1() + ctx.e2() + ctx.e3()) < 1e-10 * std::max(1.0, scale));
            CHECK(std::abs(ctx.eta3() - ctx.eta1() - ctx.eta2()) < 1e-10 * std::max(1.0, std::abs(ctx.eta3())));
            const cplx legendre = ctx.eta2() * ctx.omega1() - ctx.eta1() * ctx.omega2();
            CHECK(std::abs(legendre - pi * I / 2.0) < 1e-10);
            for (const cplx z : sample_points(ctx, 25, 1)) {
                const cplx p = ctx.wp(z), dp = ctx.wp_prime(z);
                const cplx rhs = 4.0 * p * p * p - ctx.g2() * p - ctx.g3();
                CHECK(std::abs(dp * dp - rhs) < 1e-9 * std::max(1.0, std::abs(rhs)));
                const cplx prod = 4.0 * (p - ctx.e1()) * (p - ctx.e2()) * (p - ctx.e3());
                CHECK(std::abs(dp * dp - prod) < 1e-9 * std::max(1.0, std::abs(prod)));
            }
        }
    }

    TEST_CASE("parity")
    {
        const auto ctx = EllipticContext::from_tau(cplx(0.3, 1.1));
        for (const cplx z : sample_points(ctx, 20, 2)) {
            CHECK(rel(ctx.wp(-z), ctx.wp(z)) < 1e-12);
            CHECK(rel(ctx.zeta(-z), -ctx.zeta(z)) < 1e-12);
            CHECK(rel(ctx.sigma(-z), -ctx.sigma(z)) < 1e-12);
            CHECK(rel(ctx.wp_prime(-z), -ctx.wp_prime(z)) < 1e-12);
        }
    }

    TEST_CASE("quasi-periodicity")
    {
        for (const cplx tau : test_lattices) {
            CAPTURE(tau);
            const auto ctx = EllipticContext::from_tau(tau);
            for (const cplx z : sample_points(ctx, 10, 3)) {
                for (int k = 1; k <= 3; ++k) {
                    const cplx w = ctx.omega(k);
                    CHECK(rel(ctx.zeta(z + 2.0 * w), ctx.zeta(z) + 2.0 * ctx.eta(k)) < 1e-10);
                    CHECK(rel(ctx.wp(z + 2.0 * w), ctx.wp(z)) < 1e-10);
                    const cplx expect = -std::exp(2.0 * ctx.eta(k) * (z + w)) * ctx.sigma(z);
                    CHECK(std::abs(ctx.sigma(z + 2.0 * w) - expect) < 1e-9 * std::max(1.0, std::abs(expect)));
                }
            }
        }
    }

    TEST_CASE("derivatives by finite differences")
    {
        const auto ctx = EllipticContext::from_tau(cplx(-0.2, 0.9));
        const double h = 1e-5;
        for (const cplx z : sample_points(ctx, 10, 4)) {
            const cplx dzeta = (ctx.zeta(z + h) - ctx.zeta(z - h)) / (2.0 * h);
            CHECK(rel(dzeta, -ctx.wp(z)) < 1e-6);
            const cplx dwp = (ctx.wp(z + h) - ctx.wp(z - h)) / (2.0 * h);
            CHECK(rel(dwp, ctx.wp_prime(z)) < 1e-6);
            const cplx dlogsigma = (std::log(ctx.sigma(z + h)) - std::log(ctx.sigma(z - h))) / (2.0 * h);
            CHECK(rel(dlogsigma, ctx.zeta(z)) < 1e-6);
        }
    }

    TEST_CASE("homogeneity under a change of basis")
    {
        // Z + tau Z = tau (Z + (-1/tau) Z), so wp(z; tau) = wp(z / tau; -1/tau) / tau^2.
        for (const cplx tau : test_lattices) {
            const auto a = EllipticContext::from_tau(tau);
            const auto b = EllipticContext::from_tau(-1.0 / tau);
            for (const cplx z : sample_points(a, 5, 5)) {
                CHECK(rel(a.wp(z), b.wp(z / tau) / (tau * tau)) < 1e-10);
                CHECK(rel(a.zeta(z), b.zeta(z / tau) / tau) < 1e-10);
            }
            const auto c = EllipticContext::from_tau(tau + 1.0);
            CHECK(rel(c.g2(), a.g2()) < 1e-10);
            CHECK(rel(c.g3(), a.g3()) < 1e-10);
        }
    }

    TEST_CASE("agreement with the lattice-sum oracle")
    {
        for (const cplx tau : {cplx(0.0, 1.0), cplx(0.3, 1.1), cplx(-0.45, 0.62)}) {
            CAPTURE(tau);
            const auto ctx = EllipticContext::from_tau(tau);
            const oracle::LatticeSums ls(tau);
            for (int i = 0; i < 5; ++i) {
                for (int j = 0; j < 5; ++j) {
                    const cplx z = -0.4 + 0.2 * i + 0.013 + (-0.4 + 0.2 * j + 0.021) * tau;
                    CHECK(rel(ctx.wp(z), ls.wp(z)) < 1e-7);
                    CHECK(rel(ctx.wp_prime(z), ls.wp_prime(z)) < 1e-7);
                    CHECK(rel(ctx.zeta(z), ls.zeta(z)) < 1e-7);
                    CHECK(rel(ctx.sigma(z), ls.sigma(z)) < 1e-7);
                }
            }
        }
    }

    TEST_CASE("row sums agree with the plain double sum")
    {
        // The double sum converges slowly; this only guards the oracle itself.
        const oracle::LatticeSums ls(cplx(0.3, 1.1));
        const cplx z(0.21, 0.17);
        CHECK(rel(ls.wp_box(z, 400), ls.wp(z)) < 1e-4);
    }

    TEST_CASE("poles")
    {
        const auto ctx = EllipticContext::from_tau(cplx(0.3, 1.1));
        CHECK_THROWS_AS(ctx.wp(0.0), PoleError);
        CHECK_THROWS_AS(ctx.zeta(1.0 + ctx.tau()), PoleError);
        CHECK(std::abs(ctx.sigma(2.0 * ctx.omega1())) < 1e-12);
        CHECK_NOTHROW(ctx.wp(1e-6));
    }

    TEST_CASE("reduction helpers")
    {
        const auto ctx = EllipticContext::from_tau(cplx(0.3, 1.1));
        const cplx z(3.7, -2.2);
        const cplx r = ctx.reduce(z);
        const auto st = ctx.lattice_coords(r);
        CHECK(std::abs(st[0]) <= 0.5 + 1e-12);
        CHECK(std::abs(st[1]) <= 0.5 + 1e-12);
        CHECK(ctx.distance_to_lattice(z - r) < 1e-12);
        CHECK(ctx.distance_to_lattice(cplx(0.5, 0.0)) == doctest::Approx(0.5));
        CHECK(ctx.quasi_period(2.0 * ctx.omega1()) == 2.0 * ctx.eta1());
        CHECK_THROWS_AS(ctx.quasi_period(0.3), DomainError);
    }
}

#include "conic/elliptic.hpp"

#include "conic/errors.hpp"

#include <cmath>
#include <numbers>

namespace conic
{

namespace
{

constexpr double pi = std::numbers::pi;
const cplx I(0.0, 1.0);

// Series terms below this magnitude are dropped.
constexpr double series_cutoff = 1e-18;
constexpr double pole_radius = 1e-12;

}

EllipticContext EllipticContext::from_tau(cplx tau)
{
    if (!(std::isfinite(tau.real()) && std::isfinite(tau.imag())) || tau.imag() == 0.0) {
        throw DomainError("degenerate lattice: Im(tau) must be nonzero");
    }
    EllipticContext ctx;
    if (tau.imag() < 0.0) {
        tau = 1.0 / tau;
        ctx.m_swapped = true;
    }
    ctx.m_tau = tau;
    ctx.m_omega = {tau / 2.0, cplx(0.5, 0.0), tau / 2.0 + 0.5};

    // Reduce tau' = (a tau + b) / (c tau + d) to the fundamental domain.
    std::int64_t a = 1, b = 0, c = 0, d = 1;
    cplx t = tau;
    for (int iter = 0; iter < 10000; ++iter) {
        const auto k = static_cast<std::int64_t>(std::round(t.real()));
        t -= static_cast<double>(k);
        a -= k * c;
        b -= k * d;
        if (std::norm(t) < 1.0 - 1e-14) {
            t = -1.0 / t;
            const std::int64_t na = -c, nb = -d;
            c = a;
            d = b;
            a = na;
            b = nb;
        } else {
            break;
        }
    }
    ctx.m_mu = static_cast<double>(c) * tau + static_cast<double>(d);
    ctx.m_tau_red = (static_cast<double>(a) * tau + static_cast<double>(b)) / ctx.m_mu;
    ctx.m_q = std::exp(I * pi * ctx.m_tau_red);

    const cplx q2 = ctx.m_q * ctx.m_q;
    cplx q2k = q2;
    cplx e2_sum = 0.0;
    for (int k = 1; k < 200; ++k) {
        const cplx term = q2k / (1.0 - q2k);
        ctx.m_lambert.push_back(term);
        e2_sum += static_cast<double>(k) * term;
        // Arguments in the centered cell weight term k by up to |q|^-k.
        if (std::sqrt(std::abs(q2k)) * k * k < series_cutoff) {
            break;
        }
        q2k *= q2;
    }
    // eta for the half-period 1/2 from the quasi-modular E2 series; the other
    // reduced quasi-period follows from the Legendre relation.
    ctx.m_eta_a = pi * pi / 6.0 * (1.0 - 24.0 * e2_sum);
    ctx.m_eta_b = ctx.m_eta_a * ctx.m_tau_red - pi * I;

    ctx.m_theta_prime0 = 0.0;
    for (int k = 0; k < 200; ++k) {
        const cplx term = std::pow(ctx.m_q, static_cast<double>(k * (k + 1))) * ((k % 2 == 0) ? 1.0 : -1.0);
        ctx.m_theta.push_back(term);
        ctx.m_theta_prime0 += static_cast<double>(2 * k + 1) * term;
        if (std::abs(term) * std::pow(std::abs(ctx.m_q), -(k + 0.5)) * (2 * k + 1) < series_cutoff && k > 0) {
            break;
        }
    }

    for (int k = 0; k < 3; ++k) {
        ctx.m_eta[static_cast<std::size_t>(k)] = ctx.quasi_period(2.0 * ctx.m_omega[static_cast<std::size_t>(k)]) / 2.0;
        ctx.m_e[static_cast<std::size_t>(k)] = ctx.wp(ctx.m_omega[static_cast<std::size_t>(k)]);
    }
    const auto &e = ctx.m_e;
    ctx.m_g2 = 2.0 * (e[0] * e[0] + e[1] * e[1] + e[2] * e[2]);
    ctx.m_g3 = 4.0 * e[0] * e[1] * e[2];
    return ctx;
}

EllipticContext::Reduced EllipticContext::reduce_reduced(cplx w) const
{
    const double y = w.imag() / m_tau_red.imag();
    const double n = std::round(y);
    const cplx shifted = w - n * m_tau_red;
    const double m = std::round(shifted.real());
    return {shifted - m, static_cast<std::int64_t>(m), static_cast<std::int64_t>(n)};
}

cplx EllipticContext::quasi0(std::int64_t m, std::int64_t n) const
{
    return 2.0 * (static_cast<double>(m) * m_eta_a + static_cast<double>(n) * m_eta_b);
}

void EllipticContext::check_pole(cplx w0) const
{
    if (std::abs(w0) * std::abs(m_mu) < pole_radius) {
        throw PoleError("evaluation at a lattice point");
    }
}

cplx EllipticContext::zeta0(cplx w0) const
{
    const cplx nu = pi * w0;
    const cplx E = std::exp(2.0 * I * nu);
    const cplx Einv = 1.0 / E;
    cplx Ek = E, Eik = Einv, acc = 0.0;
    for (const auto &c : m_lambert) {
        const cplx s = (Ek - Eik) / (2.0 * I);
        acc += c * s;
        if (std::abs(c) * (std::abs(Ek) + std::abs(Eik)) < series_cutoff) {
            break;
        }
        Ek *= E;
        Eik *= Einv;
    }
    return 2.0 * m_eta_a * w0 + pi * (std::cos(nu) / std::sin(nu) + 4.0 * acc);
}

cplx EllipticContext::wp0(cplx w0) const
{
    const cplx nu = pi * w0;
    const cplx E = std::exp(2.0 * I * nu);
    const cplx Einv = 1.0 / E;
    cplx Ek = E, Eik = Einv, acc = 0.0;
    double k = 1.0;
    for (const auto &c : m_lambert) {
        const cplx co = (Ek + Eik) / 2.0;
        acc += k * c * co;
        if (k * std::abs(c) * (std::abs(Ek) + std::abs(Eik)) < series_cutoff) {
            break;
        }
        Ek *= E;
        Eik *= Einv;
        k += 1.0;
    }
    const cplx s = std::sin(nu);
    return -2.0 * m_eta_a + pi * pi * (1.0 / (s * s) - 8.0 * acc);
}

cplx EllipticContext::wp_prime0(cplx w0) const
{
    const cplx nu = pi * w0;
    const cplx E = std::exp(2.0 * I * nu);
    const cplx Einv = 1.0 / E;
    cplx Ek = E, Eik = Einv, acc = 0.0;
    double k = 1.0;
    for (const auto &c : m_lambert) {
        const cplx s = (Ek - Eik) / (2.0 * I);
        acc += k * k * c * s;
        if (k * k * std::abs(c) * (std::abs(Ek) + std::abs(Eik)) < series_cutoff) {
            break;
        }
        Ek *= E;
        Eik *= Einv;
        k += 1.0;
    }
    const cplx sn = std::sin(nu), cs = std::cos(nu);
    return pi * pi * pi * (-2.0 * cs / (sn * sn * sn) + 16.0 * acc);
}

cplx EllipticContext::sigma0(cplx w0) const
{
    const cplx nu = pi * w0;
    cplx acc = 0.0;
    double k = 0.0;
    for (const auto &t : m_theta) {
        acc += t * std::sin((2.0 * k + 1.0) * nu);
        k += 1.0;
    }
    return std::exp(m_eta_a * w0 * w0) * acc / (pi * m_theta_prime0);
}

cplx EllipticContext::wp(cplx z) const
{
    const auto r = reduce_reduced(z / m_mu);
    check_pole(r.w0);
    return wp0(r.w0) / (m_mu * m_mu);
}

cplx EllipticContext::wp_prime(cplx z) const
{
    const auto r = reduce_reduced(z / m_mu);
    check_pole(r.w0);
    return wp_prime0(r.w0) / (m_mu * m_mu * m_mu);
}

cplx EllipticContext::zeta(cplx z) const
{
    const auto r = reduce_reduced(z / m_mu);
    check_pole(r.w0);
    return (zeta0(r.w0) + quasi0(r.m, r.n)) / m_mu;
}

cplx EllipticContext::sigma(cplx z) const
{
    const auto r = reduce_reduced(z / m_mu);
    const cplx P = static_cast<double>(r.m) + static_cast<double>(r.n) * m_tau_red;
    const bool odd = ((r.m + r.n + r.m * r.n) % 2) != 0;
    const cplx factor = std::exp(quasi0(r.m, r.n) * (r.w0 + P / 2.0));
    return m_mu * (odd ? -1.0 : 1.0) * factor * sigma0(r.w0);
}

cplx EllipticContext::quasi_period(cplx period) const
{
    const auto r = reduce_reduced(period / m_mu);
    if (std::abs(r.w0) > 1e-8) {
        throw DomainError("quasi_period: argument is not a lattice vector");
    }
    return quasi0(r.m, r.n) / m_mu;
}

std::array<double, 2> EllipticContext::lattice_coords(cplx z) const
{
    const double t = z.imag() / m_tau.imag();
    return {(z - t * m_tau).real(), t};
}

double EllipticContext::distance_to_lattice(cplx z) const
{
    const cplx w0 = reduce_reduced(z / m_mu).w0;
    double best = std::abs(w0);
    for (int i = -1; i <= 1; ++i) {
        for (int j = -1; j <= 1; ++j) {
            best = std::min(best, std::abs(w0 - static_cast<double>(i) - static_cast<double>(j) * m_tau_red));
        }
    }
    return best * std::abs(m_mu);
}

cplx EllipticContext::reduce(cplx z) const
{
    const auto st = lattice_coords(z);
    return z - std::round(st[0]) - std::round(st[1]) * m_tau;
}

}

#ifndef CONIC_ELLIPTIC_HPP
#define CONIC_ELLIPTIC_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

namespace conic
{

using cplx = std::complex<double>;

/// Weierstrass functions on the lattice generated by 1 and tau.
/**
 * Half-periods follow the labeling omega2 = 1/2, omega1 = tau/2 (so that
 * tau = omega1/omega2), omega3 = omega1 + omega2. Quasi-periods are
 * eta_k = zeta(omega_k), with zeta(z + 2 omega_k) = zeta(z) + 2 eta_k and
 * sigma(z + 2 omega_k) = -exp(2 eta_k (z + omega_k)) sigma(z).
 *
 * Evaluation goes through an equivalent lattice with modulus reduced to the
 * standard fundamental domain, where the q-series converge at least as fast
 * as exp(-pi sqrt(3)/2) per term. Arguments are reduced to the centered
 * period cell and the quasi-periodicity factors reattached.
 *
 * Immutable after construction; all methods are const and thread safe.
 */
class EllipticContext
{
    public:
        /// Im(tau) < 0 swaps the roles of omega1 and omega2 (tau -> 1/tau).
        /// Throws DomainError when Im(tau) == 0.
        static EllipticContext from_tau(cplx tau);

        cplx tau() const { return m_tau; }
        /// True when the supplied tau had negative imaginary part and was inverted.
        bool swapped() const { return m_swapped; }
        cplx omega1() const { return m_omega[0]; }
        cplx omega2() const { return m_omega[1]; }
        cplx omega3() const { return m_omega[2]; }
        /// k = 1, 2, 3.
        cplx omega(int k) const { return m_omega[static_cast<std::size_t>(k - 1)]; }
        cplx eta(int k) const { return m_eta[static_cast<std::size_t>(k - 1)]; }
        cplx e(int k) const { return m_e[static_cast<std::size_t>(k - 1)]; }
        cplx eta1() const { return m_eta[0]; }
        cplx eta2() const { return m_eta[1]; }
        cplx eta3() const { return m_eta[2]; }
        cplx e1() const { return m_e[0]; }
        cplx e2() const { return m_e[1]; }
        cplx e3() const { return m_e[2]; }
        cplx g2() const { return m_g2; }
        cplx g3() const { return m_g3; }
        /// Nome exp(i pi tau') of the reduced modulus used for evaluation.
        cplx nome() const { return m_q; }
        cplx reduced_tau() const { return m_tau_red; }
        /// Length of the shortest nonzero lattice vector.
        double min_period() const { return std::abs(m_mu); }

        /// Weierstrass p. Throws PoleError within 1e-12 of a lattice point.
        cplx wp(cplx z) const;
        cplx wp_prime(cplx z) const;
        /// Weierstrass zeta. Throws PoleError within 1e-12 of a lattice point.
        cplx zeta(cplx z) const;
        /// Weierstrass sigma (entire, vanishes on the lattice).
        cplx sigma(cplx z) const;

        /// H(P) with zeta(z + P) = zeta(z) + H(P) for a lattice vector P.
        cplx quasi_period(cplx period) const;
        /// Coordinates (s, t) with z = s * 1 + t * tau.
        std::array<double, 2> lattice_coords(cplx z) const;
        /// Distance from z to the nearest lattice point.
        double distance_to_lattice(cplx z) const;
        /// Representative of z modulo the lattice in the centered cell
        /// { s + t tau : s, t in [-1/2, 1/2) } (up to rounding).
        cplx reduce(cplx z) const;

    private:
        EllipticContext() = default;

        // Reduced-lattice quantities: w = z / mu lives on Z + tau' Z.
        struct Reduced
        {
            cplx w0;
            std::int64_t m;
            std::int64_t n;
        };
        Reduced reduce_reduced(cplx w) const;
        cplx zeta0(cplx w0) const;
        cplx wp0(cplx w0) const;
        cplx wp_prime0(cplx w0) const;
        cplx sigma0(cplx w0) const;
        cplx quasi0(std::int64_t m, std::int64_t n) const;
        void check_pole(cplx w0) const;

        cplx m_tau;
        bool m_swapped = false;
        std::array<cplx, 3> m_omega;
        std::array<cplx, 3> m_eta;
        std::array<cplx, 3> m_e;
        cplx m_g2;
        cplx m_g3;

        cplx m_tau_red;
        cplx m_mu;
        cplx m_q;
        cplx m_eta_a;
        cplx m_eta_b;
        // q^{2k} / (1 - q^{2k}), k = 1..
        std::vector<cplx> m_lambert;
        // (-1)^k q^{k(k+1)}, k = 0..
        std::vector<cplx> m_theta;
        cplx m_theta_prime0;
};

}

#endif

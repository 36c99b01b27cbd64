#include "conic/oracle/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace conic::oracle
{

namespace
{

constexpr double pi = std::numbers::pi;

}

Rational closure_distance_box(const AngleVector &a, int radius)
{
    const std::size_t n = a.size();
    std::vector<Rational> x;
    std::vector<std::int64_t> lo;
    for (const auto &alpha : a.angles()) {
        x.push_back(alpha - Rational(1));
        lo.push_back(x.back().floor() - radius);
    }
    std::vector<std::int64_t> k(lo);
    std::optional<Rational> best;
    // Odometer over the box.
    while (true) {
        std::int64_t s = 0;
        for (auto v : k) s += v;
        if ((s % 2 + 2) % 2 == 1) {
            Rational d;
            for (std::size_t j = 0; j < n; ++j) {
                d += abs(x[j] - Rational(k[j]));
            }
            if (!best || d < *best) {
                best = d;
            }
        }
        std::size_t j = 0;
        while (j < n) {
            if (++k[j] <= lo[j] + 2 * radius + 1) {
                break;
            }
            k[j] = lo[j];
            ++j;
        }
        if (j == n) {
            break;
        }
    }
    return *best;
}

std::int64_t kostka_enumerate(std::span<const std::int64_t> content, std::int64_t row_length)
{
    std::vector<std::int64_t> multiset;
    for (std::size_t v = 0; v < content.size(); ++v) {
        multiset.insert(multiset.end(), static_cast<std::size_t>(content[v]), static_cast<std::int64_t>(v + 1));
    }
    if (static_cast<std::int64_t>(multiset.size()) != 2 * row_length) {
        return 0;
    }
    const std::int64_t values = static_cast<std::int64_t>(content.size());
    std::int64_t count = 0;
    std::vector<std::int64_t> row1;
    // Every weakly increasing first row; row 2 is what remains, sorted.
    std::function<void(std::int64_t)> rec = [&](std::int64_t min_val) {
        if (static_cast<std::int64_t>(row1.size()) == row_length) {
            std::vector<std::int64_t> rest = multiset;
            for (auto v : row1) {
                auto it = std::find(rest.begin(), rest.end(), v);
                if (it == rest.end()) {
                    return;
                }
                rest.erase(it);
            }
            std::sort(rest.begin(), rest.end());
            for (std::int64_t c = 0; c < row_length; ++c) {
                if (!(row1[static_cast<std::size_t>(c)] < rest[static_cast<std::size_t>(c)])) {
                    return;
                }
            }
            ++count;
            return;
        }
        for (std::int64_t v = min_val; v <= values; ++v) {
            row1.push_back(v);
            rec(v);
            row1.pop_back();
        }
    };
    rec(1);
    return count;
}

Rational nonbubbling_scan(const AngleVector &a)
{
    const std::size_t n = a.size();
    const Rational target(a.punctured_euler_characteristic());
    const Rational total = a.sum();
    const std::int64_t b_max = (abs(target) + total).ceil() + 1;
    std::optional<Rational> best;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
        Rational s;
        for (std::size_t j = 0; j < n; ++j) {
            s += (mask >> j & 1u) ? a[j] : -a[j];
        }
        for (std::int64_t b = 0; b <= b_max; ++b) {
            const Rational d = abs(target - (s + Rational(2 * b)));
            if (!best || d < *best) {
                best = d;
            }
        }
    }
    return *best;
}

std::int64_t chen_lin_degree_dense(const AngleVector &a)
{
    Rational threshold(a.euler_characteristic());
    for (const auto &alpha : a.angles()) {
        if (!alpha.is_integer()) {
            throw std::invalid_argument("dense expansion needs integer angles");
        }
        threshold += alpha - Rational(1);
    }
    const std::int64_t N = static_cast<std::int64_t>(a.size()) - a.euler_characteristic();
    const std::int64_t len = std::max<std::int64_t>(threshold.ceil(), 1) + 1;
    auto mul = [&](const std::vector<std::int64_t> &p, const std::vector<std::int64_t> &q) {
        std::vector<std::int64_t> r(static_cast<std::size_t>(len), 0);
        for (std::int64_t i = 0; i < len; ++i) {
            for (std::int64_t j = 0; i + j < len; ++j) {
                r[static_cast<std::size_t>(i + j)] += p[static_cast<std::size_t>(i)] * q[static_cast<std::size_t>(j)];
            }
        }
        return r;
    };
    std::vector<std::int64_t> g(static_cast<std::size_t>(len), 0);
    g[0] = 1;
    std::vector<std::int64_t> ones(static_cast<std::size_t>(len), 1);
    std::vector<std::int64_t> one_minus_x(static_cast<std::size_t>(len), 0);
    one_minus_x[0] = 1;
    one_minus_x[1] = -1;
    for (std::int64_t i = 0; i < std::abs(N); ++i) {
        g = mul(g, N > 0 ? ones : one_minus_x);
    }
    for (const auto &alpha : a.angles()) {
        std::vector<std::int64_t> f(static_cast<std::size_t>(len), 0);
        f[0] = 1;
        if (alpha.num() < len) {
            f[static_cast<std::size_t>(alpha.num())] -= 1;
        }
        g = mul(g, f);
    }
    std::int64_t d = 0;
    for (std::int64_t i = 0; i < len; ++i) {
        if (Rational(2 * i) < threshold) {
            d += g[static_cast<std::size_t>(i)];
        }
    }
    return d;
}

LatticeSums::LatticeSums(cplx tau, int rows) : m_tau(tau), m_rows(rows)
{
    if (!(tau.imag() > 0.0)) {
        throw std::invalid_argument("LatticeSums needs Im(tau) > 0");
    }
    // Rows beyond exp(-2 pi n Im tau) < 1e-40 are negligible; stopping there also
    // keeps sin(pi n tau) finite.
    m_rows = std::min(rows, static_cast<int>(std::ceil(46.0 / (pi * tau.imag()))) + 2);
}

namespace
{

cplx csc2(cplx x)
{
    const cplx s = std::sin(x);
    return 1.0 / (s * s);
}

cplx cot(cplx x)
{
    return std::cos(x) / std::sin(x);
}

}

// Row n holds the points m + n tau. Using sum_m 1/(x - m)^2 = pi^2 csc^2(pi x)
// and friends gives each row in closed form; rows decay like exp(-2 pi |n| Im tau).
cplx LatticeSums::wp(cplx z) const
{
    cplx acc = pi * pi * csc2(pi * z) - pi * pi / 3.0;
    for (int n = 1; n <= m_rows; ++n) {
        for (int s : {-1, 1}) {
            const cplx c = static_cast<double>(s * n) * m_tau;
            acc += pi * pi * (csc2(pi * (z - c)) - csc2(pi * c));
        }
    }
    return acc;
}

cplx LatticeSums::wp_prime(cplx z) const
{
    auto row = [](cplx x) { return -2.0 * pi * pi * pi * csc2(pi * x) * cot(pi * x); };
    cplx acc = row(z);
    for (int n = 1; n <= m_rows; ++n) {
        acc += row(z - static_cast<double>(n) * m_tau) + row(z + static_cast<double>(n) * m_tau);
    }
    return acc;
}

cplx LatticeSums::zeta(cplx z) const
{
    cplx acc = pi * cot(pi * z) + z * pi * pi / 3.0;
    for (int n = 1; n <= m_rows; ++n) {
        for (int s : {-1, 1}) {
            const cplx c = static_cast<double>(s * n) * m_tau;
            acc += pi * cot(pi * (z - c)) + pi * cot(pi * c) + z * pi * pi * csc2(pi * c);
        }
    }
    return acc;
}

cplx LatticeSums::sigma(cplx z) const
{
    cplx acc = std::sin(pi * z) / pi * std::exp(z * z * pi * pi / 6.0);
    for (int n = 1; n <= m_rows; ++n) {
        for (int s : {-1, 1}) {
            const cplx c = static_cast<double>(s * n) * m_tau;
            acc *= std::sin(pi * (c - z)) / std::sin(pi * c)
                * std::exp(z * pi * cot(pi * c) + z * z * pi * pi * csc2(pi * c) / 2.0);
        }
    }
    return acc;
}

cplx LatticeSums::wp_box(cplx z, int box) const
{
    cplx acc = 1.0 / (z * z);
    for (int m = -box; m <= box; ++m) {
        for (int n = -box; n <= box; ++n) {
            if (m == 0 && n == 0) {
                continue;
            }
            const cplx w = static_cast<double>(m) + static_cast<double>(n) * m_tau;
            acc += 1.0 / ((z - w) * (z - w)) - 1.0 / (w * w);
        }
    }
    return acc;
}

}

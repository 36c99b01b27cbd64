#include "conic/counting.hpp"

#include "conic/conditions.hpp"
#include "conic/errors.hpp"

#include <limits>
#include <map>
#include <stdexcept>

namespace conic
{

namespace
{

std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r = 0;
    if (__builtin_add_overflow(a, b, &r)) {
        throw std::overflow_error("count overflow");
    }
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw std::overflow_error("count overflow");
    }
    return r;
}

// Coefficients c_0..c_count of (1 - x)^(-N) for any integer N.
std::vector<std::int64_t> geometric_power(std::int64_t N, std::int64_t count)
{
    std::vector<std::int64_t> c{1};
    for (std::int64_t i = 1; i <= count; ++i) {
        const __int128 next = static_cast<__int128>(c.back()) * (N + i - 1) / i;
        if (next > std::numeric_limits<std::int64_t>::max() || next < std::numeric_limits<std::int64_t>::min()) {
            throw std::overflow_error("series coefficient overflow");
        }
        c.push_back(static_cast<std::int64_t>(next));
    }
    return c;
}

}

std::string_view to_string(CountKind k)
{
    switch (k) {
        case CountKind::kostka: return "kostka";
        case CountKind::catalan: return "catalan";
        case CountKind::chen_lin_degree: return "chen_lin_degree";
        case CountKind::three_nonint_bound: return "three_nonint_bound";
        case CountKind::torus_moduli: return "torus_moduli";
    }
    return "?";
}

std::int64_t two_row_kostka(std::span<const std::int64_t> content, std::int64_t row_length)
{
    std::int64_t total = 0;
    for (auto c : content) {
        if (c < 0) {
            throw DomainError("negative content");
        }
        total = checked_add(total, c);
    }
    if (row_length < 0 || total != 2 * row_length) {
        return 0;
    }
    // ways[r1]: fillings using the values so far with first row of length r1.
    std::vector<std::int64_t> ways(static_cast<std::size_t>(row_length) + 1, 0);
    ways[0] = 1;
    std::int64_t filled = 0;
    for (auto mu : content) {
        std::vector<std::int64_t> next(ways.size(), 0);
        for (std::int64_t r1 = 0; r1 <= row_length; ++r1) {
            const auto w = ways[static_cast<std::size_t>(r1)];
            if (w == 0) {
                continue;
            }
            const std::int64_t r2 = filled - r1;
            for (std::int64_t x = 0; x <= mu; ++x) {
                const std::int64_t y = mu - x;
                // Copies placed in row 2 must sit under strictly smaller entries.
                if (r1 + x > row_length || r2 + y > r1) {
                    continue;
                }
                auto &slot = next[static_cast<std::size_t>(r1 + x)];
                slot = checked_add(slot, w);
            }
        }
        ways = std::move(next);
        filled += mu;
    }
    return ways[static_cast<std::size_t>(row_length)];
}

std::int64_t catalan(std::int64_t k)
{
    if (k < 0) {
        throw DomainError("catalan index must be non-negative");
    }
    __int128 c = 1;
    for (std::int64_t i = 0; i < k; ++i) {
        // C_{i+1} = C_i * 2(2i+1) / (i+2)
        c = c * 2 * (2 * i + 1) / (i + 2);
        if (c > std::numeric_limits<std::int64_t>::max()) {
            throw std::overflow_error("catalan overflow");
        }
    }
    return static_cast<std::int64_t>(c);
}

CountResult kostka_count(const AngleVector &a)
{
    if (a.genus() != 0) {
        throw DomainError("Kostka count applies to the sphere only");
    }
    CountResult r;
    r.kind = CountKind::kostka;
    std::int64_t excess = 0;
    for (const auto &alpha : a.angles()) {
        if (!alpha.is_integer()) {
            throw DomainError("Kostka count requires integer angles, got " + alpha.str());
        }
        if (alpha.num() > 1) {
            r.derivation.content.push_back(alpha.num() - 1);
            excess = checked_add(excess, alpha.num() - 1);
        }
    }
    if (excess % 2 != 0) {
        throw DomainError("parity obstruction: sum(alpha - 1) = " + std::to_string(excess) + " is odd");
    }
    const std::int64_t d = 1 + excess / 2;
    r.derivation.map_degree = d;
    for (const auto &alpha : a.angles()) {
        if (alpha.num() > d) {
            r.value = 0;
            return r;
        }
    }
    r.value = two_row_kostka(r.derivation.content, d - 1);
    bool all_simple = !r.derivation.content.empty();
    for (auto c : r.derivation.content) {
        all_simple = all_simple && c == 1;
    }
    if (all_simple) {
        r.kind = CountKind::catalan;
    }
    return r;
}

CountResult chen_lin_degree(const AngleVector &a, bool allow_sphere)
{
    if (a.genus() == 0 && !allow_sphere) {
        throw DomainError("degree formula is stated for genus > 0; pass allow_sphere for genus 0");
    }
    if (chen_lin_con(a).verdict != Verdict::holds) {
        throw DomainError("degree undefined on critical wall");
    }
    const std::int64_t chi = a.euler_characteristic();
    const auto n = static_cast<std::int64_t>(a.size());
    Rational threshold(chi);
    for (const auto &alpha : a.angles()) {
        threshold += alpha - Rational(1);
    }

    // prod(1 - x^alpha_j), merging equal exponents.
    std::map<Rational, std::int64_t> binomial{{Rational(0), 1}};
    for (const auto &alpha : a.angles()) {
        std::map<Rational, std::int64_t> next = binomial;
        for (const auto &[e, c] : binomial) {
            next[e + alpha] = checked_add(next[e + alpha], -c);
        }
        std::erase_if(next, [](const auto &kv) { return kv.second == 0; });
        binomial = std::move(next);
    }

    // Geometric factor, truncated where 2 * exponent reaches the threshold.
    const Rational half = threshold / Rational(2);
    const std::int64_t max_shift = std::max<std::int64_t>(half.ceil(), 0);
    const auto geo = geometric_power(n - chi, max_shift);
    std::map<Rational, std::int64_t> series;
    for (const auto &[e, c] : binomial) {
        for (std::int64_t i = 0; i <= max_shift; ++i) {
            const Rational exponent = e + Rational(i);
            if (!(exponent < half)) {
                break;
            }
            series[exponent] = checked_add(series[exponent], checked_mul(c, geo[static_cast<std::size_t>(i)]));
        }
    }

    CountResult r;
    r.kind = CountKind::chen_lin_degree;
    r.derivation.threshold = threshold;
    for (const auto &[e, c] : series) {
        if (c != 0) {
            r.derivation.series.push_back({e, c});
            r.value = checked_add(r.value, c);
        }
    }
    r.derivation.selected_k = static_cast<std::int64_t>(r.derivation.series.size()) - 1;
    return r;
}

CountResult torus_moduli_topology(const Rational &alpha1)
{
    if (alpha1 <= Rational(0)) {
        throw DomainError("angle must be positive");
    }
    TorusModuli t;
    t.m = ((alpha1 + Rational(1)) / Rational(2)).floor();
    t.odd_integer = alpha1.is_integer() && alpha1.num() % 2 != 0;
    t.even_integer = alpha1.is_integer() && alpha1.num() % 2 == 0;
    CountResult r;
    r.kind = CountKind::torus_moduli;
    if (t.odd_integer) {
        const std::int64_t num = checked_mul(t.m, t.m + 1);
        t.components = (num + 5) / 6;
        r.value = *t.components;
    } else {
        t.genus = (checked_mul(t.m, t.m) - 6 * t.m + 12) / 12;
        t.punctures = t.m;
        if (t.even_integer) {
            t.forgetful_degree = alpha1.num() / 2;
        }
        r.value = *t.genus;
    }
    r.torus = t;
    return r;
}

CountResult three_nonint_bound(const AngleVector &a)
{
    const auto t = three_nonint(a);
    CountResult r;
    r.kind = CountKind::three_nonint_bound;
    r.value = t.class_bound;
    return r;
}

CountResult two_nonint_count(const AngleVector &a)
{
    const auto nonint = a.non_integer_indices();
    throw UnsupportedQuery("exact count for " + std::to_string(nonint.size())
                           + " non-integer angles on the sphere is expressed through Kostka numbers by a formula"
                             " that is not available; only existence (at least one class) is known");
}

}

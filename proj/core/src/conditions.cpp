#include "conic/conditions.hpp"

#include "conic/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace conic
{

namespace
{

std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw std::overflow_error("integer overflow");
    }
    return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r = 0;
    if (__builtin_add_overflow(a, b, &r)) {
        throw std::overflow_error("integer overflow");
    }
    return r;
}

// Angles rescaled to integers over a common denominator.
struct Scaled
{
    std::int64_t den = 1;
    std::vector<std::int64_t> num;
    std::int64_t total = 0;
};

Scaled scale(std::span<const Rational> values)
{
    Scaled s;
    for (const auto &v : values) {
        s.den = checked_mul(s.den / std::gcd(s.den, v.den()), v.den());
    }
    for (const auto &v : values) {
        s.num.push_back(checked_mul(v.num(), s.den / v.den()));
        s.total = checked_add(s.total, s.num.back());
    }
    return s;
}

void require_sphere(const AngleVector &a, const char *what)
{
    if (a.genus() != 0) {
        throw DomainError(std::string(what) + " applies to the sphere (genus 0) only");
    }
}

void require_enumerable(std::size_t n)
{
    if (n > max_enumerated_angles) {
        throw DomainError("refusing exponential enumeration over " + std::to_string(n) + " angles (limit "
                          + std::to_string(max_enumerated_angles) + ")");
    }
}

std::vector<std::size_t> mask_to_subset(std::uint64_t mask, std::size_t n)
{
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < n; ++j) {
        if (mask >> j & 1u) {
            out.push_back(j);
        }
    }
    return out;
}

// Visits every subset of {0..n-1} in Gray-code order, passing the mask and
// the running sum of the selected scaled values.
template <typename F>
void for_each_subset_sum(const std::vector<std::int64_t> &vals, F &&visit)
{
    const std::size_t n = vals.size();
    std::uint64_t mask = 0;
    std::int64_t sum = 0;
    visit(mask, sum);
    for (std::uint64_t i = 1; i < (std::uint64_t(1) << n); ++i) {
        const auto bit = static_cast<std::size_t>(__builtin_ctzll(i));
        mask ^= std::uint64_t(1) << bit;
        sum += (mask >> bit & 1u) ? vals[bit] : -vals[bit];
        visit(mask, sum);
    }
}

// Nearest integer, ties to even.
std::int64_t round_half_even(const Rational &x)
{
    const std::int64_t fl = x.floor();
    const Rational frac = x - Rational(fl);
    const Rational half(1, 2);
    if (frac < half) {
        return fl;
    }
    if (frac > half) {
        return fl + 1;
    }
    return fl % 2 == 0 ? fl : fl + 1;
}

double cos_pi(const Rational &x)
{
    // Reduce modulo 2 before leaving exact arithmetic.
    const std::int64_t period = checked_mul(2, x.den());
    std::int64_t p = x.num() % period;
    if (p < 0) {
        p += period;
    }
    return std::cos(std::numbers::pi * static_cast<double>(p) / static_cast<double>(x.den()));
}

Verdict threshold_verdict(const Rational &value, const Rational &threshold)
{
    if (value > threshold) return Verdict::holds;
    if (value == threshold) return Verdict::boundary;
    return Verdict::fails;
}

}

std::string_view to_string(Verdict v)
{
    switch (v) {
        case Verdict::holds: return "holds";
        case Verdict::fails: return "fails";
        case Verdict::boundary: return "boundary";
    }
    return "?";
}

std::string_view to_string(SphereClass c)
{
    switch (c) {
        case SphereClass::impossible: return "impossible";
        case SphereClass::exists_nondegenerate: return "exists_nondegenerate";
        case SphereClass::boundary_coaxial_only: return "boundary_coaxial_only";
    }
    return "?";
}

GaussBonnet gauss_bonnet(const AngleVector &a)
{
    Rational value(a.euler_characteristic());
    for (const auto &alpha : a.angles()) {
        value += alpha - Rational(1);
    }
    return {value, threshold_verdict(value, Rational(0))};
}

Rational closure_distance(const AngleVector &a)
{
    require_sphere(a, "closure condition");
    Rational dist;
    std::int64_t parity = 0;
    std::optional<Rational> flip_cost;
    for (const auto &alpha : a.angles()) {
        const Rational x = alpha - Rational(1);
        const std::int64_t r = round_half_even(x);
        const Rational frac = abs(x - Rational(r));
        dist += frac;
        parity += r & 1;
        const Rational cost = Rational(1) - Rational(2) * frac;
        if (!flip_cost || cost < *flip_cost) {
            flip_cost = cost;
        }
    }
    if (parity % 2 == 0) {
        dist += *flip_cost;
    }
    return dist;
}

SphereClass mondello_panov_classify(const AngleVector &a)
{
    require_sphere(a, "sphere classification");
    if (gauss_bonnet(a).verdict != Verdict::holds) {
        return SphereClass::impossible;
    }
    const Rational d1 = closure_distance(a);
    if (d1 < Rational(1)) {
        return SphereClass::impossible;
    }
    return d1 == Rational(1) ? SphereClass::boundary_coaxial_only : SphereClass::exists_nondegenerate;
}

CoaxialResult coaxial_admissible(const AngleVector &a)
{
    require_sphere(a, "co-axial admissibility");
    const auto nonint = a.non_integer_indices();
    const auto ints = a.integer_indices();
    require_enumerable(nonint.size());

    std::vector<Rational> noninteger_angles;
    for (auto j : nonint) {
        noninteger_angles.push_back(a[j]);
    }
    std::int64_t int_sum = 0;
    std::int64_t max_int = 0;
    for (auto j : ints) {
        int_sum = checked_add(int_sum, a[j].num());
        max_int = std::max(max_int, a[j].num());
    }
    const auto n = static_cast<std::int64_t>(a.size());
    const Scaled sc = scale(noninteger_angles);

    std::optional<CoaxialWitness> witness;
    // sum(eps_j * alpha_j) = 2 * (sum over the "+" set) - total.
    for_each_subset_sum(sc.num, [&](std::uint64_t mask, std::int64_t plus_sum) {
        if (witness) {
            return;
        }
        const std::int64_t signed_sum = 2 * plus_sum - sc.total;
        if (signed_sum < 0 || signed_sum % sc.den != 0) {
            return;
        }
        const std::int64_t k1 = signed_sum / sc.den;
        const std::int64_t k2 = int_sum - n - k1 + 2;
        if (k2 < 0 || k2 % 2 != 0) {
            return;
        }
        CoaxialWitness w;
        for (std::size_t j = 0; j < nonint.size(); ++j) {
            w.signs.push_back((mask >> j & 1u) ? 1 : -1);
        }
        w.k_prime = k1;
        w.k_double_prime = k2;
        w.c = noninteger_angles;
        w.c.insert(w.c.end(), static_cast<std::size_t>(k1 + k2), Rational(1));
        // Rational entries are always commensurable; reduce to the primitive b.
        const Scaled cs = scale(w.c);
        std::int64_t g = 0;
        for (auto v : cs.num) {
            g = std::gcd(g, v);
        }
        for (auto v : cs.num) {
            w.b.push_back(v / g);
            w.b_l1 = checked_add(w.b_l1, std::abs(v / g));
        }
        w.max_integer_angle = max_int;
        if (2 * max_int <= w.b_l1) {
            witness = std::move(w);
        }
    });
    if (witness) {
        return {Verdict::holds, std::move(witness)};
    }
    return {Verdict::fails, std::nullopt};
}

LuoTian luo_tian(const AngleVector &a)
{
    require_sphere(a, "the all-angles-below-one criterion");
    Rational min_angle = a[0];
    for (const auto &alpha : a.angles()) {
        if (alpha >= Rational(1)) {
            throw DomainError("criterion requires every angle < 1, got " + alpha.str());
        }
        min_angle = std::min(min_angle, alpha);
    }
    LuoTian r{Verdict::fails, Rational(2), Rational(2) * min_angle};
    for (const auto &alpha : a.angles()) {
        r.value += alpha - Rational(1);
    }
    if (r.value > Rational(0) && r.value <= r.bound) {
        r.verdict = Verdict::holds;
        r.on_boundary = r.value == r.bound;
        r.unique = true;
    }
    return r;
}

ThreeNonInteger three_nonint(const AngleVector &a)
{
    require_sphere(a, "three non-integer angle criterion");
    const auto nonint = a.non_integer_indices();
    if (nonint.size() != 3) {
        throw DomainError("criterion requires exactly three non-integer angles, got "
                          + std::to_string(nonint.size()));
    }
    ThreeNonInteger r{Verdict::fails, 0.0, 0, 1, nonint};
    for (auto j : a.integer_indices()) {
        r.sigma = checked_add(r.sigma, a[j].num() - 1);
        r.class_bound = checked_mul(r.class_bound, a[j].num());
    }
    const double c1 = cos_pi(a[nonint[0]]), c2 = cos_pi(a[nonint[1]]), c3 = cos_pi(a[nonint[2]]);
    const double sign = (r.sigma % 2 == 0) ? 1.0 : -1.0;
    r.value = c1 * c1 + c2 * c2 + c3 * c3 + 2.0 * sign * c1 * c2 * c3;
    // Strict inequality; values within rounding of 1 count as equality.
    r.verdict = r.value < 1.0 - 1e-12 ? Verdict::holds : Verdict::fails;
    return r;
}

NonBubbling nonbubbling(const AngleVector &a)
{
    require_enumerable(a.size());
    const Scaled sc = scale(a.angles());
    const std::int64_t target = checked_mul(a.punctured_euler_characteristic(), sc.den);

    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    std::uint64_t best_mask = 0;
    std::int64_t best_b = 0;
    std::int64_t best_point = 0;
    for_each_subset_sum(sc.num, [&](std::uint64_t mask, std::int64_t sum_in) {
        // Points of Crit for this subset: s + 2b (scaled by den), b >= 0.
        const std::int64_t s = 2 * sum_in - sc.total;
        std::int64_t b = 0;
        if (target > s) {
            b = (target - s) / (2 * sc.den);
            const std::int64_t lo = s + 2 * b * sc.den;
            const std::int64_t hi = lo + 2 * sc.den;
            if (hi - target < target - lo) {
                ++b;
            }
        }
        const std::int64_t point = s + 2 * b * sc.den;
        const std::int64_t dist = point > target ? point - target : target - point;
        if (dist < best) {
            best = dist;
            best_mask = mask;
            best_b = b;
            best_point = point;
        }
    });
    return {Rational(best, sc.den), mask_to_subset(best_mask, a.size()), best_b, Rational(best_point, sc.den)};
}

ChenLinCondition chen_lin_con(const AngleVector &a)
{
    require_enumerable(a.size());
    const Scaled sc = scale(a.angles());
    const auto n = static_cast<std::int64_t>(a.size());
    const std::int64_t offset = checked_mul(n + 2 * a.genus() - 2, sc.den);

    ChenLinCondition r{Verdict::holds, std::nullopt, std::nullopt, true};
    for_each_subset_sum(sc.num, [&](std::uint64_t mask, std::int64_t sum_in) {
        // sum_I - sum_{I^c} - (n + 2g - 2) = 2k
        const std::int64_t lhs = 2 * sum_in - sc.total - offset;
        if (lhs % (2 * sc.den) != 0) {
            return;
        }
        r.holds_for_all_integer_k = false;
        const std::int64_t k = lhs / (2 * sc.den);
        if (k >= 0 && (!r.k || k < *r.k)) {
            r.verdict = Verdict::fails;
            r.subset = mask_to_subset(mask, a.size());
            r.k = k;
        }
    });
    return r;
}

ConditionReport check_conditions(const AngleVector &a)
{
    ConditionReport rep;
    const auto gb = gauss_bonnet(a);
    rep.gauss_bonnet_value = gb.value;
    rep.verdicts["gauss_bonnet"] = {gb.verdict, "chi + sum(alpha - 1) = " + gb.value.str()};

    auto not_applicable = [&](const std::string &name, const std::string &why) {
        rep.verdicts[name] = {std::nullopt, why};
    };

    if (a.genus() == 0) {
        const Rational d1 = closure_distance(a);
        rep.closure_distance = d1;
        rep.verdicts["closure"] = {threshold_verdict(d1, Rational(1)), "d1 = " + d1.str()};
        const auto cls = mondello_panov_classify(a);
        rep.sphere_class = cls;
        const Verdict v = cls == SphereClass::exists_nondegenerate
            ? Verdict::holds
            : (cls == SphereClass::boundary_coaxial_only ? Verdict::boundary : Verdict::fails);
        rep.verdicts["sphere_existence"] = {v, std::string(to_string(cls))};
        try {
            auto co = coaxial_admissible(a);
            rep.verdicts["coaxial"] = {co.verdict, co.witness ? "witness found" : "no sign choice passes"};
            rep.coaxial_witness = std::move(co.witness);
        } catch (const DomainError &e) {
            not_applicable("coaxial", e.what());
        }
    } else {
        not_applicable("closure", "sphere only");
        not_applicable("sphere_existence", "sphere only");
        not_applicable("coaxial", "sphere only");
    }

    try {
        rep.luo_tian = luo_tian(a);
        rep.verdicts["luo_tian"] = {rep.luo_tian->verdict,
                                    rep.luo_tian->value.str() + " <= " + rep.luo_tian->bound.str()
                                        + (rep.luo_tian->unique ? "; metric unique" : "")};
    } catch (const DomainError &e) {
        not_applicable("luo_tian", e.what());
    }

    try {
        rep.three_nonint = three_nonint(a);
        rep.verdicts["three_nonint"] = {rep.three_nonint->verdict,
                                        "value " + std::to_string(rep.three_nonint->value) + ", at most "
                                            + std::to_string(rep.three_nonint->class_bound) + " classes"};
    } catch (const DomainError &e) {
        not_applicable("three_nonint", e.what());
    }

    try {
        rep.nonbubbling = nonbubbling(a);
        rep.verdicts["nonbubbling"] = {rep.nonbubbling->value > Rational(0) ? Verdict::holds : Verdict::fails,
                                       "NB = " + rep.nonbubbling->value.str()};
        rep.chen_lin = chen_lin_con(a);
        rep.verdicts["chen_lin_con"] = {rep.chen_lin->verdict,
                                        rep.chen_lin->k ? "violated with k = " + std::to_string(*rep.chen_lin->k)
                                                        : "no critical subset"};
    } catch (const DomainError &e) {
        not_applicable("nonbubbling", e.what());
        not_applicable("chen_lin_con", e.what());
    }
    return rep;
}

}

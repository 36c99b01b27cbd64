#ifndef CONIC_CONDITIONS_HPP
#define CONIC_CONDITIONS_HPP

#include "conic/angles.hpp"
#include "conic/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace conic
{

/// Outcome of one admissibility test. `boundary` means the defining quantity
/// sits exactly on its threshold and the (strict) condition does not hold.
enum class Verdict { holds, fails, boundary };

std::string_view to_string(Verdict v);

/// Subset enumeration is refused above this many angles.
inline constexpr std::size_t max_enumerated_angles = 24;

struct GaussBonnet
{
    /// chi(S) + sum(alpha_j - 1).
    Rational value;
    Verdict verdict;
};

GaussBonnet gauss_bonnet(const AngleVector &a);

/// Exact l1 distance from (alpha_1 - 1, ..., alpha_n - 1) to the integer
/// vectors with odd coordinate sum. Sphere only.
Rational closure_distance(const AngleVector &a);

enum class SphereClass { impossible, exists_nondegenerate, boundary_coaxial_only };

std::string_view to_string(SphereClass c);

/// Existence classification on the sphere from Gauss-Bonnet and the closure
/// condition. Equality in the closure condition is only possible for
/// co-axial monodromy, in which case `coaxial_admissible` decides.
SphereClass mondello_panov_classify(const AngleVector &a);

struct CoaxialWitness
{
    /// Sign for each non-integer angle, in the order of non_integer_indices().
    std::vector<int> signs;
    std::int64_t k_prime = 0;
    std::int64_t k_double_prime = 0;
    /// Non-integer angles followed by k' + k'' ones.
    std::vector<Rational> c;
    /// Primitive integer vector with c = eta * b.
    std::vector<std::int64_t> b;
    std::int64_t b_l1 = 0;
    /// Largest integer angle (0 if none).
    std::int64_t max_integer_angle = 0;
};

struct CoaxialResult
{
    Verdict verdict;
    std::optional<CoaxialWitness> witness;
};

/// Necessary and sufficient conditions for a co-axial metric on the sphere.
/// Searches every sign vector on the non-integer angles; the first one that
/// passes all conditions is returned as the witness.
CoaxialResult coaxial_admissible(const AngleVector &a);

struct LuoTian
{
    Verdict verdict;
    /// 2 + sum(alpha_j - 1).
    Rational value;
    /// 2 * min alpha_j.
    Rational bound;
    bool on_boundary = false;
    /// When the condition holds the metric is unique.
    bool unique = false;
};

/// Sphere with all angles < 1: exists iff 0 < 2 + sum(alpha_j - 1) <= 2 min alpha_j.
LuoTian luo_tian(const AngleVector &a);

struct ThreeNonInteger
{
    Verdict verdict;
    double value;
    /// sigma = sum over the integer angles of (alpha_j - 1).
    std::int64_t sigma;
    /// Upper bound on the number of classes: product of the integer angles.
    std::int64_t class_bound;
    /// Indices of the three non-integer angles.
    std::vector<std::size_t> non_integer;
};

/// Sphere with exactly three non-integer angles.
ThreeNonInteger three_nonint(const AngleVector &a);

struct NonBubbling
{
    /// Distance from chi(S \ A) to Crit_alpha.
    Rational value;
    /// Subset I and b >= 0 realizing the nearest point of Crit_alpha.
    std::vector<std::size_t> subset;
    std::int64_t b = 0;
    Rational nearest;
};

NonBubbling nonbubbling(const AngleVector &a);

struct ChenLinCondition
{
    Verdict verdict;
    /// Violating subset I and k >= 0 when the verdict is `fails`.
    std::optional<std::vector<std::size_t>> subset;
    std::optional<std::int64_t> k;
    /// Same test with k ranging over all integers.
    bool holds_for_all_integer_k = true;
};

/// Non-criticality condition sum_I alpha - sum_{I^c} alpha != 2k - 2 + n + 2g,
/// with k >= 0. Agrees with nonbubbling(a).value > 0.
ChenLinCondition chen_lin_con(const AngleVector &a);

/// One entry of a ConditionReport.
struct ConditionEntry
{
    /// Empty when the condition does not apply to this angle vector.
    std::optional<Verdict> verdict;
    std::string detail;
};

/// Every applicable condition evaluated on one angle vector.
struct ConditionReport
{
    Rational gauss_bonnet_value;
    std::optional<Rational> closure_distance;
    std::optional<SphereClass> sphere_class;
    std::map<std::string, ConditionEntry> verdicts;
    std::optional<CoaxialWitness> coaxial_witness;
    std::optional<NonBubbling> nonbubbling;
    std::optional<LuoTian> luo_tian;
    std::optional<ThreeNonInteger> three_nonint;
    std::optional<ChenLinCondition> chen_lin;
};

ConditionReport check_conditions(const AngleVector &a);

}

#endif

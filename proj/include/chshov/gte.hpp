#pragma once

// Genuine tripartite entanglement through per-bipartition CHSH overlap
// maxima X, Y, Z: the pure-state if-and-only-if test, the biseparable
// bound X+Y+Z <= 8, the GTE concurrence for pure states and its
// overlap-based lower bound for arbitrary states.

#include <algorithm>
#include <cmath>
#include <optional>

#include "chshov/concurrence.hpp"
#include "chshov/pair_overlaps.hpp"
#include "chshov/state.hpp"

namespace chshov {

// strict-positivity tolerance: overlaps below this are numerical noise
inline constexpr double gte_tol = 1e-9;

namespace detail {

inline void require_three_parties(const QState& s, const char* who) {
    if (s.parties() != 3)
        throw std::invalid_argument(std::string(who) + ": exactly three parties required");
}

}  // namespace detail

struct GteXYZ {
    double x, y, z;  // max Q over 1|23, 2|13, 3|12 respectively
    double sum() const { return x + y + z; }
    double min() const { return std::min({x, y, z}); }
};

inline GteXYZ gte_xyz(const QState& s) {
    detail::require_three_parties(s, "gte_xyz");
    const auto& dims = s.dims();
    return {max_pair_overlap(s, Bipartition::of(dims, {0})),
            max_pair_overlap(s, Bipartition::of(dims, {1})),
            max_pair_overlap(s, Bipartition::of(dims, {2}))};
}

/// Pure tripartite states are genuinely entangled iff every bipartition
/// holds a CHSH-violating qubit pair.
inline bool pure_gte_test(const QState& s) {
    detail::require_three_parties(s, "pure_gte_test");
    detail::require_pure(s, "pure_gte_test");
    return gte_xyz(s).min() > gte_tol;
}

struct GteSumTest {
    double sum;
    bool detected;  // sum > 8 certifies genuine tripartite entanglement
};

inline GteSumTest mixed_gte_test(const QState& s) {
    detail::require_three_parties(s, "mixed_gte_test");
    const double sum = gte_xyz(s).sum();
    return {sum, sum > 8.0 + gte_tol};
}

/// sqrt(min_i (1 - Tr rho_i^2)) for pure tripartite states.
inline double pure_gte_concurrence(const QState& s) {
    detail::require_three_parties(s, "pure_gte_concurrence");
    detail::require_pure(s, "pure_gte_concurrence");
    double least = std::numeric_limits<double>::infinity();
    for (std::size_t party = 0; party < 3; ++party) {
        const CMatrix rho = partial_trace(s, {party});
        least = std::min(least, 1.0 - detail::purity(rho));
    }
    return std::sqrt(std::max(0.0, least));
}

/// Lower bound on the GTE concurrence:
/// (1/(6 sqrt 2)) sum_p sqrt(sum y^2 Q) - (2/3) sqrt((d-1)/d).
/// Raw value; callers clamp at zero for display. Requires equal local
/// dimensions because the subtracted constant assumes a single d.
inline double gte_bound(const QState& s) {
    detail::require_three_parties(s, "gte_bound");
    const auto& dims = s.dims();
    if (dims[0] != dims[1] || dims[1] != dims[2])
        throw std::invalid_argument("gte_bound: equal local dimensions required");
    const double d = static_cast<double>(dims[0]);

    double acc = 0.0;
    for (std::size_t party = 0; party < 3; ++party)
        acc += std::sqrt(pair_overlap_sum(s, Bipartition::of(dims, {party})));
    return acc / (6.0 * std::sqrt(2.0)) - (2.0 / 3.0) * std::sqrt((d - 1.0) / d);
}

enum class TriState { yes, no, not_applicable };

struct GteReport {
    double x = 0.0, y = 0.0, z = 0.0, sum = 0.0;
    TriState pure_gte = TriState::not_applicable;
    bool mixed_gte_detected = false;
    std::optional<double> bound;                 // absent for unequal local dims
    std::optional<double> pure_concurrence_gte;  // pure input only
};

inline GteReport gte_report(const QState& s) {
    detail::require_three_parties(s, "gte_report");
    GteReport rep;
    const GteXYZ xyz = gte_xyz(s);
    rep.x = xyz.x;
    rep.y = xyz.y;
    rep.z = xyz.z;
    rep.sum = xyz.sum();
    rep.mixed_gte_detected = rep.sum > 8.0 + gte_tol;
    if (s.is_pure()) {
        rep.pure_gte = xyz.min() > gte_tol ? TriState::yes : TriState::no;
        rep.pure_concurrence_gte = pure_gte_concurrence(s);
    }
    const auto& dims = s.dims();
    if (dims[0] == dims[1] && dims[1] == dims[2]) rep.bound = gte_bound(s);
    return rep;
}

}  // namespace chshov

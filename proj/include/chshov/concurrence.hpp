#pragma once

// Concurrence layer. For pure states the squared bipartite concurrence can
// be computed three ways that must agree: from marginal purity, from the
// 2x2 minors of the amplitude matrix, and from the weighted CHSH overlap
// sum. Mixed states get the overlap-based lower bound, which is tight on
// pure input. The multipartite versions sum over all unordered
// bipartitions.

#include <cmath>
#include <optional>
#include <vector>

#include "chshov/pair_overlaps.hpp"
#include "chshov/state.hpp"

namespace chshov {

namespace detail {

inline void require_pure(const QState& s, const char* who) {
    if (!s.is_pure()) throw std::invalid_argument(std::string(who) + ": pure state required");
}

inline double purity(const CMatrix& rho) {
    double acc = 0.0;
    for (std::size_t r = 0; r < rho.rows(); ++r)
        for (std::size_t c = 0; c < rho.cols(); ++c) acc += std::norm(rho(r, c));
    return acc;
}

}  // namespace detail

/// sqrt(2 (1 - Tr rho_L^2)) across the given bipartition.
inline double pure_concurrence(const QState& s, const Bipartition& p) {
    detail::require_pure(s, "pure_concurrence");
    const CMatrix rho_left = partial_trace(s, p.left);
    const double val = 2.0 * (1.0 - detail::purity(rho_left));
    return std::sqrt(std::max(0.0, val));
}

/// Squared concurrence as 4 sum_{i<j} sum_{k<l} |a_ik a_jl - a_il a_jk|^2
/// over the flattened amplitude matrix.
inline double concurrence_sq_minors(const QState& s, const Bipartition& p) {
    detail::require_pure(s, "concurrence_sq_minors");
    const QState flat = flatten(s, p);
    const auto& a = flat.amplitudes();
    const std::size_t dl = flat.dims()[0], dr = flat.dims()[1];
    double acc = 0.0;
    for (std::size_t i = 0; i < dl; ++i)
        for (std::size_t j = i + 1; j < dl; ++j)
            for (std::size_t k = 0; k < dr; ++k)
                for (std::size_t l = k + 1; l < dr; ++l)
                    acc += std::norm(a[i * dr + k] * a[j * dr + l] - a[i * dr + l] * a[j * dr + k]);
    return 4.0 * acc;
}

/// Squared concurrence as (1/4) sum_{alpha beta} y^2 Q; identical to the
/// minor expansion for pure states.
inline double concurrence_sq_from_overlaps(const QState& s, const Bipartition& p) {
    detail::require_pure(s, "concurrence_sq_from_overlaps");
    return 0.25 * pair_overlap_sum(s, p);
}

/// (1/2) sqrt(sum y^2 Q): a concurrence lower bound valid for any state,
/// tight on pure states.
inline double concurrence_lower_bound(const QState& s, const Bipartition& p) {
    return 0.5 * std::sqrt(pair_overlap_sum(s, p));
}

/// sqrt(sum over all bipartitions of 2 (1 - Tr rho_p^2)) for pure states.
inline double multipartite_concurrence(const QState& s) {
    detail::require_pure(s, "multipartite_concurrence");
    if (s.parties() < 2) throw std::invalid_argument("multipartite_concurrence: need >= 2 parties");
    double acc = 0.0;
    for (const auto& p : Bipartition::all(s.dims())) {
        const CMatrix rho_left = partial_trace(s, p.left);
        acc += 2.0 * (1.0 - detail::purity(rho_left));
    }
    return std::sqrt(std::max(0.0, acc));
}

/// (1/2) sqrt(sum_p sum_{alpha beta} y^2 Q): multipartite lower bound,
/// equal to multipartite_concurrence on pure input.
inline double multipartite_concurrence_bound(const QState& s) {
    if (s.parties() < 2)
        throw std::invalid_argument("multipartite_concurrence_bound: need >= 2 parties");
    double acc = 0.0;
    for (const auto& p : Bipartition::all(s.dims())) acc += pair_overlap_sum(s, p);
    return 0.5 * std::sqrt(acc);
}

struct ConcurrenceReport {
    std::optional<double> value;  // exact concurrence, pure input only
    double lower_bound = 0.0;
    std::vector<std::pair<Bipartition, double>> per_partition;  // sum y^2 Q per split
};

inline ConcurrenceReport concurrence_report(const QState& s) {
    ConcurrenceReport rep;
    double acc = 0.0;
    for (const auto& p : Bipartition::all(s.dims())) {
        const double sum = pair_overlap_sum(s, p);
        rep.per_partition.emplace_back(p, sum);
        acc += sum;
    }
    rep.lower_bound = 0.5 * std::sqrt(acc);
    if (s.is_pure()) rep.value = multipartite_concurrence(s);
    return rep;
}

}  // namespace chshov

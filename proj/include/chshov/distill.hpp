#pragma once

// Bipartite distillability tests. A positive CHSH overlap on any qubit
// pair of rho^(x)n certifies an entangled 2x2 submatrix and hence
// distillability across the partition. The reduction criterion
// rho_L x I - rho >= 0 gives an independent sufficient test, and a seeded
// local-unitary search can raise the best overlap for states whose
// canonical subspaces miss the entanglement.

#include <cstdint>
#include <optional>
#include <vector>

#include "chshov/pair_overlaps.hpp"
#include "chshov/random_unitary.hpp"
#include "chshov/state.hpp"

namespace chshov {

inline constexpr double q_tol = 1e-9;
inline constexpr double rc_tol = 1e-10;
inline constexpr std::size_t default_dim_cap = 4096;

struct DimensionCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LuTrace {
    std::uint64_t seed = 0;
    std::vector<double> best_q;  // best-so-far after each iteration
};

struct DistillReport {
    Bipartition partition;
    std::size_t copies = 1;
    double max_q = 0.0;
    bool distillable_chsh = false;
    double rc_min_eig = 0.0;
    bool distillable_rc = false;
    std::optional<LuTrace> lu;
};

namespace detail {

// rho^(x)n regrouped so all left factors precede all right factors:
// the n-copy state of the flattened bipartite input, copy-major per side.
inline QState n_copy_bipartite(const QState& s, const Bipartition& p, std::size_t copies,
                               std::size_t dim_cap) {
    if (copies < 1) throw std::invalid_argument("n_copy_bipartite: copies must be >= 1");
    std::size_t total = 1;
    for (std::size_t k = 0; k < copies; ++k) {
        total *= s.total_dim();
        if (total > dim_cap)
            throw DimensionCapError("n-copy state dimension " + std::to_string(total) +
                                    " exceeds cap " + std::to_string(dim_cap));
    }

    const QState flat = flatten(s, p);
    if (copies == 1) return flat;

    const std::size_t dl = flat.dims()[0], dr = flat.dims()[1];
    QState accum = flat;
    std::vector<std::size_t> copy_dims{dl, dr};
    if (flat.is_pure()) {
        std::vector<cplx> amps = flat.amplitudes();
        for (std::size_t k = 1; k < copies; ++k) {
            const auto& a = flat.amplitudes();
            std::vector<cplx> next(amps.size() * a.size());
            for (std::size_t i = 0; i < amps.size(); ++i)
                for (std::size_t j = 0; j < a.size(); ++j) next[i * a.size() + j] = amps[i] * a[j];
            amps = std::move(next);
            copy_dims.push_back(dl);
            copy_dims.push_back(dr);
        }
        accum = QState::pure(copy_dims, std::move(amps));
    } else {
        CMatrix rho = flat.density_matrix();
        for (std::size_t k = 1; k < copies; ++k) {
            rho = kron(rho, flat.density_matrix());
            copy_dims.push_back(dl);
            copy_dims.push_back(dr);
        }
        accum = QState::mixed(copy_dims, std::move(rho));
    }

    // group left factors (even positions) against right factors
    std::vector<std::size_t> lefts;
    for (std::size_t k = 0; k < copies; ++k) lefts.push_back(2 * k);
    return flatten(accum, Bipartition::of(accum.dims(), lefts));
}

}  // namespace detail

/// Max CHSH overlap over every qubit pair of rho^(x)n across partition p.
inline DistillReport distillable_chsh(const QState& s, const Bipartition& p, std::size_t copies = 1,
                                      std::size_t dim_cap = default_dim_cap) {
    const QState ncopy = detail::n_copy_bipartite(s, p, copies, dim_cap);
    DistillReport rep;
    rep.partition = p;
    rep.copies = copies;
    rep.max_q = max_pair_overlap(ncopy, Bipartition::of(ncopy.dims(), {0}));
    rep.distillable_chsh = rep.max_q > q_tol;
    return rep;
}

/// Minimum eigenvalue of rho_L x I - rho across partition p; a negative
/// value (beyond tolerance) certifies distillability.
inline std::pair<double, bool> reduction_criterion(const QState& s, const Bipartition& p) {
    const QState flat = flatten(s, p);
    const CMatrix rho = flat.density();
    const CMatrix rho_left = partial_trace(flat, {0});
    CMatrix m = kron(rho_left, CMatrix::identity(flat.dims()[1]));
    m -= rho;
    const auto eigs = hermitian_eigenvalues(m);
    const double min_eig = eigs.front();
    return {min_eig, min_eig < -rc_tol};
}

/// Random-restart hill climb over per-party unitaries, maximizing the best
/// pair overlap. Every fifth proposal is a fresh Haar product; the rest
/// perturb the incumbent with a shrinking step. Deterministic for a fixed
/// seed: proposal k draws from a sub-stream derived by counter.
inline DistillReport lu_enhanced_overlap(const QState& s, const Bipartition& p,
                                         std::size_t iterations, std::uint64_t seed) {
    if (iterations < 1) throw std::invalid_argument("lu_enhanced_overlap: iterations must be >= 1");
    const auto& dims = s.dims();
    const std::size_t parties = dims.size();

    auto evaluate = [&](const std::vector<CMatrix>& us) {
        return max_pair_overlap(apply_local_unitaries(s, us), p);
    };

    std::vector<CMatrix> best_us;
    best_us.reserve(parties);
    for (auto d : dims) best_us.push_back(CMatrix::identity(d));
    double best = evaluate(best_us);  // identity first: never worse than the plain scan

    LuTrace trace;
    trace.seed = seed;
    trace.best_q.reserve(iterations);

    for (std::size_t it = 0; it < iterations; ++it) {
        auto rng = seeded_rng(seed, it);
        std::vector<CMatrix> cand;
        cand.reserve(parties);
        if (it % 5 == 0) {
            for (auto d : dims) cand.push_back(haar_unitary(d, rng));
        } else {
            const double frac = static_cast<double>(it) / static_cast<double>(iterations);
            const double eps = std::max(0.01, 0.4 * std::exp(-3.0 * frac));
            for (std::size_t k = 0; k < parties; ++k)
                cand.push_back(perturbation_unitary(dims[k], eps, rng) * best_us[k]);
        }
        const double v = evaluate(cand);
        if (v > best) {
            best = v;
            best_us = std::move(cand);
        }
        trace.best_q.push_back(best);
    }

    DistillReport rep;
    rep.partition = p;
    rep.copies = 1;
    rep.max_q = best;
    rep.distillable_chsh = best > q_tol;
    rep.lu = std::move(trace);
    return rep;
}

}  // namespace chshov

#pragma once

// Two-qubit CHSH machinery: the Pauli correlation matrix, the closed-form
// maximal quantum mean value gamma = 2 sqrt(tau1 + tau2), the overlap
// Q = max(gamma^2 - 4, 0), and a grid-plus-refinement oracle that
// maximizes the Bell mean value numerically. Production code uses the
// closed form; the oracle exists to cross-check it.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "chshov/matrix.hpp"

namespace chshov {

inline const std::array<CMatrix, 3>& pauli_matrices() {
    static const std::array<CMatrix, 3> paulis = [] {
        std::array<CMatrix, 3> p{CMatrix(2, 2), CMatrix(2, 2), CMatrix(2, 2)};
        p[0](0, 1) = 1.0;
        p[0](1, 0) = 1.0;
        p[1](0, 1) = cplx{0.0, -1.0};
        p[1](1, 0) = cplx{0.0, 1.0};
        p[2](0, 0) = 1.0;
        p[2](1, 1) = -1.0;
        return p;
    }();
    return paulis;
}

struct CorrelationMatrix {
    std::array<std::array<double, 3>, 3> x{};  // x[k][l] = Tr(rho sigma_k x sigma_l)
};

namespace detail {

inline const std::array<std::array<CMatrix, 3>, 3>& pauli_pair_operators() {
    static const auto ops = [] {
        std::array<std::array<CMatrix, 3>, 3> out;
        const auto& p = pauli_matrices();
        for (std::size_t k = 0; k < 3; ++k)
            for (std::size_t l = 0; l < 3; ++l) out[k][l] = kron(p[k], p[l]);
        return out;
    }();
    return ops;
}

inline void require_two_qubit(const CMatrix& rho, const char* who) {
    if (rho.rows() != 4 || rho.cols() != 4)
        throw std::invalid_argument(std::string(who) + ": expected a 4x4 two-qubit density matrix");
}

}  // namespace detail

inline CorrelationMatrix correlation_matrix(const CMatrix& rho) {
    detail::require_two_qubit(rho, "correlation_matrix");
    const auto& ops = detail::pauli_pair_operators();
    CorrelationMatrix out;
    for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t l = 0; l < 3; ++l) {
            cplx t = 0.0;
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = 0; j < 4; ++j) t += rho(i, j) * ops[k][l](j, i);
            if (std::abs(t.imag()) > 1e-10)
                throw std::invalid_argument("correlation_matrix: correlator has imaginary residue");
            out.x[k][l] = t.real();
        }
    return out;
}

struct ChshResult {
    double gamma;  // maximal quantum mean value, in [0, 2*sqrt(2)]
    double q;      // overlap max(gamma^2 - 4, 0)
};

/// Closed-form maximal CHSH value from the two largest eigenvalues of X^t X.
inline ChshResult horodecki_gamma(const CMatrix& rho) {
    detail::require_two_qubit(rho, "horodecki_gamma");
    const CorrelationMatrix cm = correlation_matrix(rho);
    CMatrix xtx(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < 3; ++k) acc += cm.x[k][i] * cm.x[k][j];
            xtx(i, j) = acc;
        }
    const auto eigs = hermitian_eigenvalues(xtx);  // ascending, size 3
    const double tau_sum = std::max(0.0, eigs[1]) + std::max(0.0, eigs[2]);
    const double gamma = 2.0 * std::sqrt(tau_sum);
    return {gamma, std::max(gamma * gamma - 4.0, 0.0)};
}

namespace detail {

struct Vec3 {
    double v[3];
};

inline Vec3 mat_apply(const CorrelationMatrix& x, const Vec3& b) {
    Vec3 out{};
    for (std::size_t k = 0; k < 3; ++k)
        out.v[k] = x.x[k][0] * b.v[0] + x.x[k][1] * b.v[1] + x.x[k][2] * b.v[2];
    return out;
}

inline double vec_norm(const Vec3& v) {
    return std::sqrt(v.v[0] * v.v[0] + v.v[1] * v.v[1] + v.v[2] * v.v[2]);
}

// |X(b1+b2)| + |X(b1-b2)|: the Bell mean value after the analytic
// maximization over the first party's two measurement directions.
inline double bell_value(const CorrelationMatrix& x, const Vec3& b1, const Vec3& b2) {
    const Vec3 plus{{b1.v[0] + b2.v[0], b1.v[1] + b2.v[1], b1.v[2] + b2.v[2]}};
    const Vec3 minus{{b1.v[0] - b2.v[0], b1.v[1] - b2.v[1], b1.v[2] - b2.v[2]}};
    return vec_norm(mat_apply(x, plus)) + vec_norm(mat_apply(x, minus));
}

inline Vec3 fibonacci_point(std::size_t i, std::size_t n) {
    const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double golden = 2.39996322972865332;  // 2*pi*(1 - 1/phi)
    const double phi = golden * static_cast<double>(i);
    return {{r * std::cos(phi), r * std::sin(phi), z}};
}

inline Vec3 normalized(const Vec3& v) {
    const double n = vec_norm(v);
    if (n < 1e-30) return {{0.0, 0.0, 1.0}};
    return {{v.v[0] / n, v.v[1] / n, v.v[2] / n}};
}

}  // namespace detail

/// Numeric Bell-maximization oracle. Samples `resolution` directions per
/// measurement sphere, keeps the best grid pairs and refines them with a
/// shrinking random perturbation search. Always a lower bound on the true
/// maximum (every evaluation is a feasible measurement choice).
inline double bell_oracle_gamma(const CMatrix& rho, std::size_t resolution) {
    detail::require_two_qubit(rho, "bell_oracle_gamma");
    if (resolution < 24) throw std::invalid_argument("bell_oracle_gamma: resolution must be >= 24");
    using detail::Vec3;

    const CorrelationMatrix x = correlation_matrix(rho);

    std::vector<Vec3> grid(resolution);
    for (std::size_t i = 0; i < resolution; ++i) grid[i] = detail::fibonacci_point(i, resolution);

    struct Candidate {
        double value;
        Vec3 b1, b2;
    };
    constexpr std::size_t keep = 8;
    std::vector<Candidate> best;
    for (std::size_t i = 0; i < resolution; ++i)
        for (std::size_t j = 0; j < resolution; ++j) {
            const double v = detail::bell_value(x, grid[i], grid[j]);
            if (best.size() < keep) {
                best.push_back({v, grid[i], grid[j]});
                std::sort(best.begin(), best.end(),
                          [](const Candidate& a, const Candidate& b) { return a.value > b.value; });
            } else if (v > best.back().value) {
                best.back() = {v, grid[i], grid[j]};
                std::sort(best.begin(), best.end(),
                          [](const Candidate& a, const Candidate& b) { return a.value > b.value; });
            }
        }

    std::mt19937_64 rng(0x9d2c5680cafe1234ull ^ resolution);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double overall = 0.0;
    for (auto& cand : best) {
        Vec3 b1 = cand.b1, b2 = cand.b2;
        double incumbent = cand.value;
        double step = 0.25;
        while (step > 1e-8) {
            bool improved = false;
            for (int trial = 0; trial < 24; ++trial) {
                Vec3 c1{{b1.v[0] + step * gauss(rng), b1.v[1] + step * gauss(rng),
                         b1.v[2] + step * gauss(rng)}};
                Vec3 c2{{b2.v[0] + step * gauss(rng), b2.v[1] + step * gauss(rng),
                         b2.v[2] + step * gauss(rng)}};
                c1 = detail::normalized(c1);
                c2 = detail::normalized(c2);
                const double v = detail::bell_value(x, c1, c2);
                if (v > incumbent) {
                    incumbent = v;
                    b1 = c1;
                    b2 = c2;
                    improved = true;
                }
            }
            if (!improved) step *= 0.5;
        }
        overall = std::max(overall, incumbent);
    }
    return overall;
}

}  // namespace chshov

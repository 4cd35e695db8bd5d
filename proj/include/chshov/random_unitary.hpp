#pragma once

// Haar-distributed unitaries: QR of a complex Gaussian matrix via modified
// Gram-Schmidt, with the R diagonal phases folded away so the distribution
// is exactly Haar. Gaussians come from Box-Muller on the raw engine so
// streams are reproducible independent of the standard library.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "chshov/matrix.hpp"

namespace chshov {

namespace detail {

inline double uniform01(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53;
}

inline double gaussian(std::mt19937_64& rng) {
    const double u = uniform01(rng);
    const double v = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

}  // namespace detail

/// Deterministic sub-stream derivation (seed, stream) -> engine.
inline std::mt19937_64 seeded_rng(std::uint64_t seed, std::uint64_t stream = 0) {
    // splitmix64 scramble so nearby (seed, stream) pairs decorrelate
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    z ^= z >> 31;
    return std::mt19937_64(z);
}

inline CMatrix gaussian_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    CMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = cplx{detail::gaussian(rng), detail::gaussian(rng)};
    return m;
}

inline CMatrix haar_unitary(std::size_t dim, std::mt19937_64& rng) {
    CMatrix a = gaussian_matrix(dim, dim, rng);
    // modified Gram-Schmidt; columns of a become the unitary's columns
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            cplx proj = 0.0;
            for (std::size_t r = 0; r < dim; ++r) proj += std::conj(a(r, k)) * a(r, j);
            for (std::size_t r = 0; r < dim; ++r) a(r, j) -= proj * a(r, k);
        }
        double nrm = 0.0;
        for (std::size_t r = 0; r < dim; ++r) nrm += std::norm(a(r, j));
        nrm = std::sqrt(nrm);
        if (nrm < 1e-12) {  // essentially impossible; restart the column
            for (std::size_t r = 0; r < dim; ++r)
                a(r, j) = cplx{detail::gaussian(rng), detail::gaussian(rng)};
            --j;
            continue;
        }
        // fold away the R diagonal phase for exact Haar measure
        const cplx lead = a(j, j);
        const double la = std::abs(lead);
        const cplx phase = la > 1e-300 ? lead / la : cplx{1.0, 0.0};
        for (std::size_t r = 0; r < dim; ++r) a(r, j) = a(r, j) / (nrm * phase);
    }
    return a;
}

/// Unitary close to the identity: QR of I + eps * Gaussian.
inline CMatrix perturbation_unitary(std::size_t dim, double eps, std::mt19937_64& rng) {
    CMatrix g = gaussian_matrix(dim, dim, rng);
    CMatrix a = CMatrix::identity(dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) a(r, c) += eps * g(r, c);
    // orthonormalize in place (same scheme as haar_unitary, phases kept
    // so the result stays near the identity)
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            cplx proj = 0.0;
            for (std::size_t r = 0; r < dim; ++r) proj += std::conj(a(r, k)) * a(r, j);
            for (std::size_t r = 0; r < dim; ++r) a(r, j) -= proj * a(r, k);
        }
        double nrm = 0.0;
        for (std::size_t r = 0; r < dim; ++r) nrm += std::norm(a(r, j));
        nrm = std::sqrt(nrm);
        for (std::size_t r = 0; r < dim; ++r) a(r, j) = a(r, j) / nrm;
    }
    return a;
}

}  // namespace chshov

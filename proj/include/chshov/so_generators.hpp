#pragma once

// Antisymmetric generators of SO(d) and the embedding of two-qubit
// measurement operators into the 2x2 subspace a generator selects.
// A generator is identified by its ordered basis pair (s,t), s < t,
// stored 0-based; reports print them 1-based.

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "chshov/matrix.hpp"

namespace chshov {

struct GeneratorIndex {
    std::size_t s, t;  // 0-based, s < t
    std::size_t dim;

    bool operator==(const GeneratorIndex&) const = default;
};

inline std::size_t generator_count(std::size_t d) { return d * (d - 1) / 2; }

/// Ordinal -> (s,t) in lexicographic order: (0,1),(0,2),...,(1,2),...
inline GeneratorIndex generator_at(std::size_t d, std::size_t ordinal) {
    if (d < 2) throw std::invalid_argument("generator_at: dimension must be >= 2");
    if (ordinal >= generator_count(d)) throw std::invalid_argument("generator_at: ordinal out of range");
    std::size_t s = 0, row = d - 1;
    while (ordinal >= row) {
        ordinal -= row;
        ++s;
        --row;
    }
    return {s, s + 1 + ordinal, d};
}

inline std::size_t generator_ordinal(const GeneratorIndex& g) {
    std::size_t o = 0;
    for (std::size_t r = 0; r < g.s; ++r) o += g.dim - 1 - r;
    return o + (g.t - g.s - 1);
}

inline void check_generator(const GeneratorIndex& g) {
    if (g.dim < 2 || g.s >= g.t || g.t >= g.dim)
        throw std::invalid_argument("GeneratorIndex: require 0 <= s < t < dim");
}

/// |s><t| - |t><s|
inline CMatrix so_generator(const GeneratorIndex& g) {
    check_generator(g);
    CMatrix m(g.dim, g.dim);
    m(g.s, g.t) = 1.0;
    m(g.t, g.s) = -1.0;
    return m;
}

/// All d(d-1)/2 generators in lexicographic (s,t) order.
inline std::vector<CMatrix> so_generators(std::size_t d) {
    if (d < 2) throw std::invalid_argument("so_generators: dimension must be >= 2");
    std::vector<CMatrix> out;
    out.reserve(generator_count(d));
    for (std::size_t o = 0; o < generator_count(d); ++o) out.push_back(so_generator(generator_at(d, o)));
    return out;
}

/// L^dag L = |s><s| + |t><t|, the rank-2 projector onto the generator's subspace.
inline CMatrix subspace_projector(const GeneratorIndex& g) {
    check_generator(g);
    CMatrix m(g.dim, g.dim);
    m(g.s, g.s) = 1.0;
    m(g.t, g.t) = 1.0;
    return m;
}

struct EmbeddedObservable {
    GeneratorIndex base;
    std::array<double, 3> bloch;
    CMatrix matrix;  // dim x dim, zero outside rows/cols {s,t}
};

/// Places bloch . (sigma_x, sigma_y, sigma_z) on the four (s,t) positions.
inline EmbeddedObservable embed_observable(const GeneratorIndex& g, std::array<double, 3> bloch) {
    check_generator(g);
    const double len = std::sqrt(bloch[0] * bloch[0] + bloch[1] * bloch[1] + bloch[2] * bloch[2]);
    if (std::abs(len - 1.0) > 1e-10)
        throw std::invalid_argument("embed_observable: bloch vector must have unit length");
    CMatrix m(g.dim, g.dim);
    m(g.s, g.s) = bloch[2];
    m(g.t, g.t) = -bloch[2];
    m(g.s, g.t) = cplx{bloch[0], -bloch[1]};
    m(g.t, g.s) = cplx{bloch[0], bloch[1]};
    return {g, bloch, std::move(m)};
}

}  // namespace chshov

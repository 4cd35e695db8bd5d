#pragma once

// Projection of a multipartite state onto every qubit pair of a
// bipartition: subspace weights y, compressed 4x4 states, maximal CHSH
// values gamma and overlaps Q. A pair is selected by one SO(dimL) and one
// SO(dimR) generator index; the compressed state lives on the ordered
// basis {|s>,|t>} x {|u>,|v>}.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "chshov/chsh.hpp"
#include "chshov/so_generators.hpp"
#include "chshov/state.hpp"

namespace chshov {

// below this subspace population the compressed state is numerically
// meaningless and the pair is reported with gamma = q = 0
inline constexpr double y_floor = 1e-12;

struct Bipartition {
    std::vector<std::size_t> left, right;  // 0-based party indices, each ascending
    std::size_t dim_left = 0, dim_right = 0;

    static Bipartition of(const std::vector<std::size_t>& dims, std::vector<std::size_t> left_parties) {
        std::sort(left_parties.begin(), left_parties.end());
        left_parties.erase(std::unique(left_parties.begin(), left_parties.end()), left_parties.end());
        if (left_parties.empty()) throw std::invalid_argument("Bipartition: empty left group");
        for (auto p : left_parties)
            if (p >= dims.size()) throw std::invalid_argument("Bipartition: party index out of range");
        if (left_parties.size() == dims.size())
            throw std::invalid_argument("Bipartition: right group is empty");

        Bipartition b;
        b.left = std::move(left_parties);
        b.dim_left = 1;
        b.dim_right = 1;
        for (std::size_t p = 0; p < dims.size(); ++p) {
            if (std::binary_search(b.left.begin(), b.left.end(), p)) {
                b.dim_left *= dims[p];
            } else {
                b.right.push_back(p);
                b.dim_right *= dims[p];
            }
        }
        return b;
    }

    /// Canonical variant: party 0 on the left, so each unordered split
    /// appears exactly once when enumerating.
    Bipartition canonical(const std::vector<std::size_t>& dims) const {
        if (!left.empty() && left.front() == 0) return *this;
        return Bipartition::of(dims, right);
    }

    /// All 2^(N-1) - 1 unordered splits, canonical form.
    static std::vector<Bipartition> all(const std::vector<std::size_t>& dims) {
        const std::size_t n = dims.size();
        if (n < 2) throw std::invalid_argument("Bipartition::all: need at least two parties");
        std::vector<Bipartition> out;
        // subsets containing party 0, excluding the full set
        const std::size_t subsets = std::size_t{1} << (n - 1);
        for (std::size_t mask = 0; mask + 1 < subsets; ++mask) {
            std::vector<std::size_t> lhs{0};
            for (std::size_t p = 1; p < n; ++p)
                if (mask & (std::size_t{1} << (p - 1))) lhs.push_back(p);
            out.push_back(Bipartition::of(dims, std::move(lhs)));
        }
        return out;
    }

    /// 1-based label, e.g. "1|23"; comma-separated once labels reach 10.
    std::string label() const {
        bool wide = false;
        for (auto p : left) wide |= p + 1 >= 10;
        for (auto p : right) wide |= p + 1 >= 10;
        auto side = [&](const std::vector<std::size_t>& g) {
            std::string s;
            for (std::size_t i = 0; i < g.size(); ++i) {
                if (i && wide) s += ',';
                s += std::to_string(g[i] + 1);
            }
            return s;
        };
        return side(left) + "|" + side(right);
    }

    bool operator==(const Bipartition&) const = default;
};

/// Regroups the state so the left parties form the row index group and the
/// right parties the column group; result has dims {dimL, dimR}.
inline QState flatten(const QState& s, const Bipartition& p) {
    const auto& dims = s.dims();
    if (p.left.size() + p.right.size() != dims.size())
        throw std::invalid_argument("flatten: bipartition does not match the state");
    const auto strides = detail::strides_of(dims);

    const std::size_t total = s.total_dim();
    std::vector<std::size_t> new_index(total);
    {
        // enumerate (left multi-index, right multi-index) and record the
        // original linear index each pair comes from
        std::vector<std::size_t> left_off(p.dim_left, 0), right_off(p.dim_right, 0);
        auto fill = [&](const std::vector<std::size_t>& group, std::vector<std::size_t>& offs) {
            for (std::size_t idx = 0; idx < offs.size(); ++idx) {
                std::size_t rem = idx, acc = 0;
                for (std::size_t k = group.size(); k-- > 0;) {
                    acc += (rem % dims[group[k]]) * strides[group[k]];
                    rem /= dims[group[k]];
                }
                offs[idx] = acc;
            }
        };
        fill(p.left, left_off);
        fill(p.right, right_off);
        for (std::size_t l = 0; l < p.dim_left; ++l)
            for (std::size_t r = 0; r < p.dim_right; ++r)
                new_index[l * p.dim_right + r] = left_off[l] + right_off[r];
    }

    if (s.is_pure()) {
        const auto& a = s.amplitudes();
        std::vector<cplx> out(total);
        for (std::size_t i = 0; i < total; ++i) out[i] = a[new_index[i]];
        return QState::pure({p.dim_left, p.dim_right}, std::move(out));
    }
    const CMatrix& rho = s.density_matrix();
    CMatrix out(total, total);
    for (std::size_t i = 0; i < total; ++i)
        for (std::size_t j = 0; j < total; ++j) out(i, j) = rho(new_index[i], new_index[j]);
    return QState::mixed({p.dim_left, p.dim_right}, std::move(out));
}

struct PairProjection {
    Bipartition partition;
    GeneratorIndex alpha, beta;
    double y = 0.0;
    std::optional<CMatrix> two_qubit;  // 4x4 compressed state, absent when y <= y_floor
    double gamma = 0.0;
    double q = 0.0;
};

namespace detail {

// flattened bipartite view used by the pair scans
struct FlatState {
    QState state;  // dims {dimL, dimR}
    std::size_t dim_left, dim_right;

    explicit FlatState(QState flat)
        : state(std::move(flat)), dim_left(state.dims()[0]), dim_right(state.dims()[1]) {}
};

inline FlatState flat_view(const QState& s, const Bipartition& p) {
    return FlatState(flatten(s, p));
}

// weight and compressed 4x4 state for one generator pair
inline std::pair<double, std::optional<CMatrix>> compress_pair(const FlatState& f,
                                                               const GeneratorIndex& a,
                                                               const GeneratorIndex& b) {
    const std::size_t dr = f.dim_right;
    const std::size_t idx[4] = {a.s * dr + b.s, a.s * dr + b.t, a.t * dr + b.s, a.t * dr + b.t};

    if (f.state.is_pure()) {
        const auto& amps = f.state.amplitudes();
        cplx v[4];
        double y = 0.0;
        for (int k = 0; k < 4; ++k) {
            v[k] = amps[idx[k]];
            y += std::norm(v[k]);
        }
        if (y <= y_floor) return {y, std::nullopt};
        CMatrix rho(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) rho(i, j) = v[i] * std::conj(v[j]) / y;
        return {y, std::move(rho)};
    }

    const CMatrix& full = f.state.density_matrix();
    CMatrix sub(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) sub(i, j) = full(idx[i], idx[j]);
    const double y = sub.trace().real();
    if (y <= y_floor) return {y, std::nullopt};
    sub *= cplx{1.0 / y, 0.0};
    return {y, std::move(sub)};
}

inline PairProjection make_projection(const Bipartition& p, const FlatState& f,
                                      const GeneratorIndex& a, const GeneratorIndex& b,
                                      bool keep_state) {
    auto [y, rho] = compress_pair(f, a, b);
    PairProjection rec;
    rec.partition = p;
    rec.alpha = a;
    rec.beta = b;
    rec.y = y;
    if (rho) {
        const ChshResult r = horodecki_gamma(*rho);
        rec.gamma = r.gamma;
        rec.q = r.q;
        if (keep_state) rec.two_qubit = std::move(*rho);
    }
    return rec;
}

inline void check_pair_dims(const FlatState& f, const GeneratorIndex& a, const GeneratorIndex& b) {
    check_generator(a);
    check_generator(b);
    if (a.dim != f.dim_left || b.dim != f.dim_right)
        throw std::invalid_argument("pair operation: generator dimensions do not match the bipartition");
}

template <typename Fn>
inline void for_each_pair(const QState& s, const Bipartition& p, bool keep_states, Fn&& fn) {
    const FlatState f = flat_view(s, p);
    const std::size_t na = generator_count(f.dim_left);
    const std::size_t nb = generator_count(f.dim_right);
    for (std::size_t ia = 0; ia < na; ++ia) {
        const GeneratorIndex a = generator_at(f.dim_left, ia);
        for (std::size_t ib = 0; ib < nb; ++ib) {
            const GeneratorIndex b = generator_at(f.dim_right, ib);
            fn(make_projection(p, f, a, b, keep_states));
        }
    }
}

}  // namespace detail

/// Population of the 2x2 subspace: Tr{(P_alpha x P_beta) rho}.
inline double pair_weight(const QState& s, const Bipartition& p, const GeneratorIndex& alpha,
                          const GeneratorIndex& beta) {
    const auto f = detail::flat_view(s, p);
    detail::check_pair_dims(f, alpha, beta);
    return detail::compress_pair(f, alpha, beta).first;
}

/// Compressed, renormalized 4x4 state; absent when the weight is below y_floor.
inline std::optional<CMatrix> pair_state(const QState& s, const Bipartition& p,
                                         const GeneratorIndex& alpha, const GeneratorIndex& beta) {
    const auto f = detail::flat_view(s, p);
    detail::check_pair_dims(f, alpha, beta);
    return detail::compress_pair(f, alpha, beta).second;
}

/// Full record: weight, compressed state, gamma and overlap Q for one pair.
inline PairProjection pair_overlap(const QState& s, const Bipartition& p,
                                   const GeneratorIndex& alpha, const GeneratorIndex& beta) {
    const auto f = detail::flat_view(s, p);
    detail::check_pair_dims(f, alpha, beta);
    return detail::make_projection(p, f, alpha, beta, true);
}

/// One record per generator pair, lexicographic in (alpha, beta).
inline std::vector<PairProjection> all_pair_overlaps(const QState& s, const Bipartition& p) {
    std::vector<PairProjection> out;
    detail::for_each_pair(s, p, true, [&](PairProjection rec) { out.push_back(std::move(rec)); });
    return out;
}

/// max_{alpha beta} Q without materializing the records.
inline double max_pair_overlap(const QState& s, const Bipartition& p) {
    double best = 0.0;
    detail::for_each_pair(s, p, false,
                          [&](const PairProjection& rec) { best = std::max(best, rec.q); });
    return best;
}

/// sum_{alpha beta} y^2 Q without materializing the records.
inline double pair_overlap_sum(const QState& s, const Bipartition& p) {
    double acc = 0.0;
    detail::for_each_pair(s, p, false,
                          [&](const PairProjection& rec) { acc += rec.y * rec.y * rec.q; });
    return acc;
}

}  // namespace chshov

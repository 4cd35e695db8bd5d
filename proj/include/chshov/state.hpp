#pragma once

// Multipartite quantum states: a pure amplitude vector or a mixed density
// matrix together with the list of subsystem dimensions. Parties are
// indexed from 0, party 0 owning the most significant digit of the
// row-major linear index.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "chshov/matrix.hpp"

namespace chshov {

inline std::size_t product_of(std::span<const std::size_t> dims) {
    std::size_t p = 1;
    for (auto d : dims) p *= d;
    return p;
}

class QState {
public:
    static QState pure(std::vector<std::size_t> dims, std::vector<cplx> amplitudes) {
        check_dims(dims);
        if (amplitudes.size() != product_of(dims))
            throw std::invalid_argument("QState: amplitude count does not match dimensions");
        QState s;
        s.dims_ = std::move(dims);
        s.amps_ = std::move(amplitudes);
        s.pure_ = true;
        return s;
    }

    static QState mixed(std::vector<std::size_t> dims, CMatrix rho) {
        check_dims(dims);
        const std::size_t d = product_of(dims);
        if (rho.rows() != d || rho.cols() != d)
            throw std::invalid_argument("QState: density matrix does not match dimensions");
        QState s;
        s.dims_ = std::move(dims);
        s.rho_ = std::move(rho);
        s.pure_ = false;
        return s;
    }

    bool is_pure() const { return pure_; }
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t parties() const { return dims_.size(); }
    std::size_t total_dim() const { return product_of(dims_); }

    const std::vector<cplx>& amplitudes() const {
        if (!pure_) throw std::logic_error("QState: amplitudes of a mixed state");
        return amps_;
    }

    const CMatrix& density_matrix() const {
        if (pure_) throw std::logic_error("QState: density_matrix of a pure state; use density()");
        return rho_;
    }

    /// Density matrix view of either kind (materializes |psi><psi| for pure input).
    CMatrix density() const {
        if (!pure_) return rho_;
        const std::size_t d = amps_.size();
        CMatrix out(d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) out(i, j) = amps_[i] * std::conj(amps_[j]);
        return out;
    }

    /// Same physical state stored as a density matrix.
    QState as_mixed() const { return pure_ ? QState::mixed(dims_, density()) : *this; }

private:
    static void check_dims(const std::vector<std::size_t>& dims) {
        if (dims.empty()) throw std::invalid_argument("QState: empty dimension list");
        for (auto d : dims)
            if (d < 2) throw std::invalid_argument("QState: every party dimension must be >= 2");
    }

    std::vector<std::size_t> dims_;
    std::vector<cplx> amps_;
    CMatrix rho_;
    bool pure_ = true;
};

struct ValidationIssue {
    std::string what;
    double deviation;
};

/// Reports every violated state invariant with its measured deviation.
/// An empty report means the state is valid.
inline std::vector<ValidationIssue> validate(const QState& s) {
    std::vector<ValidationIssue> issues;
    if (s.is_pure()) {
        double norm2 = 0.0;
        bool finite = true;
        for (const auto& a : s.amplitudes()) {
            if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) finite = false;
            norm2 += std::norm(a);
        }
        if (!finite) {
            issues.push_back({"non-finite amplitude", std::numeric_limits<double>::quiet_NaN()});
            return issues;
        }
        const double dev = std::abs(std::sqrt(norm2) - 1.0);
        if (dev > 1e-10) issues.push_back({"norm", dev});
    } else {
        const CMatrix& rho = s.density_matrix();
        if (!rho.all_finite()) {
            issues.push_back({"non-finite entry", std::numeric_limits<double>::quiet_NaN()});
            return issues;
        }
        const double herm = rho.hermiticity_defect();
        if (herm > 1e-10) issues.push_back({"hermiticity", herm});
        const double tr_dev = std::abs(rho.trace() - cplx{1.0, 0.0});
        if (tr_dev > 1e-10) issues.push_back({"trace", tr_dev});
        // eigenvalue check runs on the symmetrized matrix
        CMatrix h(rho.rows(), rho.cols());
        for (std::size_t r = 0; r < rho.rows(); ++r)
            for (std::size_t c = 0; c < rho.cols(); ++c)
                h(r, c) = 0.5 * (rho(r, c) + std::conj(rho(c, r)));
        const auto eigs = hermitian_eigenvalues(h);
        if (!eigs.empty() && eigs.front() < -1e-10)
            issues.push_back({"negative eigenvalue", -eigs.front()});
    }
    return issues;
}

namespace detail {

inline std::vector<std::size_t> strides_of(std::span<const std::size_t> dims) {
    std::vector<std::size_t> st(dims.size(), 1);
    for (std::size_t k = dims.size(); k-- > 1;) st[k - 1] = st[k] * dims[k];
    return st;
}

inline void check_party_subset(const QState& s, std::span<const std::size_t> parties) {
    for (auto p : parties)
        if (p >= s.parties()) throw std::invalid_argument("party index out of range");
}

}  // namespace detail

/// Reduced density matrix on the kept parties (ascending party order).
inline CMatrix partial_trace(const QState& s, std::vector<std::size_t> keep) {
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    detail::check_party_subset(s, keep);
    if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep-set");
    if (keep.size() == s.parties()) throw std::invalid_argument("partial_trace: keep-set is all parties");

    const auto& dims = s.dims();
    const auto strides = detail::strides_of(dims);

    std::vector<std::size_t> traced;
    for (std::size_t p = 0; p < dims.size(); ++p)
        if (!std::binary_search(keep.begin(), keep.end(), p)) traced.push_back(p);

    std::size_t dim_keep = 1, dim_traced = 1;
    for (auto p : keep) dim_keep *= dims[p];
    for (auto p : traced) dim_traced *= dims[p];

    // linear offsets contributed by each group index
    auto offsets_for = [&](const std::vector<std::size_t>& group) {
        std::size_t n = 1;
        for (auto p : group) n *= dims[p];
        std::vector<std::size_t> offs(n, 0);
        for (std::size_t idx = 0; idx < n; ++idx) {
            std::size_t rem = idx;
            for (std::size_t k = group.size(); k-- > 0;) {
                const std::size_t p = group[k];
                offs[idx] += (rem % dims[p]) * strides[p];
                rem /= dims[p];
            }
        }
        return offs;
    };
    const auto keep_off = offsets_for(keep);
    const auto traced_off = offsets_for(traced);

    CMatrix out(dim_keep, dim_keep);
    if (s.is_pure()) {
        const auto& a = s.amplitudes();
        for (std::size_t i = 0; i < dim_keep; ++i)
            for (std::size_t j = 0; j < dim_keep; ++j) {
                cplx acc = 0.0;
                for (std::size_t t = 0; t < dim_traced; ++t)
                    acc += a[keep_off[i] + traced_off[t]] * std::conj(a[keep_off[j] + traced_off[t]]);
                out(i, j) = acc;
            }
    } else {
        const CMatrix& rho = s.density_matrix();
        for (std::size_t i = 0; i < dim_keep; ++i)
            for (std::size_t j = 0; j < dim_keep; ++j) {
                cplx acc = 0.0;
                for (std::size_t t = 0; t < dim_traced; ++t)
                    acc += rho(keep_off[i] + traced_off[t], keep_off[j] + traced_off[t]);
                out(i, j) = acc;
            }
    }
    return out;
}

/// Applies a unitary to one party: |psi> -> (I x U x I)|psi|, rho likewise on both sides.
inline QState apply_local_unitary(const QState& s, std::size_t party, const CMatrix& u) {
    if (party >= s.parties()) throw std::invalid_argument("apply_local_unitary: bad party index");
    const std::size_t d = s.dims()[party];
    if (u.rows() != d || u.cols() != d)
        throw std::invalid_argument("apply_local_unitary: unitary does not match party dimension");

    const auto strides = detail::strides_of(s.dims());
    const std::size_t stride = strides[party];
    const std::size_t total = s.total_dim();
    const std::size_t outer = total / (d * stride);

    auto transform_vector = [&](std::vector<cplx>& v) {
        std::vector<cplx> slot(d);
        for (std::size_t o = 0; o < outer; ++o)
            for (std::size_t inner = 0; inner < stride; ++inner) {
                const std::size_t base = o * d * stride + inner;
                for (std::size_t k = 0; k < d; ++k) slot[k] = v[base + k * stride];
                for (std::size_t r = 0; r < d; ++r) {
                    cplx acc = 0.0;
                    for (std::size_t k = 0; k < d; ++k) acc += u(r, k) * slot[k];
                    v[base + r * stride] = acc;
                }
            }
    };

    if (s.is_pure()) {
        std::vector<cplx> a = s.amplitudes();
        transform_vector(a);
        return QState::pure(s.dims(), std::move(a));
    }

    CMatrix rho = s.density_matrix();
    // rho <- (I x U) rho (I x U)^dag, applied column-block by column-block
    std::vector<cplx> col(total), row(total);
    for (std::size_t c = 0; c < total; ++c) {
        for (std::size_t r = 0; r < total; ++r) col[r] = rho(r, c);
        transform_vector(col);
        for (std::size_t r = 0; r < total; ++r) rho(r, c) = col[r];
    }
    for (std::size_t r = 0; r < total; ++r) {
        for (std::size_t c = 0; c < total; ++c) row[c] = std::conj(rho(r, c));
        transform_vector(row);
        for (std::size_t c = 0; c < total; ++c) rho(r, c) = std::conj(row[c]);
    }
    return QState::mixed(s.dims(), std::move(rho));
}

/// Product unitary across all parties; us.size() must equal the party count.
inline QState apply_local_unitaries(const QState& s, std::span<const CMatrix> us) {
    if (us.size() != s.parties())
        throw std::invalid_argument("apply_local_unitaries: one unitary per party required");
    QState out = s;
    for (std::size_t p = 0; p < us.size(); ++p) out = apply_local_unitary(out, p, us[p]);
    return out;
}

}  // namespace chshov

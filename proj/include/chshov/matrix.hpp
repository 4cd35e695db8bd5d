#pragma once

// Dense complex matrices, Kronecker products and a cyclic Jacobi
// eigensolver for Hermitian matrices. Everything here is value-semantic
// and safe to share between threads once constructed.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace chshov {

using cplx = std::complex<double>;

class CMatrix {
public:
    CMatrix() = default;

    CMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0}) {}

    static CMatrix identity(std::size_t n) {
        CMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static CMatrix diagonal(std::span<const double> entries) {
        CMatrix m(entries.size(), entries.size());
        for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const cplx> data() const { return data_; }
    std::span<cplx> data() { return data_; }

    CMatrix& operator+=(const CMatrix& o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    CMatrix& operator-=(const CMatrix& o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    CMatrix& operator*=(cplx a) {
        for (auto& v : data_) v *= a;
        return *this;
    }

    friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
    friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
    friend CMatrix operator*(cplx a, CMatrix m) { return m *= a; }
    friend CMatrix operator*(CMatrix m, cplx a) { return m *= a; }

    friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("CMatrix: shape mismatch in product");
        CMatrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx{}) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
            }
        return out;
    }

    CMatrix adjoint() const {
        CMatrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
        return out;
    }

    CMatrix transpose() const {
        CMatrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
        return out;
    }

    CMatrix conjugate() const {
        CMatrix out = *this;
        for (auto& v : out.data_) v = std::conj(v);
        return out;
    }

    cplx trace() const {
        if (!square()) throw std::invalid_argument("CMatrix: trace of non-square matrix");
        cplx t = 0.0;
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& v : data_) s += std::norm(v);
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : data_) m = std::max(m, std::abs(v));
        return m;
    }

    // largest entry-wise deviation from the adjoint
    double hermiticity_defect() const {
        if (!square()) throw std::invalid_argument("CMatrix: hermiticity of non-square matrix");
        double m = 0.0;
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = r; c < cols_; ++c)
                m = std::max(m, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
        return m;
    }

    bool is_hermitian(double tol) const { return hermiticity_defect() <= tol; }

    bool all_finite() const {
        for (const auto& v : data_)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        return true;
    }

private:
    void require_same_shape(const CMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("CMatrix: shape mismatch");
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cplx> data_;
};

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx{}) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

struct EigenSystem {
    std::vector<double> values;  // ascending
    CMatrix vectors;             // column k pairs with values[k]
};

namespace detail {

// One-sided unitary similarity sweep zeroing A(p,q). The pivot rotation is
// U = diag(phase,1) * Givens(theta) restricted to rows/cols {p,q}, which
// reduces the complex pivot to the classic real symmetric update.
inline void jacobi_rotate(CMatrix& a, CMatrix* v, std::size_t p, std::size_t q) {
    const cplx beta = a(p, q);
    const double b = std::abs(beta);
    if (b < 1e-300) {
        a(p, q) = a(q, p) = 0.0;
        return;
    }
    const cplx phase = beta / b;
    const double alpha = a(p, p).real();
    const double gamma = a(q, q).real();
    const double tau = (gamma - alpha) / (2.0 * b);
    double t;
    if (tau >= 0.0)
        t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
    else
        t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const cplx upp = phase * c, upq = phase * s;
    const cplx uqp = -s, uqq = c;

    const std::size_t n = a.rows();
    for (std::size_t r = 0; r < n; ++r) {  // A <- A U on columns p,q
        const cplx arp = a(r, p), arq = a(r, q);
        a(r, p) = arp * upp + arq * uqp;
        a(r, q) = arp * upq + arq * uqq;
    }
    for (std::size_t r = 0; r < n; ++r) {  // A <- U^dag A on rows p,q
        const cplx apr = a(p, r), aqr = a(q, r);
        a(p, r) = std::conj(upp) * apr + std::conj(uqp) * aqr;
        a(q, r) = std::conj(upq) * apr + std::conj(uqq) * aqr;
    }
    a(p, q) = a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();

    if (v) {
        for (std::size_t r = 0; r < n; ++r) {
            const cplx vrp = (*v)(r, p), vrq = (*v)(r, q);
            (*v)(r, p) = vrp * upp + vrq * uqp;
            (*v)(r, q) = vrp * upq + vrq * uqq;
        }
    }
}

inline double off_diagonal_norm(const CMatrix& a) {
    double s = 0.0;
    for (std::size_t p = 0; p + 1 < a.rows(); ++p)
        for (std::size_t q = p + 1; q < a.rows(); ++q) s += std::norm(a(p, q));
    return std::sqrt(2.0 * s);
}

inline EigenSystem hermitian_jacobi(const CMatrix& m, bool want_vectors) {
    if (!m.square()) throw std::invalid_argument("hermitian_eigs: matrix not square");
    if (!m.is_hermitian(1e-8))
        throw std::invalid_argument("hermitian_eigs: matrix not Hermitian within 1e-8");

    const std::size_t n = m.rows();
    CMatrix a(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            a(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));

    CMatrix v;
    if (want_vectors) v = CMatrix::identity(n);

    const double target = 1e-12 * std::max(1.0, a.frobenius_norm());
    constexpr int max_sweeps = 100;
    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_norm(a) <= target) break;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                jacobi_rotate(a, want_vectors ? &v : nullptr, p, q);
    }
    if (sweep == max_sweeps && off_diagonal_norm(a) > target)
        throw std::runtime_error("hermitian_eigs: Jacobi sweep did not converge");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenSystem out;
    out.values.resize(n);
    for (std::size_t k = 0; k < n; ++k) out.values[k] = a(order[k], order[k]).real();
    if (want_vectors) {
        out.vectors = CMatrix(n, n);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
    }
    return out;
}

}  // namespace detail

/// Eigenvalues of a Hermitian matrix, ascending.
inline std::vector<double> hermitian_eigenvalues(const CMatrix& m) {
    return detail::hermitian_jacobi(m, false).values;
}

/// Eigenvalues (ascending) and matching orthonormal eigenvector columns.
inline EigenSystem hermitian_eigensystem(const CMatrix& m) {
    return detail::hermitian_jacobi(m, true);
}

}  // namespace chshov

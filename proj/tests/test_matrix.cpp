#include <doctest.h>

#include "chshov/chsh.hpp"
#include "chshov/matrix.hpp"
#include "testutil.hpp"

using namespace chshov;

namespace {

double max_entry_diff(const CMatrix& a, const CMatrix& b) {
    REQUIRE(a.rows() == b.rows());
    REQUIRE(a.cols() == b.cols());
    double m = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) m = std::max(m, std::abs(a(r, c) - b(r, c)));
    return m;
}

}  // namespace

TEST_CASE("kron of identities is the identity") {
    const CMatrix i2 = CMatrix::identity(2);
    CHECK(max_entry_diff(kron(i2, i2), CMatrix::identity(4)) == 0.0);
}

TEST_CASE("kron of sigma_z with itself is diag(1,-1,-1,1)") {
    const CMatrix& sz = pauli_matrices()[2];
    const CMatrix k = kron(sz, sz);
    const double diag[4] = {1.0, -1.0, -1.0, 1.0};
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c)
            CHECK(k(r, c) == (r == c ? cplx{diag[r], 0.0} : cplx{}));
}

TEST_CASE("kron of sigma_x with itself flips |00> to |11>") {
    const CMatrix& sx = pauli_matrices()[0];
    CMatrix ket00(4, 1);
    ket00(0, 0) = 1.0;
    const CMatrix out = kron(sx, sx) * ket00;
    CHECK(std::abs(out(3, 0) - cplx{1.0, 0.0}) == 0.0);
    CHECK(std::abs(out(0, 0)) == 0.0);
    CHECK(std::abs(out(1, 0)) == 0.0);
    CHECK(std::abs(out(2, 0)) == 0.0);
}

TEST_CASE("kron mixed-product identity on random 3x3 matrices") {
    auto rng = seeded_rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        const CMatrix a = gaussian_matrix(3, 3, rng);
        const CMatrix b = gaussian_matrix(3, 3, rng);
        const CMatrix c = gaussian_matrix(3, 3, rng);
        const CMatrix d = gaussian_matrix(3, 3, rng);
        CHECK(max_entry_diff(kron(a, b) * kron(c, d), kron(a * c, b * d)) < 1e-10 * 9.0);
    }
}

TEST_CASE("eigenvalues of sigma_z and sigma_x are -1 and 1") {
    for (std::size_t k : {std::size_t{0}, std::size_t{2}}) {
        const auto eigs = hermitian_eigenvalues(pauli_matrices()[k]);
        REQUIRE(eigs.size() == 2);
        CHECK(eigs[0] == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(eigs[1] == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("eigenvalues of I/4 are four quarters") {
    CMatrix m = CMatrix::identity(4);
    m *= cplx{0.25, 0.0};
    for (double v : hermitian_eigenvalues(m)) CHECK(v == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("eigenvalue sum equals trace for random Hermitian matrices") {
    auto rng = seeded_rng(102);
    for (std::size_t n : {2, 3, 5, 8, 12, 16}) {
        const CMatrix h = test::random_hermitian(n, rng);
        const auto eigs = hermitian_eigenvalues(h);
        double sum = 0.0;
        for (double v : eigs) sum += v;
        CHECK(std::abs(sum - h.trace().real()) < 1e-9);
        CHECK(std::is_sorted(eigs.begin(), eigs.end()));
    }
}

TEST_CASE("eigensystem reconstructs the matrix and is unitary") {
    auto rng = seeded_rng(103);
    for (std::size_t n : {2, 3, 6, 11, 16}) {
        const CMatrix h = test::random_hermitian(n, rng);
        const auto sys = hermitian_eigensystem(h);
        CMatrix lambda(n, n);
        for (std::size_t i = 0; i < n; ++i) lambda(i, i) = sys.values[i];
        CHECK(max_entry_diff(sys.vectors * lambda * sys.vectors.adjoint(), h) < 1e-9);
        CHECK(max_entry_diff(sys.vectors.adjoint() * sys.vectors, CMatrix::identity(n)) < 1e-10);
    }
}

TEST_CASE("non-Hermitian input is rejected") {
    CMatrix m(2, 2);
    m(0, 1) = 1.0;  // missing conjugate partner
    CHECK_THROWS_AS(hermitian_eigenvalues(m), std::invalid_argument);
}

TEST_CASE("shape mismatches are rejected") {
    CHECK_THROWS_AS(CMatrix(2, 3) + CMatrix(3, 2), std::invalid_argument);
    CHECK_THROWS_AS(CMatrix(2, 3) * CMatrix(2, 3), std::invalid_argument);
    CHECK_THROWS_AS(CMatrix(2, 3).trace(), std::invalid_argument);
}

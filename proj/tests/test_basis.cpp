// SPDX-License-Identifier: Apache-2.0
#include "isacaf/basis.hpp"

#include "isacaf/fft.hpp"
#include "support.hpp"

#include <filesystem>
#include <fstream>

using namespace isacaf;
using testing::max_abs_diff;
using testing::random_vector;

namespace {

CMatrix diag(std::span<const cplx> d) {
    CMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

}  // namespace

TEST_CASE("small DFT matrices") {
    CHECK(std::abs(dft_matrix(1).matrix()(0, 0) - cplx(1, 0)) < 1e-15);
    const auto f2 = dft_matrix(2).matrix();
    const double h = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(f2(0, 0) - h) < 1e-15);
    CHECK(std::abs(f2(0, 1) - h) < 1e-15);
    CHECK(std::abs(f2(1, 0) - h) < 1e-15);
    CHECK(std::abs(f2(1, 1) + h) < 1e-15);
    // e^{-j 2 pi m n / N}: the (1,1) entry of F_4 is -j / 2
    CHECK(std::abs(dft_matrix(4).matrix()(1, 1) - cplx(0, -0.5)) < 1e-15);
}

TEST_CASE("DFT matrix is unitary and agrees with the FFT") {
    for (std::size_t n : {1, 2, 3, 8, 12, 64}) {
        CAPTURE(n);
        const auto f = dft_matrix(n);
        const auto chk = verify_unitary(f.matrix(), 1e-10 * static_cast<double>(n));
        CHECK(chk.ok);
        const auto x = random_vector(n, n);
        CVector y(n);
        fft_for(n).forward(x, y);
        const auto z = f.apply(x);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(z[i] - y[i] / std::sqrt(double(n))) < 1e-10);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t l = 0; l < n; ++l) {
                cplx dot{};
                for (std::size_t i = 0; i < n; ++i) dot += std::conj(f.column(k)[i]) * f.column(l)[i];
                CHECK(std::abs(dot - cplx(k == l ? 1.0 : 0.0)) < 1e-12);
            }
    }
}

TEST_CASE("apply_shift") {
    const CVector x{{1, 0}, {2, 0}, {3, 0}, {4, 0}};
    CHECK(apply_shift(x, {1}) == CVector{{4, 0}, {1, 0}, {2, 0}, {3, 0}});
    CHECK(apply_shift(x, {0}) == x);
    CHECK(apply_shift(x, {3}) == CVector{{2, 0}, {3, 0}, {4, 0}, {1, 0}});
    CHECK_THROWS_CODE(apply_shift(x, {4}), ErrorCode::IndexOutOfRange);
}

TEST_CASE("dense shift matches the block form") {
    // J_k = [[0, I_k], [I_{N-k}, 0]]
    const std::size_t n = 5;
    for (std::size_t k = 0; k < n; ++k) {
        CMatrix block(n, n);
        for (std::size_t i = 0; i < k; ++i) block(i, n - k + i) = 1.0;
        for (std::size_t i = 0; i < n - k; ++i) block(k + i, i) = 1.0;
        CHECK(max_abs_diff(shift_matrix_dense(n, {k}), block) == 0.0);
        const auto x = random_vector(n, 100 + k);
        const auto y = block * std::span<const cplx>(x);
        CHECK(apply_shift(x, {k}) == y);
    }
}

TEST_CASE("shift diagonalizes in the DFT basis") {
    // J_k = sqrt(N) F^H Diag(f_{k+1}) F
    for (std::size_t n : {1, 2, 4, 8, 16}) {
        const auto f = dft_matrix(n).matrix();
        const auto fh = f.adjoint();
        for (std::size_t k = 0; k < n; ++k) {
            CAPTURE(n);
            CAPTURE(k);
            CMatrix d = diag(dft_matrix(n).column(k));
            CMatrix rhs = fh * d * f;
            for (auto& v : rhs.data()) v *= std::sqrt(static_cast<double>(n));
            CHECK(max_abs_diff(shift_matrix_dense(n, {k}), rhs) <= 1e-10);

            const auto x = random_vector(n, 7 * n + k);
            const auto lhs = apply_shift(x, {k});
            const auto viaf = rhs * std::span<const cplx>(x);
            for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(lhs[i] - viaf[i]) < 1e-10);
        }
    }
}

TEST_CASE("shift group property") {
    const std::size_t n = 7;
    const auto x = random_vector(n, 3);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
            CHECK(apply_shift(apply_shift(x, {l}), {k}) == apply_shift(x, {(k + l) % n}));
}

TEST_CASE("shifted conjugate DFT columns sum to a scaled diagonal") {
    // sum_n conj(f_{<n-q>}) f_n^T = sqrt(N) Diag(f_{q+1})
    for (std::size_t n : {1, 2, 3, 4, 8, 16}) {
        const auto f = dft_matrix(n);
        for (std::size_t q = 0; q < n; ++q) {
            CMatrix acc(n, n);
            for (std::size_t m = 0; m < n; ++m) {
                const auto a = f.column((m + n - q) % n);
                const auto b = f.column(m);
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) acc(i, j) += std::conj(a[i]) * b[j];
            }
            CMatrix expect = diag(f.column(q));
            for (auto& v : expect.data()) v *= std::sqrt(static_cast<double>(n));
            CAPTURE(n);
            CAPTURE(q);
            CHECK(max_abs_diff(acc, expect) <= 1e-10);
        }
    }
}

TEST_CASE("basis constructors") {
    SUBCASE("SC is the identity") {
        CHECK(max_abs_diff(basis_sc(4).matrix(), CMatrix::identity(4)) == 0.0);
        CHECK(basis_sc(4).label() == "SC");
    }
    SUBCASE("OFDM is F^H") {
        CHECK(max_abs_diff(basis_ofdm(8).matrix(), dft_matrix(8).matrix().adjoint()) < 1e-15);
    }
    SUBCASE("degenerate OTFS") {
        CHECK(max_abs_diff(basis_otfs(1, 6).matrix(), CMatrix::identity(6)) < 1e-15);
        CHECK(max_abs_diff(basis_otfs(6, 1).matrix(), basis_ofdm(6).matrix()) < 1e-15);
    }
    SUBCASE("OTFS is a Kronecker product") {
        const std::size_t c = 4, l = 3;
        const auto u = basis_otfs(c, l);
        const auto fch = dft_matrix(c).matrix().adjoint();
        CHECK(u.size() == 12);
        CHECK(u.label() == "OTFS(C=4,L=3)");
        for (std::size_t r = 0; r < c * l; ++r)
            for (std::size_t col = 0; col < c * l; ++col) {
                const cplx expect = (r % l == col % l) ? fch(r / l, col / l) : cplx{};
                CHECK(std::abs(u.matrix()(r, col) - expect) < 1e-15);
            }
    }
    SUBCASE("AFDM with zero chirps is OFDM") {
        CHECK(max_abs_diff(basis_afdm(8, 0.0, 0.0).matrix(), basis_ofdm(8).matrix()) < 1e-15);
    }
    SUBCASE("AFDM is the chirp sandwich") {
        const std::size_t n = 8;
        const double c1 = 3.0 / 16.0, c2 = 0.27;
        const auto u = basis_afdm(n, c1, c2).matrix();
        const auto fh = dft_matrix(n).matrix().adjoint();
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t col = 0; col < n; ++col) {
                const double pr = 2.0 * std::numbers::pi * c1 * double(r * r);
                const double pc = 2.0 * std::numbers::pi * c2 * double(col * col);
                const cplx expect = std::polar(1.0, pr) * fh(r, col) * std::polar(1.0, pc);
                CHECK(std::abs(u(r, col) - expect) < 1e-12);
            }
    }
    SUBCASE("AFDM parameter checks") {
        CHECK_THROWS_CODE(basis_afdm(7, 0.0, 0.0), ErrorCode::InvalidParameter);
        CHECK_THROWS_CODE(basis_afdm(8, 0.01, 0.0), ErrorCode::InvalidParameter);
        CHECK_THROWS_CODE(basis_afdm(8, 1.0 / 16.0, INFINITY), ErrorCode::InvalidParameter);
    }
    SUBCASE("size checks") {
        CHECK_THROWS_CODE(basis_sc(0), ErrorCode::InvalidArgument);
        CHECK_THROWS_CODE(basis_otfs(0, 4), ErrorCode::InvalidParameter);
    }
}

TEST_CASE("every family is unitary with unit-norm columns") {
    for (std::size_t n : {2, 4, 6, 16, 32}) {
        for (const auto& b : testing::all_bases(n)) {
            CAPTURE(b->label());
            CHECK(verify_unitary(b->matrix(), 1e-10 * double(n)).ok);
            for (std::size_t c = 0; c < n; ++c) CHECK(std::abs(norm2_squared(b->column(c)) - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("verify_unitary") {
    CHECK(verify_unitary(basis_ofdm(64).matrix(), 1e-10 * 64).ok);
    CHECK(verify_unitary(basis_afdm(128, 1.0 / 256.0, 0.1).matrix(), 1e-10 * 128).ok);
    CMatrix bad = CMatrix::identity(4);
    bad(2, 2) = 2.0;
    const auto chk = verify_unitary(bad, 1e-6);
    CHECK_FALSE(chk.ok);
    CHECK(std::abs(chk.defect - 3.0) < 1e-12);
    CHECK_THROWS_CODE(verify_unitary(CMatrix(2, 3), 1e-6), ErrorCode::DimensionMismatch);
}

TEST_CASE("Haar draws are seeded") {
    const auto a = basis_haar(8, 5);
    CHECK(max_abs_diff(a.matrix(), basis_haar(8, 5).matrix()) == 0.0);
    CHECK(max_abs_diff(a.matrix(), basis_haar(8, 6).matrix()) > 0.1);
    CHECK(a.label() == "Haar(seed=5)");
}

TEST_CASE("custom basis") {
    const auto h = basis_haar(5, 1);
    CHECK(basis_custom(h.matrix(), 1e-10).family() == BasisFamily::Custom);
    CMatrix bad = h.matrix();
    bad(0, 0) += 0.01;
    CHECK_THROWS_CODE(basis_custom(bad, 1e-8), ErrorCode::NotUnitary);
}

TEST_CASE("basis file import") {
    const auto dir = std::filesystem::temp_directory_path() / "isacaf_test_basis";
    std::filesystem::create_directories(dir);
    const auto u = basis_ofdm(4).matrix();

    SUBCASE("re im pairs") {
        const auto p = dir / "pairs.txt";
        {
            std::ofstream f(p);
            f.precision(17);
            for (std::size_t r = 0; r < 4; ++r) {
                for (std::size_t c = 0; c < 4; ++c) f << u(r, c).real() << ' ' << u(r, c).imag() << ' ';
                f << '\n';
            }
        }
        CHECK(max_abs_diff(load_basis(p).matrix(), u) < 1e-15);
    }
    SUBCASE("complex literals") {
        const auto p = dir / "literals.txt";
        {
            std::ofstream f(p);
            f << "1 0 0 0\n0 0 1j 0\n0 -1j 0 0\n0 0 0 -1\n";
        }
        const auto b = load_basis(p);
        CHECK(b.matrix()(1, 2) == cplx(0, 1));
        CHECK(b.matrix()(2, 1) == cplx(0, -1));
    }
    SUBCASE("non-unitary matrix is refused") {
        const auto p = dir / "bad.txt";
        {
            std::ofstream f(p);
            f << "1 1\n0 1\n";
        }
        CHECK_THROWS_CODE(load_basis(p), ErrorCode::NotUnitary);
    }
    SUBCASE("ragged rows") {
        const auto p = dir / "ragged.txt";
        {
            std::ofstream f(p);
            f << "1 0\n0\n";
        }
        CHECK_THROWS_CODE(load_basis(p), ErrorCode::Parse);
    }
    std::filesystem::remove_all(dir);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

using namespace sympeig;
using testutil::random_matrix;
using testutil::random_orthogonal;
using testutil::random_psd;
using testutil::random_symmetric;

TEST_CASE("eigh basics") {
    SUBCASE("identity") {
        const EigDecomposition e = eigh(SymMatrix(Matrix::Identity(2, 2)));
        CHECK(e.eigenvalues[0] == doctest::Approx(1.0));
        CHECK(e.eigenvalues[1] == doctest::Approx(1.0));
    }
    SUBCASE("already diagonal, sorted ascending") {
        Matrix a = Matrix::Zero(2, 2);
        a(0, 0) = 3.0;
        a(1, 1) = -1.0;
        const EigDecomposition e = eigh(SymMatrix(a));
        CHECK(e.eigenvalues[0] == doctest::Approx(-1.0));
        CHECK(e.eigenvalues[1] == doctest::Approx(3.0));
    }
    SUBCASE("off-diagonal pair: roots of lambda^2 - 1") {
        Matrix a = Matrix::Zero(2, 2);
        a(0, 1) = a(1, 0) = 1.0;
        const EigDecomposition e = eigh(SymMatrix(a));
        CHECK(e.eigenvalues[0] == doctest::Approx(-1.0));
        CHECK(e.eigenvalues[1] == doctest::Approx(1.0));
    }
}

TEST_CASE("eigh reconstruction and orthogonality on random input") {
    SplitMix64 rng(101);
    for (int trial = 0; trial < 200; ++trial) {
        const Eigen::Index dim = 2 * (1 + static_cast<Eigen::Index>(
                                              rng.next_u64() % 6));
        const SymMatrix a = random_symmetric(dim, rng);
        const EigDecomposition e = eigh(a);
        const double scale = std::max(1.0, a.mat().norm());
        CHECK((a.mat() * e.vectors -
               e.vectors * e.eigenvalues.asDiagonal().toDenseMatrix())
                  .norm() <= 1e-10 * scale);
        CHECK((e.vectors.transpose() * e.vectors -
               Matrix::Identity(dim, dim))
                  .norm() <= 1e-10);
    }
}

TEST_CASE("inertia") {
    CHECK(inertia(SymMatrix(Matrix::Identity(4, 4))) ==
          InertiaSignature{0, 0, 4});
    CHECK(inertia(SymMatrix(Matrix::Zero(4, 4))) == InertiaSignature{0, 4, 0});
    Vector d(4);
    d << -5, 7, -5, 7;
    CHECK(inertia(SymMatrix(Matrix(d.asDiagonal()))) ==
          InertiaSignature{2, 0, 2});
}

TEST_CASE("psd_sqrt") {
    SUBCASE("identity and diagonal") {
        CHECK((psd_sqrt(SymMatrix(Matrix::Identity(4, 4))).mat() -
               Matrix::Identity(4, 4))
                  .norm() <= 1e-12);
        Vector d(2);
        d << 4, 9;
        const Matrix r = psd_sqrt(SymMatrix(Matrix(d.asDiagonal()))).mat();
        CHECK(r(0, 0) == doctest::Approx(2.0));
        CHECK(r(1, 1) == doctest::Approx(3.0));
    }
    SUBCASE("2x2 dense against eigenvalue roots") {
        Matrix a(2, 2);
        a << 2, 1, 1, 2;
        const Matrix r = psd_sqrt(SymMatrix(a)).mat();
        CHECK((r * r - a).norm() <= 1e-9 * std::max(1.0, a.norm()));
        const Vector ev = eigh(SymMatrix(r)).eigenvalues;
        CHECK(ev[0] == doctest::Approx(1.0));
        CHECK(ev[1] == doctest::Approx(std::sqrt(3.0)));
    }
    SUBCASE("random psd of all ranks squares back") {
        SplitMix64 rng(202);
        for (Eigen::Index dim = 2; dim <= 8; dim += 2) {
            for (Eigen::Index rank = 0; rank <= dim; ++rank) {
                const SymMatrix b = random_psd(dim, rank, rng);
                const Matrix r = psd_sqrt(b).mat();
                CHECK((r * r - b.mat()).norm() <=
                      1e-9 * std::max(1.0, b.mat().norm()));
            }
        }
    }
    SUBCASE("rejects indefinite input") {
        Vector d(2);
        d << 1, -1;
        CHECK_THROWS_AS(psd_sqrt(SymMatrix(Matrix(d.asDiagonal()))),
                        NotPsdError);
    }
}

TEST_CASE("spectral_split") {
    SUBCASE("diagonal sign split") {
        Vector d(4);
        d << -5, 7, -5, 7;
        const SpectralSplit s = spectral_split(SymMatrix(Matrix(d.asDiagonal())));
        Vector expect_neg(4), expect_pos(4);
        expect_neg << 5, 0, 5, 0;
        expect_pos << 0, 7, 0, 7;
        CHECK((s.neg_part.mat() - Matrix(expect_neg.asDiagonal())).norm() <=
              1e-12);
        CHECK((s.pos_part.mat() - Matrix(expect_pos.asDiagonal())).norm() <=
              1e-12);
    }
    SUBCASE("zero matrix") {
        const SpectralSplit s = spectral_split(SymMatrix(Matrix::Zero(4, 4)));
        CHECK(s.neg_part.mat().norm() == 0.0);
        CHECK(s.pos_part.mat().norm() == 0.0);
        CHECK(s.abs_part.mat().norm() == 0.0);
    }
    SUBCASE("psd input keeps everything in the positive part") {
        SplitMix64 rng(303);
        const SymMatrix c = random_psd(6, 6, rng);
        const SpectralSplit s = spectral_split(c);
        CHECK(s.neg_part.mat().norm() <= 1e-9 * c.mat().norm());
        CHECK((s.pos_part.mat() - c.mat()).norm() <= 1e-9 * c.mat().norm());
    }
    SUBCASE("invariants on random symmetric input") {
        SplitMix64 rng(404);
        for (int trial = 0; trial < 50; ++trial) {
            const SymMatrix c = random_symmetric(6, rng);
            const SpectralSplit s = spectral_split(c);
            const double scale = std::max(1.0, c.mat().norm());
            CHECK((s.pos_part.mat() - s.neg_part.mat() - c.mat()).norm() <=
                  1e-9 * scale);
            CHECK((s.pos_part.mat() + s.neg_part.mat() - s.abs_part.mat())
                      .norm() <= 1e-9 * scale);
            CHECK((s.pos_part.mat() * s.neg_part.mat()).norm() <=
                  1e-9 * scale * scale);
            const auto rank_of = [](const SymMatrix& m) {
                const Vector ev = eigh(m).eigenvalues.cwiseAbs();
                const double thr = 1e-9 * std::max(1.0, ev.maxCoeff());
                return (ev.array() > thr).count();
            };
            CHECK(rank_of(c) == rank_of(s.pos_part) + rank_of(s.neg_part));
        }
    }
}

TEST_CASE("norms") {
    Vector d(2);
    d << 3, -4;
    const Matrix a = d.asDiagonal();
    CHECK(norm(a, NormKind::Operator) == doctest::Approx(4.0));
    CHECK(norm(a, NormKind::Frobenius) == doctest::Approx(5.0));
    CHECK(norm(a, NormKind::Trace) == doctest::Approx(7.0));
}

TEST_CASE("norms are orthogonally invariant") {
    SplitMix64 rng(505);
    for (int trial = 0; trial < 30; ++trial) {
        const Matrix x = random_matrix(5, 5, rng);
        const Matrix u = random_orthogonal(5, rng);
        const Matrix v = random_orthogonal(5, rng);
        for (NormKind k :
             {NormKind::Operator, NormKind::Frobenius, NormKind::Trace}) {
            const double base = norm(x, k);
            CHECK(norm(u * x * v, k) ==
                  doctest::Approx(base).epsilon(1e-9));
        }
    }
}

TEST_CASE("submultiplicative sandwich |||XYZ||| <= ||X|| |||Y||| ||Z||") {
    SplitMix64 rng(606);
    for (int trial = 0; trial < 30; ++trial) {
        const Matrix x = random_matrix(4, 4, rng);
        const Matrix y = random_matrix(4, 4, rng);
        const Matrix z = random_matrix(4, 4, rng);
        for (NormKind k :
             {NormKind::Operator, NormKind::Frobenius, NormKind::Trace}) {
            CHECK(norm(x * y * z, k) <=
                  norm(x, NormKind::Operator) * norm(y, k) *
                          norm(z, NormKind::Operator) +
                      1e-9);
        }
    }
}

TEST_CASE("SymMatrix symmetrizes and rejects odd dimension") {
    Matrix raw(2, 2);
    raw << 1, 2, 0, 1;
    const SymMatrix a(raw);
    CHECK(a.mat()(0, 1) == doctest::Approx(1.0));
    CHECK(a.mat()(1, 0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(SymMatrix(Matrix::Identity(3, 3)), DimensionError);
}

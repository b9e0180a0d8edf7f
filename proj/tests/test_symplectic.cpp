#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

using namespace sympeig;
using testutil::dense_j;
using testutil::random_matrix;

namespace {

Vector unit(Eigen::Index dim, Eigen::Index i) {
    Vector e = Vector::Zero(dim);
    e[i] = 1.0;
    return e;
}

Subspace span_of(std::initializer_list<Vector> vecs) {
    const Eigen::Index dim = vecs.begin()->size();
    Matrix b(dim, static_cast<Eigen::Index>(vecs.size()));
    Eigen::Index j = 0;
    for (const Vector& v : vecs) b.col(j++) = v;
    return {dim, b};
}

SymplecticFrame random_frame(Eigen::Index n, Eigen::Index k,
                             std::uint64_t seed) {
    // random symplectic subspace: image of the first k u/v pairs under a
    // random orthosymplectic matrix
    const Matrix u = random_orthosymplectic(n, seed).cols;
    Matrix cols(2 * n, 2 * k);
    cols.leftCols(k) = u.leftCols(k);
    cols.rightCols(k) = u.middleCols(n, k);
    return make_frame(n, cols);
}

}  // namespace

TEST_CASE("J block primitives match the dense matrix") {
    SplitMix64 rng(11);
    const Matrix x = random_matrix(6, 6, rng);
    const Matrix j = dense_j(3);
    CHECK((j_mul(x) - j * x).norm() <= 1e-14);
    CHECK((jt_mul(x) - j.transpose() * x).norm() <= 1e-14);
    CHECK((mul_j(x) - x * j).norm() <= 1e-14);
    CHECK((mul_jt(x) - x * j.transpose()).norm() <= 1e-14);
}

TEST_CASE("form") {
    CHECK(form(unit(4, 0), unit(4, 2)) == doctest::Approx(1.0));
    CHECK(form(unit(4, 0), unit(4, 0)) == doctest::Approx(0.0));
    SplitMix64 rng(22);
    for (int t = 0; t < 20; ++t) {
        const Vector u = random_matrix(8, 1, rng);
        const Vector v = random_matrix(8, 1, rng);
        CHECK(form(u, v) == doctest::Approx(-form(v, u)));
    }
    CHECK_THROWS_AS(form(unit(4, 0), unit(6, 0)), DimensionError);
}

TEST_CASE("symplectic_complement") {
    SUBCASE("full and trivial") {
        CHECK(symplectic_complement(Subspace::full(4)).dim() == 0);
        CHECK(symplectic_complement(Subspace::trivial(4)).dim() == 4);
    }
    SUBCASE("span{e1} in R^4") {
        const Subspace c = symplectic_complement(span_of({unit(4, 0)}));
        CHECK(c.dim() == 3);
        // complement is span{e1, e2, e4}: the form against e1 kills e3
        const Subspace expect =
            span_of({unit(4, 0), unit(4, 1), unit(4, 3)});
        CHECK(subspace_distance(c, expect) <= 1e-10);
    }
    SUBCASE("double complement returns the original") {
        SplitMix64 rng(33);
        for (int t = 0; t < 40; ++t) {
            const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.next_u64() % 3);
            const Eigen::Index d = 1 + static_cast<Eigen::Index>(rng.next_u64() %
                                                                 (2 * n - 1));
            const Subspace w{2 * n, random_matrix(2 * n, d, rng)};
            const Subspace c = symplectic_complement(w);
            CHECK(w.dim() + c.dim() == 2 * n);
            CHECK(subspace_distance(symplectic_complement(c), w) <= 1e-7);
        }
    }
}

TEST_CASE("is_symplectic_subspace") {
    CHECK(is_symplectic_subspace(span_of({unit(4, 0), unit(4, 2)})));
    CHECK_FALSE(is_symplectic_subspace(span_of({unit(4, 0), unit(4, 1)})));
    CHECK_FALSE(is_symplectic_subspace(span_of({unit(4, 0)})));  // odd dim
}

TEST_CASE("symplectic_gram_schmidt") {
    SUBCASE("already normalized pair") {
        const SymplecticFrame f =
            symplectic_gram_schmidt(span_of({unit(4, 0), unit(4, 2)}));
        CHECK(f.symplectic_residual() <= 1e-12);
        CHECK(subspace_distance(f.range(),
                                span_of({unit(4, 0), unit(4, 2)})) <= 1e-10);
    }
    SUBCASE("full space") {
        const SymplecticFrame f = symplectic_gram_schmidt(Subspace::full(6));
        CHECK(f.k() == 3);
        CHECK(f.symplectic_residual() <= 1e-12);
    }
    SUBCASE("scaling is normalized away") {
        const SymplecticFrame f =
            symplectic_gram_schmidt(span_of({Vector(2 * unit(4, 0)), unit(4, 2)}));
        CHECK(f.symplectic_residual() <= 1e-12);
    }
    SUBCASE("rejects a degenerate subspace") {
        CHECK_THROWS_AS(
            symplectic_gram_schmidt(span_of({unit(4, 0), unit(4, 1)})),
            NotSymplecticError);
    }
    SUBCASE("random symplectic subspaces: span and frame invariant") {
        SplitMix64 rng(44);
        for (int t = 0; t < 60; ++t) {
            const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.next_u64() % 4);
            const Eigen::Index k = 1 + static_cast<Eigen::Index>(rng.next_u64() % n);
            const SymplecticFrame base = random_frame(n, k, rng.next_u64());
            // scramble the basis with a random invertible mix
            const Matrix mix = random_matrix(2 * k, 2 * k, rng) +
                               5.0 * Matrix::Identity(2 * k, 2 * k);
            const Subspace w{2 * n, base.cols * mix};
            const SymplecticFrame f = symplectic_gram_schmidt(w);
            CHECK(f.symplectic_residual() <= 1e-8);
            CHECK(subspace_distance(f.range(), w) <= 1e-7);
        }
    }
}

TEST_CASE("concat") {
    const SymplecticFrame a = make_frame(
        2, (Matrix(4, 2) << 1, 0, 0, 0, 0, 1, 0, 0).finished());
    const SymplecticFrame b = make_frame(
        2, (Matrix(4, 2) << 0, 0, 1, 0, 0, 0, 0, 1).finished());
    SUBCASE("column placement gives the identity") {
        const SymplecticFrame c = concat(a, b);
        CHECK((c.cols - Matrix::Identity(4, 4)).norm() <= 1e-14);
        CHECK(c.symplectic_residual() <= 1e-14);
    }
    SUBCASE("concat with empty is identity on frames") {
        const SymplecticFrame c = concat(a, SymplecticFrame::empty(2));
        CHECK((c.cols - a.cols).norm() == 0.0);
    }
    SUBCASE("symplectically orthogonal ranges concat to a frame") {
        SplitMix64 rng(55);
        for (int t = 0; t < 30; ++t) {
            const Matrix u = random_orthosymplectic(3, rng.next_u64()).cols;
            Matrix ca(6, 2), cb(6, 4);
            ca.col(0) = u.col(0);
            ca.col(1) = u.col(3);
            cb.col(0) = u.col(1);
            cb.col(1) = u.col(2);
            cb.col(2) = u.col(4);
            cb.col(3) = u.col(5);
            const SymplecticFrame c =
                concat(make_frame(3, ca), make_frame(3, cb));
            CHECK(c.symplectic_residual() <= 1e-10);
        }
    }
}

TEST_CASE("s_direct_sum") {
    const Matrix j2 = dense_j(1);
    SUBCASE("single block is itself") {
        CHECK((s_direct_sum({j2}) - j2).norm() == 0.0);
    }
    SUBCASE("J2 s-plus J2 = J4") {
        CHECK((s_direct_sum({j2, j2}) - dense_j(2)).norm() == 0.0);
    }
    SUBCASE("diagonal quadrants") {
        Vector d1(1), d2(1);
        d1 << 3;
        d2 << 7;
        auto dd = [](const Vector& d) {
            Matrix m = Matrix::Zero(2 * d.size(), 2 * d.size());
            m.diagonal().head(d.size()) = d;
            m.diagonal().tail(d.size()) = d;
            return m;
        };
        Vector both(2);
        both << 3, 7;
        CHECK((s_direct_sum({dd(d1), dd(d2)}) - dd(both)).norm() == 0.0);
    }
    SUBCASE("odd block rejected") {
        CHECK_THROWS_AS(s_direct_sum({Matrix::Identity(3, 3)}),
                        DimensionError);
    }
}

TEST_CASE("symplectic_projection") {
    SUBCASE("identity frame") {
        const SymplecticProjection p =
            symplectic_projection(SymplecticFrame::identity(2));
        CHECK((p.matrix - Matrix::Identity(4, 4)).norm() <= 1e-14);
    }
    SUBCASE("coordinate plane in R^4") {
        const SymplecticFrame m = make_frame(
            2, (Matrix(4, 2) << 1, 0, 0, 0, 0, 1, 0, 0).finished());
        Vector d(4);
        d << 1, 0, 1, 0;
        CHECK((symplectic_projection(m).matrix - Matrix(d.asDiagonal()))
                  .norm() <= 1e-14);
    }
    SUBCASE("invariant under orthosymplectic change of frame") {
        SplitMix64 rng(66);
        for (int t = 0; t < 20; ++t) {
            const SymplecticFrame m = random_frame(4, 2, rng.next_u64());
            const Matrix u = random_orthosymplectic(2, rng.next_u64()).cols;
            const SymplecticFrame mu = make_frame(4, m.cols * u);
            CHECK((symplectic_projection(m).matrix -
                   symplectic_projection(mu).matrix)
                      .norm() <= 1e-10);
        }
    }
}

TEST_CASE("symplectic_orthogonal_projection") {
    SUBCASE("identity and coordinate plane") {
        CHECK((symplectic_orthogonal_projection(SymplecticFrame::identity(2))
                   .matrix -
               Matrix::Identity(4, 4))
                  .norm() <= 1e-14);
        const SymplecticFrame m = make_frame(
            2, (Matrix(4, 2) << 1, 0, 0, 0, 0, 1, 0, 0).finished());
        Vector d(4);
        d << 1, 0, 1, 0;
        CHECK((symplectic_orthogonal_projection(m).matrix -
               Matrix(d.asDiagonal()))
                  .norm() <= 1e-14);
    }
    SUBCASE("depends only on the range, even for non-orthogonal frame change") {
        SplitMix64 rng(77);
        for (int t = 0; t < 20; ++t) {
            const SymplecticFrame m = random_frame(4, 2, rng.next_u64());
            // symplectic but not orthosymplectic change of basis
            const Matrix s = testutil::random_symplectic(2, rng.next_u64());
            const SymplecticFrame ms = make_frame(4, m.cols * s, 1e-6);
            CHECK((symplectic_orthogonal_projection(m).matrix -
                   symplectic_orthogonal_projection(ms).matrix)
                      .norm() <= 1e-8);
        }
    }
    SUBCASE("projection laws on random frames") {
        SplitMix64 rng(88);
        for (int t = 0; t < 100; ++t) {
            const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.next_u64() % 5);
            const Eigen::Index k = 1 + static_cast<Eigen::Index>(rng.next_u64() % n);
            const SymplecticFrame m = random_frame(n, k, rng.next_u64());
            const SymplecticOrthogonalProjection pi =
                symplectic_orthogonal_projection(m);
            CHECK((pi.matrix * pi.matrix - pi.matrix).norm() <=
                  1e-8 * (1.0 + pi.matrix.norm()));
            CHECK((pi.matrix * m.cols - m.cols).norm() <= 1e-8 * m.cols.norm());
            const Matrix z = pi.kernel.basis;
            CHECK((pi.matrix * z).norm() <= 1e-8 * std::max(1.0, z.norm()));
        }
    }
    SUBCASE("uniqueness: any idempotent with symplectic kernel and matching "
            "range equals the construction") {
        SplitMix64 rng(99);
        for (int t = 0; t < 20; ++t) {
            const SymplecticFrame m = random_frame(3, 2, rng.next_u64());
            const SymplecticOrthogonalProjection pi =
                symplectic_orthogonal_projection(m);
            // rebuild from a different symplectic basis of the same range
            const SymplecticFrame m2 = symplectic_gram_schmidt(m.range());
            const SymplecticOrthogonalProjection pi2 =
                symplectic_orthogonal_projection(m2);
            CHECK((pi.matrix - pi2.matrix).norm() <= 1e-7);
        }
    }
}

TEST_CASE("transpose_projection_range is J times the range") {
    SUBCASE("identity") {
        const auto pi =
            symplectic_orthogonal_projection(SymplecticFrame::identity(3));
        CHECK(transpose_projection_range(pi).dim() == 6);
    }
    SUBCASE("coordinate plane maps to itself under J") {
        const SymplecticFrame m = make_frame(
            2, (Matrix(4, 2) << 1, 0, 0, 0, 0, 1, 0, 0).finished());
        const auto pi = symplectic_orthogonal_projection(m);
        const Subspace r = transpose_projection_range(pi);
        CHECK(subspace_distance(r, m.range()) <= 1e-10);
    }
    SUBCASE("random frames: principal-angle check") {
        SplitMix64 rng(111);
        for (int t = 0; t < 40; ++t) {
            const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.next_u64() % 4);
            const Eigen::Index k = 1 + static_cast<Eigen::Index>(rng.next_u64() % n);
            const SymplecticFrame m = random_frame(n, k, rng.next_u64());
            const auto pi = symplectic_orthogonal_projection(m);
            const Subspace jw{2 * n, j_mul(pi.range.basis)};
            CHECK(subspace_distance(transpose_projection_range(pi), jw) <=
                  1e-8);
        }
    }
}

#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "sympeig/prng.hpp"
#include "sympeig/sympeig.hpp"

namespace testutil {

using sympeig::Matrix;
using sympeig::SplitMix64;
using sympeig::SymMatrix;
using sympeig::Vector;

inline Matrix random_matrix(Eigen::Index rows, Eigen::Index cols,
                            SplitMix64& rng) {
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.next_normal();
    return m;
}

inline SymMatrix random_symmetric(Eigen::Index dim, SplitMix64& rng) {
    return SymMatrix(random_matrix(dim, dim, rng));
}

inline SymMatrix random_psd(Eigen::Index dim, Eigen::Index rank,
                            SplitMix64& rng) {
    if (rank == 0) return SymMatrix(Matrix::Zero(dim, dim));
    const Matrix s = random_matrix(dim, rank, rng);
    return SymMatrix(Matrix(s * s.transpose()));
}

inline Matrix random_orthogonal(Eigen::Index dim, SplitMix64& rng) {
    Eigen::HouseholderQR<Matrix> qr(random_matrix(dim, dim, rng));
    return qr.householderQ();
}

inline Matrix dense_j(Eigen::Index n) {
    Matrix j = Matrix::Zero(2 * n, 2 * n);
    j.topRightCorner(n, n) = Matrix::Identity(n, n);
    j.bottomLeftCorner(n, n) = -Matrix::Identity(n, n);
    return j;
}

/// Random symplectic (not orthosymplectic) matrix with moderate condition
/// number: product of an orthosymplectic factor, a diagonal squeeze
/// diag(t) (+) diag(1/t), and another orthosymplectic factor.
inline Matrix random_symplectic(Eigen::Index n, std::uint64_t seed,
                                double squeeze = 0.4) {
    const Matrix u = sympeig::random_orthosymplectic(n, seed).cols;
    const Matrix v = sympeig::random_orthosymplectic(n, seed ^ 0xBEEF).cols;
    SplitMix64 rng(seed ^ 0xD1A6);
    Vector t(n);
    for (Eigen::Index i = 0; i < n; ++i)
        t[i] = std::exp(squeeze * rng.next_normal());
    Matrix s = Matrix::Zero(2 * n, 2 * n);
    s.diagonal().head(n) = t;
    s.diagonal().tail(n) = t.cwiseInverse();
    return u * s * v;
}

}  // namespace testutil

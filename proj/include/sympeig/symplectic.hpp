#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "sympeig/config.hpp"
#include "sympeig/matrix_kernel.hpp"

namespace sympeig {

// J is never materialized: multiplication by J / J^T is a block
// swap-and-negate, exact in floating point.
//
// J = [0 I; -I 0], so  J*X = [X_bottom; -X_top]  and  J^T*X = [-X_bottom; X_top].

inline Matrix j_mul(const Matrix& x) {
    const Eigen::Index n = x.rows() / 2;
    if (x.rows() % 2 != 0)
        throw DimensionError("j_mul: odd row count");
    Matrix out(x.rows(), x.cols());
    out.topRows(n) = x.bottomRows(n);
    out.bottomRows(n) = -x.topRows(n);
    return out;
}

inline Matrix jt_mul(const Matrix& x) {
    const Eigen::Index n = x.rows() / 2;
    if (x.rows() % 2 != 0)
        throw DimensionError("jt_mul: odd row count");
    Matrix out(x.rows(), x.cols());
    out.topRows(n) = -x.bottomRows(n);
    out.bottomRows(n) = x.topRows(n);
    return out;
}

/// X * J  (right multiplication): [-X_right, X_left].
inline Matrix mul_j(const Matrix& x) {
    const Eigen::Index n = x.cols() / 2;
    if (x.cols() % 2 != 0)
        throw DimensionError("mul_j: odd column count");
    Matrix out(x.rows(), x.cols());
    out.leftCols(n) = -x.rightCols(n);
    out.rightCols(n) = x.leftCols(n);
    return out;
}

/// X * J^T: [X_right, -X_left].
inline Matrix mul_jt(const Matrix& x) {
    const Eigen::Index n = x.cols() / 2;
    if (x.cols() % 2 != 0)
        throw DimensionError("mul_jt: odd column count");
    Matrix out(x.rows(), x.cols());
    out.leftCols(n) = x.rightCols(n);
    out.rightCols(n) = -x.leftCols(n);
    return out;
}

/// Symplectic form u^T J v, computed by the block rule
/// u_top . v_bottom - u_bottom . v_top.
inline double form(const Vector& u, const Vector& v) {
    if (u.size() != v.size() || u.size() % 2 != 0)
        throw DimensionError("form: mismatched or odd dimensions");
    const Eigen::Index n = u.size() / 2;
    return u.head(n).dot(v.tail(n)) - u.tail(n).dot(v.head(n));
}

/// A linear subspace of R^{2n}, carried as a matrix of linearly
/// independent basis columns (possibly zero columns for the trivial space).
struct Subspace {
    Eigen::Index ambient_dim = 0;
    Matrix basis;  // ambient_dim x d

    static Subspace trivial(Eigen::Index ambient) {
        return {ambient, Matrix(ambient, 0)};
    }
    static Subspace full(Eigen::Index ambient) {
        return {ambient, Matrix::Identity(ambient, ambient)};
    }
    Eigen::Index dim() const { return basis.cols(); }
};

/// Thin orthonormal basis of ran(X) at the given rank tolerance.
inline Matrix orthonormal_range(const Matrix& x, double rank_tol = 1e-9) {
    if (x.cols() == 0) return Matrix(x.rows(), 0);
    Eigen::JacobiSVD<Matrix> svd(x, Eigen::ComputeThinU);
    const Vector& sv = svd.singularValues();
    const double threshold =
        rank_tol * std::max(1.0, sv.size() == 0 ? 0.0 : sv[0]);
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv[rank] > threshold) ++rank;
    return svd.matrixU().leftCols(rank);
}

/// sin of the largest principal angle between two subspaces; 1 if the
/// dimensions differ. Subspace equality everywhere means this <= tol.
inline double subspace_distance(const Subspace& w, const Subspace& z,
                                double rank_tol = 1e-9) {
    const Matrix qw = orthonormal_range(w.basis, rank_tol);
    const Matrix qz = orthonormal_range(z.basis, rank_tol);
    if (qw.cols() != qz.cols()) return 1.0;
    if (qw.cols() == 0) return 0.0;
    const Vector sv = singular_values(qw.transpose() * qz);
    const double c = std::clamp(sv.minCoeff(), -1.0, 1.0);
    return std::sqrt(std::max(0.0, 1.0 - c * c));
}

/// Symplectic orthogonal complement: {u : u^T J w = 0 for all w in W}.
/// dim(result) = 2n - dim(W) exactly (W has independent columns).
inline Subspace symplectic_complement(const Subspace& w,
                                      double rank_tol = 1e-9) {
    const Eigen::Index two_n = w.ambient_dim;
    if (w.dim() == 0) return Subspace::full(two_n);
    // u^T J B = 0  <=>  (J B)^T u = 0, a null-space problem.
    const Matrix jb_t = j_mul(w.basis).transpose();  // d x 2n
    Eigen::JacobiSVD<Matrix> svd(jb_t, Eigen::ComputeFullV);
    const Vector& sv = svd.singularValues();
    const double threshold =
        rank_tol * std::max(1.0, sv.size() == 0 ? 0.0 : sv[0]);
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv[rank] > threshold) ++rank;
    return {two_n, svd.matrixV().rightCols(two_n - rank)};
}

/// The form Gram matrix G_ij = b_i^T J b_j for the basis columns of W.
inline Matrix form_gram(const Matrix& basis) {
    return basis.transpose() * j_mul(basis);
}

/// W is symplectic iff the restricted form is nondegenerate: the Gram
/// matrix of the form on any basis has smallest singular value above
/// tol * ||G||_op. Odd-dimensional subspaces are never symplectic.
inline bool is_symplectic_subspace(const Subspace& w, double tol = 1e-8) {
    if (w.dim() == 0) return true;  // trivial space, vacuously symplectic
    if (w.dim() % 2 != 0) return false;
    const Vector sv = singular_values(form_gram(w.basis));
    if (sv.size() == 0 || sv[0] <= 0.0) return false;
    return sv[sv.size() - 1] > tol * sv[0];
}

/// 2n x 2k matrix M with M^T J_{2n} M = J_{2k}; columns are a symplectic
/// basis (u_1..u_k, v_1..v_k) of ran(M).
struct SymplecticFrame {
    Eigen::Index ambient_n = 0;  // ambient dimension is 2n
    Matrix cols;                 // 2n x 2k

    Eigen::Index k() const { return cols.cols() / 2; }

    static SymplecticFrame empty(Eigen::Index n) {
        return {n, Matrix(2 * n, 0)};
    }
    static SymplecticFrame identity(Eigen::Index n) {
        return {n, Matrix::Identity(2 * n, 2 * n)};
    }

    /// ||M^T J M - J_{2k}||_F
    double symplectic_residual() const {
        Matrix g = form_gram(cols);
        const Eigen::Index kk = k();
        g.topRightCorner(kk, kk) -= Matrix::Identity(kk, kk);
        g.bottomLeftCorner(kk, kk) += Matrix::Identity(kk, kk);
        return g.norm();
    }

    Subspace range() const { return {2 * ambient_n, cols}; }
};

inline SymplecticFrame make_frame(Eigen::Index n, const Matrix& cols,
                                  double symp_tol = 1e-8) {
    if (cols.rows() != 2 * n || cols.cols() % 2 != 0)
        throw DimensionError("make_frame: bad shape");
    SymplecticFrame frame{n, cols};
    const double res = frame.symplectic_residual();
    if (res > symp_tol)
        throw NotSymplecticError(
            "make_frame: ||M^T J M - J|| = " + std::to_string(res), res);
    return frame;
}

/// Symplectic Gram-Schmidt. The pivot pair maximizing |u^T J w| over all
/// remaining vectors is taken first; every remaining vector x is then
/// deflated by x -= (x^T J v) u - (x^T J u) v.
inline SymplecticFrame symplectic_gram_schmidt(const Subspace& w,
                                               const Tolerances& tol = {}) {
    const Eigen::Index two_n = w.ambient_dim;
    if (two_n % 2 != 0)
        throw DimensionError("symplectic_gram_schmidt: odd ambient dimension");
    const Eigen::Index n = two_n / 2;
    if (w.dim() == 0) return SymplecticFrame::empty(n);
    if (w.dim() % 2 != 0)
        throw NotSymplecticError(
            "symplectic_gram_schmidt: odd-dimensional subspace", 0.0);

    std::vector<Vector> remaining;
    remaining.reserve(static_cast<std::size_t>(w.dim()));
    const double scale = std::max(1.0, w.basis.norm());
    for (Eigen::Index j = 0; j < w.dim(); ++j)
        remaining.push_back(w.basis.col(j));

    std::vector<Vector> us, vs;
    while (!remaining.empty()) {
        // pivot on the largest pairwise form value
        double best = 0.0;
        std::size_t bi = 0, bj = 1;
        for (std::size_t i = 0; i < remaining.size(); ++i) {
            for (std::size_t j = i + 1; j < remaining.size(); ++j) {
                const double f = std::abs(form(remaining[i], remaining[j]));
                if (f > best) {
                    best = f;
                    bi = i;
                    bj = j;
                }
            }
        }
        if (best <= tol.rank_tol * scale * scale)
            throw NotSymplecticError(
                "symplectic_gram_schmidt: form is degenerate on the input "
                "(near-zero pivot " + std::to_string(best) + ")",
                best);

        Vector u = remaining[bi] / remaining[bi].norm();
        const double pivot = form(u, remaining[bj]);
        Vector v = remaining[bj] / pivot;

        std::vector<Vector> next;
        next.reserve(remaining.size() - 2);
        for (std::size_t t = 0; t < remaining.size(); ++t) {
            if (t == bi || t == bj) continue;
            Vector x = remaining[t];
            x -= form(x, v) * u;
            x += form(x, u) * v;
            next.push_back(std::move(x));
        }
        us.push_back(std::move(u));
        vs.push_back(std::move(v));
        remaining = std::move(next);
    }

    Matrix cols(two_n, 2 * static_cast<Eigen::Index>(us.size()));
    for (std::size_t i = 0; i < us.size(); ++i) {
        cols.col(static_cast<Eigen::Index>(i)) = us[i];
        cols.col(static_cast<Eigen::Index>(us.size() + i)) = vs[i];
    }
    return make_frame(n, cols, tol.symp_tol);
}

/// Symplectic concatenation M <> N: columns reordered as
/// [u_1..u_k, x_1..x_l, v_1..v_k, y_1..y_l].
inline SymplecticFrame concat(const SymplecticFrame& m,
                              const SymplecticFrame& n) {
    if (m.ambient_n != n.ambient_n)
        throw DimensionError("concat: ambient dimension mismatch");
    const Eigen::Index k = m.k(), l = n.k();
    Matrix cols(2 * m.ambient_n, 2 * (k + l));
    cols.leftCols(k) = m.cols.leftCols(k);
    cols.middleCols(k, l) = n.cols.leftCols(l);
    cols.middleCols(k + l, k) = m.cols.rightCols(k);
    cols.rightCols(l) = n.cols.rightCols(l);
    return {m.ambient_n, cols};
}

/// s-direct sum: the E/F/G/H quadrants of the result are the ordinary
/// direct sums of the blocks' quadrants.
inline Matrix s_direct_sum(const std::vector<Matrix>& blocks) {
    Eigen::Index total_n = 0;
    for (const Matrix& b : blocks) {
        if (b.rows() != b.cols() || b.rows() % 2 != 0)
            throw DimensionError("s_direct_sum: blocks must be square and even");
        total_n += b.rows() / 2;
    }
    Matrix out = Matrix::Zero(2 * total_n, 2 * total_n);
    Eigen::Index offset = 0;
    for (const Matrix& b : blocks) {
        const Eigen::Index ni = b.rows() / 2;
        out.block(offset, offset, ni, ni) = b.topLeftCorner(ni, ni);
        out.block(offset, total_n + offset, ni, ni) = b.topRightCorner(ni, ni);
        out.block(total_n + offset, offset, ni, ni) = b.bottomLeftCorner(ni, ni);
        out.block(total_n + offset, total_n + offset, ni, ni) =
            b.bottomRightCorner(ni, ni);
        offset += ni;
    }
    return out;
}

/// Symplectic projection P_M = J M M^T J^T: psd with kernel ran(M)^{perp_s}.
struct SymplecticProjection {
    Matrix matrix;
};

inline SymplecticProjection symplectic_projection(const SymplecticFrame& m) {
    const Matrix jm = j_mul(m.cols);
    return {jm * jm.transpose()};
}

/// The idempotent Pi = J^T P_M J P_M acting as identity on ran(M) and as
/// zero on ran(M)^{perp_s}.
struct SymplecticOrthogonalProjection {
    Matrix matrix;
    Subspace range;
    Subspace kernel;
};

inline SymplecticOrthogonalProjection symplectic_orthogonal_projection(
    const SymplecticFrame& m, double rank_tol = 1e-9) {
    const Matrix p = symplectic_projection(m).matrix;
    const Matrix pi = jt_mul(p) * j_mul(p);
    return {pi, m.range(), symplectic_complement(m.range(), rank_tol)};
}

/// ran(Pi^T), which equals J * range(Pi) as a subspace.
inline Subspace transpose_projection_range(
    const SymplecticOrthogonalProjection& pi, double rank_tol = 1e-9) {
    return {pi.matrix.rows(),
            orthonormal_range(pi.matrix.transpose(), rank_tol)};
}

}  // namespace sympeig

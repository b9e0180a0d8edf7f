#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "sympeig/classify.hpp"
#include "sympeig/config.hpp"
#include "sympeig/matrix_kernel.hpp"
#include "sympeig/symplectic.hpp"

namespace sympeig {

/// M^T A M = diag(d) (+) diag(d) with M symplectic and d ascending.
struct WilliamsonDecomposition {
    SymplecticFrame m;
    Vector d;  // length n, ascending
};

/// diag(d) (+) diag(d) as a dense 2n x 2n matrix.
inline Matrix d_oplus_d(const Vector& d) {
    const Eigen::Index n = d.size();
    Matrix out = Matrix::Zero(2 * n, 2 * n);
    out.diagonal().head(n) = d;
    out.diagonal().tail(n) = d;
    return out;
}

inline double decomposition_residual(const SymMatrix& a,
                                     const WilliamsonDecomposition& dec) {
    return (dec.m.cols.transpose() * a.mat() * dec.m.cols - d_oplus_d(dec.d))
        .norm();
}

/// Symplectic eigenvalues, ascending; may contain negatives and zeros.
struct SymplecticSpectrum {
    Vector values;
};

/// U^T K U = 0_{zero_dim} (+) blocks [[0, beta_i], [-beta_i, 0]].
/// Block i occupies columns zero_dim + 2i and zero_dim + 2i + 1 of U.
struct SkewCanonicalForm {
    Matrix u;             // 2n x 2n orthogonal
    std::vector<double> betas;
    Eigen::Index zero_dim = 0;

    Eigen::Index block_col(std::size_t i) const {
        return zero_dim + 2 * static_cast<Eigen::Index>(i);
    }

    Matrix canonical() const {
        Matrix k = Matrix::Zero(u.rows(), u.cols());
        for (std::size_t i = 0; i < betas.size(); ++i) {
            const Eigen::Index c = block_col(i);
            k(c, c + 1) = betas[i];
            k(c + 1, c) = -betas[i];
        }
        return k;
    }
};

/// Canonical form of a real skew-symmetric matrix by an orthogonal
/// congruence. Works on the symmetric psd matrix -K^2, whose eigenvalues
/// are the beta_i^2 each doubled: within each eigenvalue cluster, pairs
/// (x, -Kx/beta) are extracted and deflated, staying in real arithmetic.
inline SkewCanonicalForm skew_canonical(const Matrix& k,
                                        const Tolerances& tol = {}) {
    if (k.rows() != k.cols() || k.rows() % 2 != 0)
        throw DimensionError("skew_canonical: need even square input");
    const double kscale = std::max(1.0, k.norm());
    const double skew_res = (k + k.transpose()).norm();
    if (skew_res > 1e-10 * kscale)
        throw NotSymplecticError(
            "skew_canonical: input is not skew-symmetric, ||K + K^T|| = " +
                std::to_string(skew_res),
            skew_res);

    const Eigen::Index dim = k.rows();
    Eigen::SelfAdjointEigenSolver<Matrix> es(-k * k);
    if (es.info() != Eigen::Success)
        throw ConvergenceError("skew_canonical: eigensolver failed", kscale);
    const Vector lam = es.eigenvalues();  // ascending, >= 0 up to roundoff
    const Matrix& vecs = es.eigenvectors();

    const double beta_max = std::sqrt(std::max(0.0, lam.maxCoeff()));
    const double zero_beta = tol.rank_tol * std::max(1.0, beta_max);
    const double zero_lam = zero_beta * zero_beta;
    // cluster eigenvalues so repeated betas share one invariant subspace
    const double cluster_gap = 1e-8 * std::max(1.0, lam.maxCoeff());

    SkewCanonicalForm out;
    out.u.resize(dim, dim);
    Eigen::Index col = 0;

    // kernel block first
    Eigen::Index i = 0;
    while (i < lam.size() && lam[i] <= zero_lam) {
        out.u.col(col++) = vecs.col(i);
        ++i;
    }
    out.zero_dim = col;

    std::vector<std::pair<double, Matrix>> pairs;  // (beta, [x y])
    while (i < lam.size()) {
        Eigen::Index j = i + 1;
        while (j < lam.size() && lam[j] - lam[j - 1] <= cluster_gap) ++j;
        Matrix v = vecs.middleCols(i, j - i);
        if (v.cols() % 2 != 0)
            throw NumericalError(
                "skew_canonical: odd-dimensional nonzero eigenvalue cluster");
        while (v.cols() > 0) {
            Vector x = v.col(0);
            x.normalize();
            Vector kx = k * x;
            const double beta = kx.norm();
            Vector y = -kx / beta;
            y -= x.dot(y) * x;
            y.normalize();
            Matrix xy(dim, 2);
            xy.col(0) = x;
            xy.col(1) = y;
            pairs.emplace_back(beta, xy);
            if (v.cols() == 2) break;
            // deflate the cluster basis past the extracted pair; the span
            // drops by exactly two dimensions
            Matrix rest = v;
            rest -= x * (x.transpose() * rest);
            rest -= y * (y.transpose() * rest);
            Eigen::JacobiSVD<Matrix> svd(rest, Eigen::ComputeThinU);
            v = svd.matrixU().leftCols(v.cols() - 2);
        }
        i = j;
    }
    // deterministic block order: betas ascending
    std::sort(pairs.begin(), pairs.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [beta, xy] : pairs) {
        out.betas.push_back(beta);
        out.u.col(col++) = xy.col(0);
        out.u.col(col++) = xy.col(1);
    }
    if (col != dim)
        throw NumericalError("skew_canonical: column count mismatch");
    return out;
}

/// Result of bringing two commuting skew matrices with zero product to
/// block form by one orthogonal matrix. Each nonzero block of the combined
/// form belongs to exactly one of the inputs.
struct SimultaneousSkewCanonical {
    SkewCanonicalForm canon;             // of k_neg + k_pos
    std::vector<std::size_t> neg_blocks;  // indices into canon.betas
    std::vector<std::size_t> pos_blocks;
};

inline SimultaneousSkewCanonical simultaneous_skew_canonical(
    const Matrix& k_neg, const Matrix& k_pos, const Tolerances& tol = {}) {
    if (k_neg.rows() != k_pos.rows() || k_neg.cols() != k_pos.cols())
        throw DimensionError("simultaneous_skew_canonical: size mismatch");
    const double scale =
        std::max(1.0, std::max(k_neg.norm(), k_pos.norm()));
    const double prod_res = (k_neg * k_pos).norm();
    const double comm_res = (k_neg * k_pos - k_pos * k_neg).norm();
    if (prod_res > 1e-7 * scale * scale || comm_res > 1e-7 * scale * scale)
        throw NotSymplecticError(
            "simultaneous_skew_canonical: inputs do not have vanishing "
            "product (residual " + std::to_string(prod_res) + ")",
            prod_res);

    SimultaneousSkewCanonical out;
    out.canon = skew_canonical(k_neg + k_pos, tol);
    // blocks never mix: attribute each to whichever input acts on its plane
    for (std::size_t b = 0; b < out.canon.betas.size(); ++b) {
        const Vector x = out.canon.u.col(out.canon.block_col(b));
        if ((k_neg * x).norm() >= (k_pos * x).norm())
            out.neg_blocks.push_back(b);
        else
            out.pos_blocks.push_back(b);
    }
    return out;
}

namespace detail {

/// Assemble J A^{1/2} [x_1..x_k, y_1..y_k] (D^{-1/2} (+) D^{-1/2}) J_2k^T
/// from the canonical blocks listed in `blocks`.
inline SymplecticFrame assemble_part_frame(const Matrix& sqrt_part,
                                           const SkewCanonicalForm& canon,
                                           const std::vector<std::size_t>& blocks,
                                           const Tolerances& tol) {
    const Eigen::Index two_n = sqrt_part.rows();
    const Eigen::Index n = two_n / 2;
    const Eigen::Index kk = static_cast<Eigen::Index>(blocks.size());
    if (kk == 0) return SymplecticFrame::empty(n);
    Matrix w(two_n, 2 * kk);
    for (Eigen::Index a = 0; a < kk; ++a) {
        const std::size_t b = blocks[static_cast<std::size_t>(a)];
        const double beta = canon.betas[b];
        if (beta <= tol.rank_tol)
            throw NumericalError(
                "williamson: canonical block value below rank tolerance");
        const double s = 1.0 / std::sqrt(beta);
        w.col(a) = s * canon.u.col(canon.block_col(b));
        w.col(kk + a) = s * canon.u.col(canon.block_col(b) + 1);
    }
    const Matrix t = j_mul(sqrt_part * w);
    return make_frame(n, mul_jt(t), tol.symp_tol);
}

/// Sort d ascending and permute the frame's u- and v-columns identically
/// (a symplectic permutation).
inline WilliamsonDecomposition sorted_decomposition(SymplecticFrame frame,
                                                    const Vector& d_unsorted) {
    const Eigen::Index n = d_unsorted.size();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return d_unsorted[a] < d_unsorted[b];
    });
    Vector d(n);
    Matrix cols(frame.cols.rows(), frame.cols.cols());
    for (Eigen::Index i = 0; i < n; ++i) {
        d[i] = d_unsorted[order[static_cast<std::size_t>(i)]];
        cols.col(i) = frame.cols.col(order[static_cast<std::size_t>(i)]);
        cols.col(n + i) = frame.cols.col(n + order[static_cast<std::size_t>(i)]);
    }
    frame.cols = std::move(cols);
    return {std::move(frame), std::move(d)};
}

inline void require_membership(const MembershipReport& report,
                               const std::string& where) {
    if (report.verdict) return;
    const ConditionRecord* fail = report.first_failure();
    throw MembershipError(
        where + ": membership rejected, violated condition: " +
            (fail ? fail->name : "unknown") + " (residual " +
            std::to_string(fail ? fail->residual : 0.0) + ")",
        fail ? fail->name : "unknown", fail ? fail->residual : 0.0);
}

}  // namespace detail

/// Classical Williamson decomposition for positive definite input.
/// Follows the explicit construction with the negative part absent:
/// R = A^{1/2}, K = R J R, canonical form of K, then the assembled frame.
inline WilliamsonDecomposition williamson_pd(const SymMatrix& a,
                                             const Tolerances& tol = {}) {
    const EigDecomposition eig = eigh(a);
    const double threshold = tol.rank_tol * rank_scale(eig.eigenvalues);
    const double min_ev = eig.eigenvalues.minCoeff();
    if (min_ev <= threshold)
        throw NotPsdError("williamson_pd: matrix is not positive definite "
                          "(eigenvalue " + std::to_string(min_ev) + ")",
                          min_ev);

    const Matrix r = psd_sqrt(a, tol.rank_tol).mat();
    const SkewCanonicalForm canon = skew_canonical(r * j_mul(r), tol);
    if (canon.zero_dim != 0)
        throw NumericalError(
            "williamson_pd: unexpected kernel in canonical form");
    std::vector<std::size_t> all(canon.betas.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    SymplecticFrame frame = detail::assemble_part_frame(r, canon, all, tol);
    Vector d(static_cast<Eigen::Index>(canon.betas.size()));
    for (std::size_t i = 0; i < canon.betas.size(); ++i)
        d[static_cast<Eigen::Index>(i)] = canon.betas[i];
    return detail::sorted_decomposition(std::move(frame), d);
}

/// Symplectic spectrum for the eigenspace-symplectic class: the negated
/// block values of the negative part, xi(A)/2 zeros, and the block values
/// of the positive part, sorted ascending.
inline SymplecticSpectrum symplectic_spectrum_eigsps(const SymMatrix& a,
                                                     const Tolerances& tol = {}) {
    detail::require_membership(check_eigsps_membership(a, tol),
                               "symplectic_spectrum_eigsps");
    const SpectralSplit split = spectral_split(a, tol.rank_tol);
    const Matrix r_neg = psd_sqrt(split.neg_part, tol.rank_tol).mat();
    const Matrix r_pos = psd_sqrt(split.pos_part, tol.rank_tol).mat();
    const SkewCanonicalForm cn = skew_canonical(r_neg * j_mul(r_neg), tol);
    const SkewCanonicalForm cp = skew_canonical(r_pos * j_mul(r_pos), tol);

    const InertiaSignature sig = inertia(a, tol.rank_tol);
    std::vector<double> vals;
    for (double b : cn.betas) vals.push_back(-b);
    for (Eigen::Index z = 0; z < sig.xi / 2; ++z) vals.push_back(0.0);
    for (double b : cp.betas) vals.push_back(b);
    if (static_cast<Eigen::Index>(vals.size()) != a.half())
        throw NumericalError(
            "symplectic_spectrum_eigsps: spectrum length mismatch "
            "(misclassified rank)");
    std::sort(vals.begin(), vals.end());
    Vector v(static_cast<Eigen::Index>(vals.size()));
    for (std::size_t i = 0; i < vals.size(); ++i)
        v[static_cast<Eigen::Index>(i)] = vals[i];
    return {v};
}

/// Full explicit Williamson decomposition for the eigenspace-symplectic
/// class: split A into positive/negative parts, bring both skew products
/// to canonical form with one orthogonal matrix, assemble the two part
/// frames, and close the kernel with a symplectic basis of ker(A).
inline WilliamsonDecomposition williamson_eigsps(const SymMatrix& a,
                                                 const Tolerances& tol = {}) {
    detail::require_membership(check_eigsps_membership(a, tol),
                               "williamson_eigsps");
    const Eigen::Index n = a.half();
    const SpectralSplit split = spectral_split(a, tol.rank_tol);
    const Matrix r_neg = psd_sqrt(split.neg_part, tol.rank_tol).mat();
    const Matrix r_pos = psd_sqrt(split.pos_part, tol.rank_tol).mat();
    const SimultaneousSkewCanonical sim = simultaneous_skew_canonical(
        r_neg * j_mul(r_neg), r_pos * j_mul(r_pos), tol);

    const SymplecticFrame m_neg =
        detail::assemble_part_frame(r_neg, sim.canon, sim.neg_blocks, tol);
    const SymplecticFrame m_pos =
        detail::assemble_part_frame(r_pos, sim.canon, sim.pos_blocks, tol);

    // kernel of the combined skew form is ker(A)
    Subspace e0{2 * n, sim.canon.u.leftCols(sim.canon.zero_dim)};
    const SymplecticFrame m_zero = symplectic_gram_schmidt(e0, tol);

    const SymplecticFrame frame = concat(concat(m_zero, m_neg), m_pos);
    if (frame.k() != n)
        throw NumericalError("williamson_eigsps: assembled frame is not square");

    Vector d_unsorted(n);
    Eigen::Index idx = 0;
    for (Eigen::Index z = 0; z < m_zero.k(); ++z) d_unsorted[idx++] = 0.0;
    for (std::size_t b : sim.neg_blocks)
        d_unsorted[idx++] = -sim.canon.betas[b];
    for (std::size_t b : sim.pos_blocks)
        d_unsorted[idx++] = sim.canon.betas[b];
    return detail::sorted_decomposition(frame, d_unsorted);
}

/// Certificate-driven construction: symplectic bases of the certified
/// subspaces, an inner positive definite Williamson decomposition on each
/// definite block, then symplectic concatenation.
inline WilliamsonDecomposition williamson_via_subspaces(
    const SymMatrix& a, const Subspace& w_neg, const Subspace& w_zero,
    const Subspace& w_pos, const Tolerances& tol = {}) {
    detail::require_membership(
        verify_certificate(a, w_neg, w_zero, w_pos, tol),
        "williamson_via_subspaces");
    const Eigen::Index n = a.half();

    const SymplecticFrame f_neg = symplectic_gram_schmidt(w_neg, tol);
    const SymplecticFrame f_zero = symplectic_gram_schmidt(w_zero, tol);
    const SymplecticFrame f_pos = symplectic_gram_schmidt(w_pos, tol);

    SymplecticFrame m_neg = f_neg;
    Vector d_neg(0);
    if (f_neg.k() > 0) {
        const SymMatrix inner(
            Matrix(-f_neg.cols.transpose() * a.mat() * f_neg.cols));
        const WilliamsonDecomposition w = williamson_pd(inner, tol);
        m_neg.cols = f_neg.cols * w.m.cols;
        d_neg = -w.d;
    }
    SymplecticFrame m_pos = f_pos;
    Vector d_pos(0);
    if (f_pos.k() > 0) {
        const SymMatrix inner(
            Matrix(f_pos.cols.transpose() * a.mat() * f_pos.cols));
        const WilliamsonDecomposition w = williamson_pd(inner, tol);
        m_pos.cols = f_pos.cols * w.m.cols;
        d_pos = w.d;
    }

    const SymplecticFrame frame = concat(concat(m_neg, f_zero), m_pos);
    if (frame.k() != n)
        throw NumericalError(
            "williamson_via_subspaces: assembled frame is not square");
    Vector d_unsorted(n);
    Eigen::Index idx = 0;
    for (Eigen::Index i = 0; i < d_neg.size(); ++i)
        d_unsorted[idx++] = d_neg[i];
    for (Eigen::Index z = 0; z < f_zero.k(); ++z) d_unsorted[idx++] = 0.0;
    for (Eigen::Index i = 0; i < d_pos.size(); ++i)
        d_unsorted[idx++] = d_pos[i];
    return detail::sorted_decomposition(frame, d_unsorted);
}

/// The entries of D and -D combined must be the eigenvalues of iJA.
/// Computed via the real non-symmetric eigenvalues of JA (imaginary parts);
/// returns the max deviation between the two sorted 2n-vectors.
inline double eigen_iJA_check(const SymMatrix& a, const Vector& d) {
    Eigen::EigenSolver<Matrix> es(j_mul(a.mat()));
    if (es.info() != Eigen::Success)
        throw ConvergenceError("eigen_iJA_check: eigensolver failed",
                               a.mat().norm());
    std::vector<double> computed;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        computed.push_back(es.eigenvalues()[i].imag());
    std::vector<double> expected;
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        expected.push_back(d[i]);
        expected.push_back(-d[i]);
    }
    std::sort(computed.begin(), computed.end());
    std::sort(expected.begin(), expected.end());
    double worst = 0.0;
    for (std::size_t i = 0; i < computed.size(); ++i)
        worst = std::max(worst, std::abs(computed[i] - expected[i]));
    return worst;
}

}  // namespace sympeig

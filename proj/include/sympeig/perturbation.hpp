#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "sympeig/config.hpp"
#include "sympeig/matrix_kernel.hpp"
#include "sympeig/symplectic.hpp"
#include "sympeig/williamson.hpp"

namespace sympeig {

/// Diagonal of the 2n x 2n matrix combining the absolute spectra of the
/// skew products of the two psd parts; entries occur in equal adjacent
/// pairs and are kept in the decreasing eigenvalue-vector convention.
struct DHat {
    Vector values;  // length 2n, descending
};

namespace detail {

/// Eigenvalues of |K| for skew K, descending: each block value twice,
/// zero-padded. Never leaves real arithmetic.
inline std::vector<double> abs_skew_spectrum_desc(const Matrix& k,
                                                  const Tolerances& tol) {
    const SkewCanonicalForm canon = skew_canonical(k, tol);
    std::vector<double> out;
    for (double b : canon.betas) {
        out.push_back(b);
        out.push_back(b);
    }
    out.resize(static_cast<std::size_t>(k.rows()), 0.0);
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

}  // namespace detail

/// d_hat is defined for all symmetric input; on the eigenspace-symplectic
/// class its paired entries are the symplectic eigenvalues, each twice.
inline DHat d_hat(const SymMatrix& a, const Tolerances& tol = {}) {
    const SpectralSplit split = spectral_split(a, tol.rank_tol);
    const Matrix r_neg = psd_sqrt(split.neg_part, tol.rank_tol).mat();
    const Matrix r_pos = psd_sqrt(split.pos_part, tol.rank_tol).mat();
    const std::vector<double> pos =
        detail::abs_skew_spectrum_desc(r_pos * j_mul(r_pos), tol);
    std::vector<double> neg =
        detail::abs_skew_spectrum_desc(r_neg * j_mul(r_neg), tol);
    // Eig(-|K-|) descending = negated values, re-sorted descending
    for (double& v : neg) v = -v;
    std::sort(neg.begin(), neg.end(), std::greater<>());

    Vector values(a.dim());
    for (Eigen::Index i = 0; i < a.dim(); ++i)
        values[i] = pos[static_cast<std::size_t>(i)] +
                    neg[static_cast<std::size_t>(i)];
    return {values};
}

struct PerturbationReport {
    NormKind norm_kind = NormKind::Operator;
    double lhs = 0.0;       // ||| d_hat(A) - d_hat(B) |||
    double rhs = 0.0;       // term_pos + term_neg
    double term_pos = 0.0;
    double term_neg = 0.0;
    double slack = 0.0;
    bool pass = false;

    double tightness() const { return lhs / std::max(rhs, 1e-300); }
};

namespace detail {

struct BoundParts {
    SymMatrix a_neg, a_pos, b_neg, b_pos;
    double scale;
};

inline BoundParts bound_parts(const SymMatrix& a, const SymMatrix& b,
                              const Tolerances& tol) {
    if (a.dim() != b.dim())
        throw DimensionError("perturbation bound: dimension mismatch");
    SpectralSplit sa = spectral_split(a, tol.rank_tol);
    SpectralSplit sb = spectral_split(b, tol.rank_tol);
    const double scale =
        std::max(1.0, std::max(a.mat().norm(), b.mat().norm()));
    return {std::move(sa.neg_part), std::move(sa.pos_part),
            std::move(sb.neg_part), std::move(sb.pos_part), scale};
}

inline double sqrt_op_norm(const SymMatrix& x, const Tolerances& tol) {
    return norm(psd_sqrt(x, tol.rank_tol).mat(), NormKind::Operator);
}

/// ||| |X - Y|^{1/2} ||| for the requested norm, via singular values of
/// the symmetric difference.
inline double abs_diff_sqrt_norm(const SymMatrix& x, const SymMatrix& y,
                                 NormKind kind) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(x.mat() - y.mat());
    Vector roots = es.eigenvalues().cwiseAbs().cwiseSqrt();
    switch (kind) {
        case NormKind::Operator:
            return roots.size() == 0 ? 0.0 : roots.maxCoeff();
        case NormKind::Frobenius:
            return roots.norm();
        case NormKind::Trace:
            return roots.sum();
    }
    return 0.0;
}

inline double diag_norm(const Vector& diff, NormKind kind) {
    switch (kind) {
        case NormKind::Operator:
            return diff.size() == 0 ? 0.0 : diff.cwiseAbs().maxCoeff();
        case NormKind::Frobenius:
            return diff.norm();
        case NormKind::Trace:
            return diff.cwiseAbs().sum();
    }
    return 0.0;
}

}  // namespace detail

/// The unitarily-invariant-norm perturbation bound on d_hat:
///   ||| D^(A) - D^(B) ||| <= (||A+^{1/2}|| + ||B+^{1/2}||) ||| |A+ - B+|^{1/2} |||
///                          + (||A-^{1/2}|| + ||B-^{1/2}||) ||| |A- - B-|^{1/2} |||
/// with ||.|| the operator norm and |||.||| the chosen kind.
inline PerturbationReport bound_main(const SymMatrix& a, const SymMatrix& b,
                                     NormKind kind,
                                     const Tolerances& tol = {}) {
    const detail::BoundParts p = detail::bound_parts(a, b, tol);
    PerturbationReport rep;
    rep.norm_kind = kind;
    rep.lhs = detail::diag_norm(d_hat(a, tol).values - d_hat(b, tol).values,
                                kind);
    rep.term_pos =
        (detail::sqrt_op_norm(p.a_pos, tol) + detail::sqrt_op_norm(p.b_pos, tol)) *
        detail::abs_diff_sqrt_norm(p.a_pos, p.b_pos, kind);
    rep.term_neg =
        (detail::sqrt_op_norm(p.a_neg, tol) + detail::sqrt_op_norm(p.b_neg, tol)) *
        detail::abs_diff_sqrt_norm(p.a_neg, p.b_neg, kind);
    rep.rhs = rep.term_pos + rep.term_neg;
    rep.slack = 1e-9 * p.scale;
    rep.pass = rep.lhs <= rep.rhs + rep.slack;
    return rep;
}

/// Operator-norm specialization: max_i |d_i(A) - d_i(B)| against operator
/// norms of the part differences, square-rooted.
inline PerturbationReport bound_operator(const SymMatrix& a, const SymMatrix& b,
                                         const Tolerances& tol = {}) {
    return bound_main(a, b, NormKind::Operator, tol);
}

/// Frobenius specialization; the lhs carries the sqrt(2) pairing factor
/// (the Frobenius norm of the full 2n-entry diagonal difference) and the
/// rhs uses trace norms of the part differences, square-rooted.
inline PerturbationReport bound_frobenius(const SymMatrix& a,
                                          const SymMatrix& b,
                                          const Tolerances& tol = {}) {
    const detail::BoundParts p = detail::bound_parts(a, b, tol);
    PerturbationReport rep;
    rep.norm_kind = NormKind::Frobenius;
    rep.lhs = (d_hat(a, tol).values - d_hat(b, tol).values).norm();
    rep.term_pos =
        (detail::sqrt_op_norm(p.a_pos, tol) + detail::sqrt_op_norm(p.b_pos, tol)) *
        std::sqrt(norm(p.a_pos.mat() - p.b_pos.mat(), NormKind::Trace));
    rep.term_neg =
        (detail::sqrt_op_norm(p.a_neg, tol) + detail::sqrt_op_norm(p.b_neg, tol)) *
        std::sqrt(norm(p.a_neg.mat() - p.b_neg.mat(), NormKind::Trace));
    rep.rhs = rep.term_pos + rep.term_neg;
    rep.slack = 1e-9 * p.scale;
    rep.pass = rep.lhs <= rep.rhs + rep.slack;
    return rep;
}

struct SweepRow {
    double epsilon = 0.0;
    NormKind norm_kind = NormKind::Operator;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
};

/// Tightness study: evaluate both sides of the bound along A + eps * E for
/// each epsilon and every norm kind, ordered by epsilon on emission.
inline std::vector<SweepRow> sweep(const SymMatrix& a,
                                   const SymMatrix& direction,
                                   std::vector<double> epsilons,
                                   const Tolerances& tol = {}) {
    if (a.dim() != direction.dim())
        throw DimensionError("sweep: dimension mismatch");
    std::sort(epsilons.begin(), epsilons.end());
    std::vector<SweepRow> rows;
    for (double eps : epsilons) {
        const SymMatrix b(Matrix(a.mat() + eps * direction.mat()));
        for (NormKind kind :
             {NormKind::Operator, NormKind::Frobenius, NormKind::Trace}) {
            const PerturbationReport rep =
                kind == NormKind::Frobenius ? bound_frobenius(a, b, tol)
                                            : bound_main(a, b, kind, tol);
            rows.push_back({eps, kind, rep.lhs, rep.rhs, rep.tightness()});
        }
    }
    return rows;
}

}  // namespace sympeig

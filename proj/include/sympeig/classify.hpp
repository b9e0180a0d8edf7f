#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "sympeig/config.hpp"
#include "sympeig/matrix_kernel.hpp"
#include "sympeig/symplectic.hpp"

namespace sympeig {

/// Eigenspaces of a symmetric matrix grouped by eigenvalue sign.
struct EigenspaceTriple {
    Subspace neg;
    Subspace zero;
    Subspace pos;
};

enum class MatrixClass { Pd, SpPsd, EigSpSm, CertifiedSpSm };

inline const char* class_name(MatrixClass c) {
    switch (c) {
        case MatrixClass::Pd: return "Pd";
        case MatrixClass::SpPsd: return "SpPsd";
        case MatrixClass::EigSpSm: return "EigSpSm";
        case MatrixClass::CertifiedSpSm: return "CertifiedSpSm";
    }
    return "?";
}

struct ConditionRecord {
    std::string name;
    double residual = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

struct MembershipReport {
    MatrixClass matrix_class = MatrixClass::EigSpSm;
    bool verdict = false;
    std::vector<ConditionRecord> conditions;
    InertiaSignature inertia;
    // Distance of the closest eigenvalue to the sign threshold; small
    // margins flag fragile verdicts.
    double margin = 0.0;

    const ConditionRecord* first_failure() const {
        for (const auto& c : conditions)
            if (!c.pass) return &c;
        return nullptr;
    }

    void finalize() {
        verdict = true;
        for (const auto& c : conditions) verdict = verdict && c.pass;
    }
};

/// Default threshold on normalized JA-invariance and orthogonality residuals.
inline constexpr double kInvarianceTol = 1e-7;

inline EigenspaceTriple eigenspace_split(const SymMatrix& a,
                                         double rank_tol = 1e-9) {
    const EigDecomposition eig = eigh(a);
    const double threshold = rank_tol * rank_scale(eig.eigenvalues);
    std::vector<Eigen::Index> in, iz, ip;
    for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
        const double ev = eig.eigenvalues[i];
        if (ev < -threshold)
            in.push_back(i);
        else if (ev > threshold)
            ip.push_back(i);
        else
            iz.push_back(i);
    }
    auto gather = [&](const std::vector<Eigen::Index>& idx) {
        Matrix b(a.dim(), static_cast<Eigen::Index>(idx.size()));
        for (std::size_t j = 0; j < idx.size(); ++j)
            b.col(static_cast<Eigen::Index>(j)) = eig.vectors.col(idx[j]);
        return Subspace{a.dim(), b};
    };
    return {gather(in), gather(iz), gather(ip)};
}

namespace detail {

inline double sign_margin(const SymMatrix& a, double rank_tol) {
    const EigDecomposition eig = eigh(a);
    const double threshold = rank_tol * rank_scale(eig.eigenvalues);
    double margin = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i)
        margin = std::min(margin,
                          std::abs(std::abs(eig.eigenvalues[i]) - threshold));
    return margin;
}

/// Nondegeneracy of the restricted form: sigma_min(G)/sigma_max(G) for the
/// form Gram matrix on an orthonormal basis. Stored as the record residual;
/// the condition passes when it exceeds the threshold.
inline ConditionRecord symplecticity_record(const std::string& name,
                                            const Subspace& w,
                                            const Tolerances& tol) {
    ConditionRecord rec{name, 0.0, tol.symp_tol, false};
    if (w.dim() == 0) {
        rec.residual = 1.0;
        rec.pass = true;
        return rec;
    }
    if (w.dim() % 2 != 0) {
        rec.residual = 0.0;
        rec.pass = false;
        return rec;
    }
    const Matrix q = orthonormal_range(w.basis, tol.rank_tol);
    const Vector sv = singular_values(form_gram(q));
    rec.residual = (sv.size() == 0 || sv[0] <= 0.0)
                       ? 0.0
                       : sv[sv.size() - 1] / sv[0];
    rec.pass = rec.residual > rec.threshold;
    return rec;
}

inline ConditionRecord pairwise_orthogonality_record(const std::string& name,
                                                     const Subspace& w,
                                                     const Subspace& z,
                                                     const Tolerances& tol) {
    ConditionRecord rec{name, 0.0, kInvarianceTol, true};
    if (w.dim() == 0 || z.dim() == 0) return rec;
    const Matrix qw = orthonormal_range(w.basis, tol.rank_tol);
    const Matrix qz = orthonormal_range(z.basis, tol.rank_tol);
    rec.residual = (qw.transpose() * j_mul(qz)).norm();
    rec.pass = rec.residual <= rec.threshold;
    return rec;
}

inline ConditionRecord ja_invariance_record(const std::string& name,
                                            const SymMatrix& a,
                                            const Subspace& w,
                                            const Tolerances& tol) {
    ConditionRecord rec{name, 0.0, kInvarianceTol, true};
    if (w.dim() == 0) return rec;
    const Matrix q = orthonormal_range(w.basis, tol.rank_tol);
    const Matrix jaq = j_mul(a.mat() * q);
    const Matrix off = jaq - q * (q.transpose() * jaq);
    const double scale =
        std::max(1.0, norm(a.mat(), NormKind::Operator)) * q.norm();
    rec.residual = off.norm() / scale;
    rec.pass = rec.residual <= rec.threshold;
    return rec;
}

/// Definiteness of A restricted to W. sign = -1 demands negative definite,
/// +1 positive definite. Residual is the worst offending eigenvalue of
/// Q^T A Q (0 when none offends).
inline ConditionRecord definiteness_record(const std::string& name,
                                           const SymMatrix& a,
                                           const Subspace& w, int sign,
                                           const Tolerances& tol) {
    ConditionRecord rec{name, 0.0, 0.0, true};
    if (w.dim() == 0) return rec;
    const Matrix q = orthonormal_range(w.basis, tol.rank_tol);
    Eigen::SelfAdjointEigenSolver<Matrix> es(q.transpose() * a.mat() * q);
    const Vector ev = es.eigenvalues();
    const double threshold = tol.rank_tol * rank_scale(ev);
    rec.threshold = threshold;
    const double worst = sign < 0 ? ev.maxCoeff() : -ev.minCoeff();
    // worst must stay below -threshold for strict definiteness
    rec.residual = std::max(0.0, worst + threshold);
    rec.pass = worst < -threshold;
    return rec;
}

}  // namespace detail

/// EigSpSm membership: the sign-grouped eigenspaces must be pairwise
/// symplectically orthogonal symplectic subspaces, each invariant under JA.
/// Sign-definiteness on each eigenspace holds by construction.
inline MembershipReport check_eigsps_membership(const SymMatrix& a,
                                                const Tolerances& tol = {}) {
    MembershipReport report;
    report.matrix_class = MatrixClass::EigSpSm;
    report.inertia = inertia(a, tol.rank_tol);
    report.margin = detail::sign_margin(a, tol.rank_tol);

    const EigenspaceTriple t = eigenspace_split(a, tol.rank_tol);
    report.conditions.push_back(
        detail::symplecticity_record("(i) E- symplectic", t.neg, tol));
    report.conditions.push_back(
        detail::symplecticity_record("(i) E0 symplectic", t.zero, tol));
    report.conditions.push_back(
        detail::symplecticity_record("(i) E+ symplectic", t.pos, tol));
    report.conditions.push_back(detail::pairwise_orthogonality_record(
        "(i) E-/E0 symplectically orthogonal", t.neg, t.zero, tol));
    report.conditions.push_back(detail::pairwise_orthogonality_record(
        "(i) E-/E+ symplectically orthogonal", t.neg, t.pos, tol));
    report.conditions.push_back(detail::pairwise_orthogonality_record(
        "(i) E0/E+ symplectically orthogonal", t.zero, t.pos, tol));
    report.conditions.push_back(
        detail::ja_invariance_record("(ii) E- invariant under JA", a, t.neg, tol));
    report.conditions.push_back(
        detail::ja_invariance_record("(ii) E0 invariant under JA", a, t.zero, tol));
    report.conditions.push_back(
        detail::ja_invariance_record("(ii) E+ invariant under JA", a, t.pos, tol));
    report.conditions.push_back(ConditionRecord{
        "(iii) sign-definiteness (by construction on eigenspaces)", 0.0, 0.0,
        true});
    report.finalize();
    return report;
}

/// SpPsd membership: psd with symplectic (or trivial) kernel.
inline MembershipReport check_sppsd(const SymMatrix& a,
                                    const Tolerances& tol = {}) {
    MembershipReport report;
    report.matrix_class = MatrixClass::SpPsd;
    report.inertia = inertia(a, tol.rank_tol);
    report.margin = detail::sign_margin(a, tol.rank_tol);

    const EigDecomposition eig = eigh(a);
    const double threshold = tol.rank_tol * rank_scale(eig.eigenvalues);
    const double min_ev = eig.eigenvalues.minCoeff();
    report.conditions.push_back(ConditionRecord{
        "A positive semidefinite", std::max(0.0, -min_ev), threshold,
        min_ev >= -threshold});

    const EigenspaceTriple t = eigenspace_split(a, tol.rank_tol);
    report.conditions.push_back(
        detail::symplecticity_record("ker(A) symplectic or trivial", t.zero,
                                     tol));
    report.finalize();
    return report;
}

/// Certificate verification for the three decomposability conditions with a
/// user-supplied subspace triple.
inline MembershipReport verify_certificate(const SymMatrix& a,
                                           const Subspace& w_neg,
                                           const Subspace& w_zero,
                                           const Subspace& w_pos,
                                           const Tolerances& tol = {}) {
    MembershipReport report;
    report.matrix_class = MatrixClass::CertifiedSpSm;
    report.inertia = inertia(a, tol.rank_tol);
    report.margin = detail::sign_margin(a, tol.rank_tol);

    const bool dims_ok = w_neg.dim() == report.inertia.nu &&
                         w_zero.dim() == report.inertia.xi &&
                         w_pos.dim() == report.inertia.pi;
    report.conditions.push_back(ConditionRecord{
        "(i) dimensions match inertia (nu, xi, pi)",
        dims_ok ? 0.0 : 1.0, 0.0, dims_ok});

    report.conditions.push_back(
        detail::symplecticity_record("(i) W- symplectic", w_neg, tol));
    report.conditions.push_back(
        detail::symplecticity_record("(i) W0 symplectic", w_zero, tol));
    report.conditions.push_back(
        detail::symplecticity_record("(i) W+ symplectic", w_pos, tol));
    report.conditions.push_back(detail::pairwise_orthogonality_record(
        "(i) W-/W0 symplectically orthogonal", w_neg, w_zero, tol));
    report.conditions.push_back(detail::pairwise_orthogonality_record(
        "(i) W-/W+ symplectically orthogonal", w_neg, w_pos, tol));
    report.conditions.push_back(detail::pairwise_orthogonality_record(
        "(i) W0/W+ symplectically orthogonal", w_zero, w_pos, tol));
    report.conditions.push_back(
        detail::ja_invariance_record("(ii) W- invariant under JA", a, w_neg, tol));
    report.conditions.push_back(
        detail::ja_invariance_record("(ii) W0 invariant under JA", a, w_zero, tol));
    report.conditions.push_back(
        detail::ja_invariance_record("(ii) W+ invariant under JA", a, w_pos, tol));
    report.conditions.push_back(detail::definiteness_record(
        "(iii) A negative definite on W-", a, w_neg, -1, tol));
    report.conditions.push_back(detail::definiteness_record(
        "(iii) A positive definite on W+", a, w_pos, +1, tol));

    {
        const EigenspaceTriple t = eigenspace_split(a, tol.rank_tol);
        ConditionRecord rec{"(iii) ker(A) = W0", 0.0, kInvarianceTol, true};
        rec.residual = subspace_distance(t.zero, w_zero, tol.rank_tol);
        rec.pass = rec.residual <= rec.threshold;
        report.conditions.push_back(rec);
    }
    report.finalize();
    return report;
}

/// Projection-based certificate: the symplectic-orthogonal-projection
/// formulation of decomposability.
inline MembershipReport projection_certificate(
    const SymMatrix& a, const SymplecticOrthogonalProjection& p_neg,
    const SymplecticOrthogonalProjection& p_zero,
    const SymplecticOrthogonalProjection& p_pos, const Tolerances& tol = {}) {
    MembershipReport report;
    report.matrix_class = MatrixClass::CertifiedSpSm;
    report.inertia = inertia(a, tol.rank_tol);
    report.margin = detail::sign_margin(a, tol.rank_tol);

    const double scale = std::max(1.0, a.mat().norm());
    auto push = [&](const std::string& name, double residual) {
        report.conditions.push_back(ConditionRecord{
            name, residual, kInvarianceTol * scale,
            residual <= kInvarianceTol * scale});
    };
    const Matrix& pn = p_neg.matrix;
    const Matrix& pz = p_zero.matrix;
    const Matrix& pp = p_pos.matrix;
    push("(i) Pi- Pi0 = 0", (pn * pz).norm());
    push("(i) Pi- Pi+ = 0", (pn * pp).norm());
    push("(i) Pi0 Pi+ = 0", (pz * pp).norm());
    push("(i) Pi- + Pi0 + Pi+ = I",
         (pn + pz + pp - Matrix::Identity(pn.rows(), pn.cols())).norm());
    push("idempotence Pi-^2 = Pi-", (pn * pn - pn).norm());
    push("idempotence Pi0^2 = Pi0", (pz * pz - pz).norm());
    push("idempotence Pi+^2 = Pi+", (pp * pp - pp).norm());
    push("(ii) A = Pi-^T A Pi- + Pi+^T A Pi+",
         (a.mat() - pn.transpose() * a.mat() * pn -
          pp.transpose() * a.mat() * pp)
             .norm());
    report.conditions.push_back(detail::definiteness_record(
        "(iii) Pi-^T A Pi- negative definite on ran(Pi-)",
        SymMatrix(pn.transpose() * a.mat() * pn), p_neg.range, -1, tol));
    report.conditions.push_back(detail::definiteness_record(
        "(iii) Pi+^T A Pi+ positive definite on ran(Pi+)",
        SymMatrix(pp.transpose() * a.mat() * pp), p_pos.range, +1, tol));
    report.finalize();
    return report;
}

}  // namespace sympeig

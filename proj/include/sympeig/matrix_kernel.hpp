#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "sympeig/config.hpp"

namespace sympeig {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Dense real symmetric matrix of even dimension 2n.
/// Entries are symmetrized exactly on construction.
class SymMatrix {
public:
    explicit SymMatrix(const Matrix& raw) {
        if (raw.rows() != raw.cols())
            throw DimensionError("SymMatrix: input is not square");
        if (raw.rows() % 2 != 0)
            throw DimensionError("SymMatrix: dimension must be even");
        m_ = 0.5 * (raw + raw.transpose());
    }

    const Matrix& mat() const { return m_; }
    Eigen::Index dim() const { return m_.rows(); }
    Eigen::Index half() const { return m_.rows() / 2; }

private:
    Matrix m_;
};

struct EigDecomposition {
    Vector eigenvalues;  // ascending
    Matrix vectors;      // orthogonal, column i paired with eigenvalue i
};

struct InertiaSignature {
    Eigen::Index nu = 0;   // negative eigenvalues
    Eigen::Index xi = 0;   // zero eigenvalues
    Eigen::Index pi = 0;   // positive eigenvalues

    bool operator==(const InertiaSignature&) const = default;
};

/// C = posPart - negPart with posPart * negPart = 0 and
/// absPart = posPart + negPart.
struct SpectralSplit {
    SymMatrix neg_part;
    SymMatrix pos_part;
    SymMatrix abs_part;
};

enum class NormKind { Operator, Frobenius, Trace };

inline const char* norm_name(NormKind k) {
    switch (k) {
        case NormKind::Operator: return "op";
        case NormKind::Frobenius: return "fro";
        case NormKind::Trace: return "trace";
    }
    return "?";
}

/// Symmetric eigendecomposition, eigenvalues ascending.
inline EigDecomposition eigh(const SymMatrix& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a.mat());
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("eigh: eigensolver did not converge",
                               a.mat().norm());
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

/// Scale used by every rank decision: max(1, spectral radius).
inline double rank_scale(const Vector& eigenvalues) {
    const double radius =
        eigenvalues.size() == 0 ? 0.0 : eigenvalues.cwiseAbs().maxCoeff();
    return std::max(1.0, radius);
}

inline InertiaSignature inertia(const SymMatrix& a, double rank_tol = 1e-9) {
    const EigDecomposition eig = eigh(a);
    const double threshold = rank_tol * rank_scale(eig.eigenvalues);
    InertiaSignature sig;
    for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
        const double ev = eig.eigenvalues[i];
        if (ev < -threshold)
            ++sig.nu;
        else if (ev > threshold)
            ++sig.pi;
        else
            ++sig.xi;
    }
    return sig;
}

/// Positive semidefinite square root. Eigenvalues in [-rank_tol*s, 0) are
/// clipped to 0 so nearly-psd inputs from upstream arithmetic are accepted;
/// anything below that is a hard rejection.
inline SymMatrix psd_sqrt(const SymMatrix& b, double rank_tol = 1e-9) {
    const EigDecomposition eig = eigh(b);
    const double threshold = rank_tol * rank_scale(eig.eigenvalues);
    Vector roots(eig.eigenvalues.size());
    for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
        const double ev = eig.eigenvalues[i];
        if (ev < -threshold) {
            throw NotPsdError("psd_sqrt: matrix has eigenvalue " +
                                  std::to_string(ev) + " below -rank_tol*scale",
                              ev);
        }
        roots[i] = std::sqrt(std::max(ev, 0.0));
    }
    return SymMatrix(eig.vectors * roots.asDiagonal() *
                     eig.vectors.transpose());
}

/// Positive/negative part split from a single spectral decomposition, so
/// that rank(C) = rank(pos) + rank(neg) holds at one shared tolerance.
inline SpectralSplit spectral_split(const SymMatrix& c,
                                    double rank_tol = 1e-9) {
    const EigDecomposition eig = eigh(c);
    const double threshold = rank_tol * rank_scale(eig.eigenvalues);
    Vector pos = Vector::Zero(eig.eigenvalues.size());
    Vector neg = Vector::Zero(eig.eigenvalues.size());
    for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
        const double ev = eig.eigenvalues[i];
        if (ev > threshold)
            pos[i] = ev;
        else if (ev < -threshold)
            neg[i] = -ev;
    }
    const Matrix& v = eig.vectors;
    SymMatrix pos_part(v * pos.asDiagonal() * v.transpose());
    SymMatrix neg_part(v * neg.asDiagonal() * v.transpose());
    SymMatrix abs_part(pos_part.mat() + neg_part.mat());
    return {std::move(neg_part), std::move(pos_part), std::move(abs_part)};
}

inline Vector singular_values(const Matrix& x) {
    return Eigen::JacobiSVD<Matrix>(x).singularValues();
}

inline double norm(const Matrix& x, NormKind kind) {
    switch (kind) {
        case NormKind::Frobenius:
            return x.norm();
        case NormKind::Operator: {
            const Vector sv = singular_values(x);
            return sv.size() == 0 ? 0.0 : sv[0];
        }
        case NormKind::Trace:
            return singular_values(x).sum();
    }
    return 0.0;
}

}  // namespace sympeig

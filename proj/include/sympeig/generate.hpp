#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "sympeig/classify.hpp"
#include "sympeig/config.hpp"
#include "sympeig/matrix_kernel.hpp"
#include "sympeig/prng.hpp"
#include "sympeig/symplectic.hpp"

namespace sympeig {

struct GeneratorSpec {
    Eigen::Index n = 1;
    InertiaSignature signature;             // entries even, summing to 2n
    std::optional<std::vector<double>> spectrum;  // prescribed d values
    std::uint64_t seed = 0;
    double conditioning = 1.0;
};

struct GeneratedInstance {
    SymMatrix a;
    Vector truth_d;  // ascending
    EigenspaceTriple certificate;
};

namespace detail {

inline Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols,
                              SplitMix64& rng) {
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.next_normal();
    return m;
}

}  // namespace detail

/// Random orthosymplectic matrix: the real embedding [[X, -Y], [Y, X]] of a
/// random n x n unitary X + iY obtained by orthonormalizing a Gaussian
/// complex matrix. Always has determinant +1.
inline SymplecticFrame random_orthosymplectic(Eigen::Index n,
                                              std::uint64_t seed) {
    SplitMix64 rng(seed);
    const Matrix re = detail::gaussian_matrix(n, n, rng);
    const Matrix im = detail::gaussian_matrix(n, n, rng);
    Eigen::MatrixXcd z(n, n);
    z.real() = re;
    z.imag() = im;
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    // fix the phase freedom so the result is a deterministic function of z
    const Eigen::MatrixXcd r =
        qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < n; ++j) {
        const std::complex<double> d = r(j, j);
        const double mag = std::abs(d);
        if (mag > 0.0) q.col(j) *= d / mag;
    }
    Matrix u(2 * n, 2 * n);
    u.topLeftCorner(n, n) = q.real();
    u.topRightCorner(n, n) = -q.imag();
    u.bottomLeftCorner(n, n) = q.imag();
    u.bottomRightCorner(n, n) = q.real();
    return make_frame(n, u, 1e-10);
}

/// A = U (diag(d) (+) diag(d)) U^T for random orthosymplectic U.
/// The orthosymplectic congruence keeps eigenspaces symplectic and
/// JA-invariant, so membership holds by construction; the certificate is
/// the U-image of the coordinate pair-spans.
inline GeneratedInstance gen_eigsps(const GeneratorSpec& spec) {
    const Eigen::Index n = spec.n;
    const InertiaSignature& sig = spec.signature;
    if (sig.nu % 2 != 0 || sig.xi % 2 != 0 || sig.pi % 2 != 0 ||
        sig.nu + sig.xi + sig.pi != 2 * n)
        throw DimensionError(
            "gen_eigsps: signature entries must be even and sum to 2n");

    SplitMix64 rng(spec.seed ^ 0xA5A5A5A5A5A5A5A5ULL);
    Vector d(n);
    if (spec.spectrum) {
        if (static_cast<Eigen::Index>(spec.spectrum->size()) != n)
            throw DimensionError("gen_eigsps: prescribed spectrum length != n");
        Eigen::Index neg = 0, zero = 0, pos = 0;
        for (Eigen::Index i = 0; i < n; ++i) {
            d[i] = (*spec.spectrum)[static_cast<std::size_t>(i)];
            if (d[i] < 0)
                ++neg;
            else if (d[i] > 0)
                ++pos;
            else
                ++zero;
        }
        if (2 * neg != sig.nu || 2 * zero != sig.xi || 2 * pos != sig.pi)
            throw DimensionError(
                "gen_eigsps: spectrum signs inconsistent with signature");
    } else {
        const double spread = std::max(1.0, spec.conditioning);
        Eigen::Index idx = 0;
        for (Eigen::Index i = 0; i < sig.nu / 2; ++i)
            d[idx++] = -(0.5 + spread * rng.next_uniform());
        for (Eigen::Index i = 0; i < sig.xi / 2; ++i) d[idx++] = 0.0;
        for (Eigen::Index i = 0; i < sig.pi / 2; ++i)
            d[idx++] = 0.5 + spread * rng.next_uniform();
    }

    const SymplecticFrame u = random_orthosymplectic(n, spec.seed);
    Matrix dd = Matrix::Zero(2 * n, 2 * n);
    dd.diagonal().head(n) = d;
    dd.diagonal().tail(n) = d;
    SymMatrix a(Matrix(u.cols * dd * u.cols.transpose()));

    auto span_for = [&](auto pred) {
        std::vector<Eigen::Index> idx;
        for (Eigen::Index i = 0; i < n; ++i)
            if (pred(d[i])) idx.push_back(i);
        Matrix basis(2 * n, 2 * static_cast<Eigen::Index>(idx.size()));
        for (std::size_t j = 0; j < idx.size(); ++j) {
            basis.col(static_cast<Eigen::Index>(2 * j)) = u.cols.col(idx[j]);
            basis.col(static_cast<Eigen::Index>(2 * j + 1)) =
                u.cols.col(n + idx[j]);
        }
        return Subspace{2 * n, basis};
    };
    EigenspaceTriple cert{span_for([](double v) { return v < 0; }),
                          span_for([](double v) { return v == 0; }),
                          span_for([](double v) { return v > 0; })};

    std::sort(d.data(), d.data() + d.size());
    return {std::move(a), std::move(d), std::move(cert)};
}

/// Well-conditioned positive definite matrix S^T S + delta I.
inline SymMatrix gen_pd(Eigen::Index n, std::uint64_t seed,
                        double conditioning = 1.0) {
    SplitMix64 rng(seed ^ 0x5EEDC0FFEE123456ULL);
    const Matrix s = detail::gaussian_matrix(2 * n, 2 * n, rng);
    const double delta = 1.0 / std::max(1.0, conditioning);
    return SymMatrix(Matrix(s.transpose() * s +
                            delta * Matrix::Identity(2 * n, 2 * n)));
}

/// Positive semidefinite matrix of the given even rank with symplectic
/// kernel.
inline SymMatrix gen_sppsd(Eigen::Index n, Eigen::Index rank_2k,
                           std::uint64_t seed) {
    if (rank_2k % 2 != 0 || rank_2k < 0 || rank_2k > 2 * n)
        throw DimensionError("gen_sppsd: rank must be even and <= 2n");
    GeneratorSpec spec;
    spec.n = n;
    spec.signature = {0, 2 * n - rank_2k, rank_2k};
    spec.seed = seed;
    return gen_eigsps(spec).a;
}

/// A + eps * E with E random symmetric of unit Frobenius norm.
inline SymMatrix perturb(const SymMatrix& a, double eps, std::uint64_t seed) {
    SplitMix64 rng(seed ^ 0x0DDBA11FACADE000ULL);
    Matrix e = detail::gaussian_matrix(a.dim(), a.dim(), rng);
    e = 0.5 * (e + e.transpose()).eval();
    const double norm_e = e.norm();
    if (norm_e > 0.0) e /= norm_e;
    return SymMatrix(Matrix(a.mat() + eps * e));
}

}  // namespace sympeig

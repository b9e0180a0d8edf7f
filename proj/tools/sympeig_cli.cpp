// Command line front end: decomposition, classification, spectra,
// perturbation bounds, and seeded instance generation over the text
// matrix format.
//
// Exit codes: 0 success, 1 class-membership rejection, 2 I/O or parse
// error, 3 numerical failure.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "sympeig/sympeig.hpp"

namespace {

using namespace sympeig;

constexpr int kExitOk = 0;
constexpr int kExitMembership = 1;
constexpr int kExitIo = 2;
constexpr int kExitNumerical = 3;

struct CommonOpts {
    Tolerances tol;
    std::string format = "human";
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--rank-tol", opts.tol.rank_tol,
                    "Relative eigenvalue threshold for rank decisions");
    cmd->add_option("--symp-tol", opts.tol.symp_tol,
                    "Frame validity threshold on ||M^T J M - J||_F");
    cmd->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"human", "csv"}));
}

SymMatrix load_symmetric(const std::string& path) {
    const Matrix raw = read_matrix(path);
    if (raw.rows() != raw.cols() || raw.rows() % 2 != 0)
        throw ParseError("input must be square with even dimension", 0);
    const double asym = max_asymmetry(raw);
    if (asym > 0.0)
        std::cerr << "note: input symmetrized, max asymmetry " << asym << "\n";
    return SymMatrix(raw);
}

void print_spectrum(const Vector& d, const std::string& format,
                    const char* csv_value_column) {
    if (format == "csv") {
        std::printf("i,%s\n", csv_value_column);
        for (Eigen::Index i = 0; i < d.size(); ++i)
            std::printf("%lld,%s\n", static_cast<long long>(i + 1),
                        format_double(d[i]).c_str());
    } else {
        std::printf("D:");
        for (Eigen::Index i = 0; i < d.size(); ++i)
            std::printf(" %s", format_double(d[i]).c_str());
        std::printf("\n");
    }
}

void print_report(const MembershipReport& report, const std::string& format) {
    if (format == "csv") {
        std::printf("class,verdict,condition,residual,threshold,pass\n");
        for (const auto& c : report.conditions)
            std::printf("%s,%s,\"%s\",%s,%s,%s\n",
                        class_name(report.matrix_class),
                        report.verdict ? "true" : "false", c.name.c_str(),
                        format_double(c.residual).c_str(),
                        format_double(c.threshold).c_str(),
                        c.pass ? "true" : "false");
    } else {
        std::printf("class: %s\nverdict: %s\n", class_name(report.matrix_class),
                    report.verdict ? "yes" : "no");
        for (const auto& c : report.conditions)
            std::printf("  [%s] %s (residual %.3e, threshold %.3e)\n",
                        c.pass ? "pass" : "FAIL", c.name.c_str(), c.residual,
                        c.threshold);
        std::fprintf(stderr, "inertia: nu=%lld xi=%lld pi=%lld, margin %.3e\n",
                     static_cast<long long>(report.inertia.nu),
                     static_cast<long long>(report.inertia.xi),
                     static_cast<long long>(report.inertia.pi), report.margin);
    }
}

void print_bound(const PerturbationReport& rep, const std::string& format) {
    if (format == "csv") {
        std::printf("norm_kind,lhs,rhs,term_pos,term_neg,pass\n");
        std::printf("%s,%s,%s,%s,%s,%s\n", norm_name(rep.norm_kind),
                    format_double(rep.lhs).c_str(),
                    format_double(rep.rhs).c_str(),
                    format_double(rep.term_pos).c_str(),
                    format_double(rep.term_neg).c_str(),
                    rep.pass ? "true" : "false");
    } else {
        std::printf("norm %s: lhs %s <= rhs %s : %s\n",
                    norm_name(rep.norm_kind), format_double(rep.lhs).c_str(),
                    format_double(rep.rhs).c_str(),
                    rep.pass ? "pass" : "VIOLATION");
    }
}

int run_decompose(const std::string& path, const CommonOpts& opts,
                  const std::optional<std::string>& out_m) {
    const SymMatrix a = load_symmetric(path);
    WilliamsonDecomposition dec = [&] {
        const EigDecomposition eig = eigh(a);
        const double thr = opts.tol.rank_tol * rank_scale(eig.eigenvalues);
        if (eig.eigenvalues.minCoeff() > thr)
            return williamson_pd(a, opts.tol);
        return williamson_eigsps(a, opts.tol);
    }();
    print_spectrum(dec.d, opts.format, "d");
    const double res = decomposition_residual(a, dec);
    const Vector sv = singular_values(dec.m.cols);
    std::fprintf(stderr,
                 "residuals: ||M^T A M - D(+)D|| = %.3e, "
                 "||M^T J M - J|| = %.3e, cond(M) = %.3e\n",
                 res, dec.m.symplectic_residual(),
                 sv[0] / sv[sv.size() - 1]);
    if (out_m) write_matrix(*out_m, dec.m.cols);
    return kExitOk;
}

int run_classify(const std::string& path, const CommonOpts& opts) {
    const SymMatrix a = load_symmetric(path);
    const MembershipReport eig_report = check_eigsps_membership(a, opts.tol);
    const MembershipReport psd_report = check_sppsd(a, opts.tol);

    if (eig_report.verdict) {
        MembershipReport best = eig_report;
        if (psd_report.verdict) {
            best.matrix_class = eig_report.inertia.nu == 0 &&
                                        eig_report.inertia.xi == 0
                                    ? MatrixClass::Pd
                                    : MatrixClass::SpPsd;
        }
        print_report(best, opts.format);
        return kExitOk;
    }
    print_report(eig_report, opts.format);
    const ConditionRecord* fail = eig_report.first_failure();
    std::fprintf(stderr,
                 "EigSpSm: no (%s); SpSm: undetermined without certificate\n",
                 fail ? fail->name.c_str() : "unknown condition");
    return kExitMembership;
}

std::vector<double> parse_doubles(const std::vector<std::string>& items) {
    std::vector<double> out;
    for (const std::string& s : items) out.push_back(std::stod(s));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Williamson-type symplectic diagonalization toolkit"};
    app.require_subcommand(1);

    CommonOpts opts;

    // decompose
    std::string in_path, in_path_b;
    std::optional<std::string> out_m;
    auto* decompose = app.add_subcommand(
        "decompose", "Williamson decomposition (auto pd / eigenspace path)");
    decompose->add_option("file", in_path)->required();
    decompose->add_option("--out-m", out_m, "Write M to this path");
    add_common(decompose, opts);

    auto* spectrum =
        app.add_subcommand("spectrum", "Symplectic eigenvalues only");
    spectrum->add_option("file", in_path)->required();
    add_common(spectrum, opts);

    auto* classify = app.add_subcommand("classify", "Class membership report");
    classify->add_option("file", in_path)->required();
    add_common(classify, opts);

    auto* dhat = app.add_subcommand(
        "dhat", "Paired diagonal d_hat (defined on all symmetric input)");
    dhat->add_option("file", in_path)->required();
    add_common(dhat, opts);

    std::string norm_kind = "op";
    auto* bound =
        app.add_subcommand("bound", "Perturbation bound on d_hat for a pair");
    bound->add_option("fileA", in_path)->required();
    bound->add_option("fileB", in_path_b)->required();
    bound->add_option("--norm", norm_kind)
        ->check(CLI::IsMember({"op", "fro", "trace"}));
    add_common(bound, opts);

    std::vector<std::string> eps_items;
    std::uint64_t seed = 0;
    auto* sweep_cmd =
        app.add_subcommand("sweep", "Bound tightness sweep, CSV output");
    sweep_cmd->add_option("file", in_path)->required();
    sweep_cmd->add_option("--eps", eps_items, "Epsilon values")->required();
    sweep_cmd->add_option("--seed", seed, "Seed for the direction matrix");
    add_common(sweep_cmd, opts);

    std::string gen_class = "pd";
    Eigen::Index gen_n = 1;
    Eigen::Index gen_rank = -1;
    std::vector<std::string> sig_items, spec_items;
    std::optional<std::string> gen_out;
    auto* gen = app.add_subcommand("gen", "Seeded instance generation");
    gen->add_option("--class", gen_class)
        ->check(CLI::IsMember({"pd", "sppsd", "eigsps"}))
        ->required();
    gen->add_option("--n", gen_n)->required();
    gen->add_option("--seed", seed)->required();
    gen->add_option("--signature", sig_items, "nu,xi,pi (eigsps)");
    gen->add_option("--spectrum", spec_items, "Prescribed d values (eigsps)");
    gen->add_option("--rank", gen_rank, "Even rank (sppsd)");
    gen->add_option("--out", gen_out, "Write to file instead of stdout");
    add_common(gen, opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (decompose->parsed()) return run_decompose(in_path, opts, out_m);
        if (spectrum->parsed()) {
            const SymMatrix a = load_symmetric(in_path);
            print_spectrum(symplectic_spectrum_eigsps(a, opts.tol).values,
                           opts.format, "d");
            return kExitOk;
        }
        if (classify->parsed()) return run_classify(in_path, opts);
        if (dhat->parsed()) {
            const SymMatrix a = load_symmetric(in_path);
            print_spectrum(d_hat(a, opts.tol).values, opts.format, "dhat");
            return kExitOk;
        }
        if (bound->parsed()) {
            const SymMatrix a = load_symmetric(in_path);
            const SymMatrix b = load_symmetric(in_path_b);
            const PerturbationReport rep =
                norm_kind == "op"    ? bound_operator(a, b, opts.tol)
                : norm_kind == "fro" ? bound_frobenius(a, b, opts.tol)
                                     : bound_main(a, b, NormKind::Trace,
                                                  opts.tol);
            print_bound(rep, opts.format);
            return kExitOk;
        }
        if (sweep_cmd->parsed()) {
            const SymMatrix a = load_symmetric(in_path);
            const SymMatrix zero(
                Matrix(Matrix::Zero(a.dim(), a.dim())));
            const SymMatrix direction = perturb(zero, 1.0, seed);
            const auto rows =
                sweep(a, direction, parse_doubles(eps_items), opts.tol);
            std::printf("epsilon,norm_kind,lhs,rhs,ratio\n");
            for (const auto& r : rows)
                std::printf("%s,%s,%s,%s,%s\n",
                            format_double(r.epsilon).c_str(),
                            norm_name(r.norm_kind),
                            format_double(r.lhs).c_str(),
                            format_double(r.rhs).c_str(),
                            format_double(r.ratio).c_str());
            return kExitOk;
        }
        if (gen->parsed()) {
            Matrix out;
            if (gen_class == "pd") {
                out = gen_pd(gen_n, seed).mat();
            } else if (gen_class == "sppsd") {
                if (gen_rank < 0) gen_rank = 2 * gen_n;
                out = gen_sppsd(gen_n, gen_rank, seed).mat();
            } else {
                GeneratorSpec spec;
                spec.n = gen_n;
                spec.seed = seed;
                if (!sig_items.empty()) {
                    const auto sig = parse_doubles(sig_items);
                    if (sig.size() != 3)
                        throw ParseError("--signature needs nu,xi,pi", 0);
                    spec.signature = {static_cast<Eigen::Index>(sig[0]),
                                      static_cast<Eigen::Index>(sig[1]),
                                      static_cast<Eigen::Index>(sig[2])};
                } else {
                    spec.signature = {0, 0, 2 * gen_n};
                }
                if (!spec_items.empty())
                    spec.spectrum = parse_doubles(spec_items);
                out = gen_eigsps(spec).a.mat();
            }
            if (gen_out)
                write_matrix(*gen_out, out);
            else
                write_matrix_stream(std::cout, out);
            return kExitOk;
        }
    } catch (const MembershipError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitMembership;
    } catch (const NotPsdError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitMembership;
    } catch (const ParseError& e) {
        std::fprintf(stderr, "error (line %d, col %d): %s\n", e.line, e.column,
                     e.what());
        return kExitIo;
    } catch (const DimensionError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    } catch (const Error& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitNumerical;
    }
    return kExitOk;
}

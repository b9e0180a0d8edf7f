#pragma once

#include <stdexcept>
#include <string>

namespace sympeig {

/// Numerical tolerances threaded through every constructor and check.
///
/// rank_tol: an eigenvalue counts as zero iff |lambda| <= rank_tol * max(1, lambda_max_abs).
/// symp_tol: frame validity threshold on ||M^T J M - J||_F.
struct Tolerances {
    double rank_tol = 1e-9;
    double symp_tol = 1e-8;
};

// Error hierarchy. Every precondition violation is a typed, recoverable
// rejection carrying the measured residual.

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
    using Error::Error;
};

struct NotPsdError : Error {
    double offending_eigenvalue;
    NotPsdError(const std::string& msg, double ev)
        : Error(msg), offending_eigenvalue(ev) {}
};

struct NotSymplecticError : Error {
    double residual;
    NotSymplecticError(const std::string& msg, double res)
        : Error(msg), residual(res) {}
};

struct MembershipError : Error {
    std::string condition;
    double residual;
    MembershipError(const std::string& msg, std::string cond, double res)
        : Error(msg), condition(std::move(cond)), residual(res) {}
};

struct ConvergenceError : Error {
    double residual;
    ConvergenceError(const std::string& msg, double res)
        : Error(msg), residual(res) {}
};

struct NumericalError : Error {
    using Error::Error;
};

struct ParseError : Error {
    int line;
    int column;
    ParseError(const std::string& msg, int ln, int col = 0)
        : Error(msg), line(ln), column(col) {}
};

}  // namespace sympeig

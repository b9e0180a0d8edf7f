#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "sympeig/config.hpp"
#include "sympeig/matrix_kernel.hpp"

namespace sympeig {

// Matrix text format: line 1 is "rows cols", then `rows` lines of `cols`
// whitespace-separated decimal reals. Lines starting with '#' are ignored.
// Floats are emitted with 17 significant digits so write->read round trips
// are bit-exact.

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline Matrix read_matrix_stream(std::istream& in) {
    std::string line;
    int line_no = 0;
    auto next_data_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            std::size_t first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos) continue;
            if (line[first] == '#') continue;
            return true;
        }
        return false;
    };

    if (!next_data_line())
        throw ParseError("read_matrix: missing header line", line_no);
    Eigen::Index rows = 0, cols = 0;
    {
        std::istringstream hs(line);
        if (!(hs >> rows >> cols) || rows <= 0 || cols <= 0)
            throw ParseError("read_matrix: bad header, expected 'rows cols'",
                             line_no);
        std::string extra;
        if (hs >> extra)
            throw ParseError("read_matrix: trailing content after header",
                             line_no);
    }

    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        if (!next_data_line())
            throw ParseError("read_matrix: expected " + std::to_string(rows) +
                                 " data rows, got " + std::to_string(r),
                             line_no);
        std::istringstream rs(line);
        for (Eigen::Index c = 0; c < cols; ++c) {
            double v;
            if (!(rs >> v))
                throw ParseError("read_matrix: expected " +
                                     std::to_string(cols) + " values on row",
                                 line_no, static_cast<int>(c) + 1);
            if (!std::isfinite(v))
                throw ParseError("read_matrix: non-finite entry", line_no,
                                 static_cast<int>(c) + 1);
            m(r, c) = v;
        }
        std::string extra;
        if (rs >> extra)
            throw ParseError("read_matrix: too many values on row", line_no,
                             static_cast<int>(cols) + 1);
    }
    return m;
}

inline Matrix read_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("read_matrix: cannot open '" + path + "'", 0);
    return read_matrix_stream(in);
}

inline void write_matrix_stream(std::ostream& out, const Matrix& m) {
    out << m.rows() << ' ' << m.cols() << '\n';
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c) out << ' ';
            out << format_double(m(r, c));
        }
        out << '\n';
    }
}

inline void write_matrix(const std::string& path, const Matrix& m) {
    std::ofstream out(path);
    if (!out)
        throw ParseError("write_matrix: cannot open '" + path + "'", 0);
    write_matrix_stream(out, m);
}

/// Max |A - A^T| entry, reported when symmetrizing a parsed input.
inline double max_asymmetry(const Matrix& m) {
    return (m - m.transpose()).cwiseAbs().maxCoeff();
}

}  // namespace sympeig

#include "peri_couple/matrix_io.hpp"

#include "peri_couple/error.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace peri_couple {

std::string format_number(double value) {
    // snprintf only honours LC_NUMERIC, which the library never changes.
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", value);
    return buf;
}

void write_dense(std::ostream& out, const DenseMatrix& A) {
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < A.cols(); ++j) {
            if (j > 0) {
                out << ' ';
            }
            out << format_number(A(i, j));
        }
        out << '\n';
    }
}

DenseMatrix read_dense(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::vector<double> r;
        double v = 0.0;
        while (ls >> v) {
            r.push_back(v);
        }
        if (!r.empty()) {
            rows.push_back(std::move(r));
        }
    }
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    DenseMatrix A(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) {
            throw Error(ErrorCode::invalid_config, "ragged dense matrix at row " + std::to_string(i + 1));
        }
        for (std::size_t j = 0; j < cols; ++j) {
            A(i, j) = rows[i][j];
        }
    }
    return A;
}

void write_triplets(std::ostream& out, const DenseMatrix& A) {
    std::size_t nnz = 0;
    for (std::size_t i = 0; i < A.rows(); ++i) {
        nnz += A.row_nonzeros(i);
    }
    out << A.rows() << ' ' << A.cols() << ' ' << nnz << '\n';
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < A.cols(); ++j) {
            if (A(i, j) != 0.0) {
                out << i + 1 << ' ' << j + 1 << ' ' << format_number(A(i, j)) << '\n';
            }
        }
    }
}

DenseMatrix read_triplets(std::istream& in) {
    std::size_t rows = 0, cols = 0, nnz = 0;
    if (!(in >> rows >> cols >> nnz)) {
        throw Error(ErrorCode::invalid_config, "missing triplet header");
    }
    DenseMatrix A(rows, cols);
    for (std::size_t e = 0; e < nnz; ++e) {
        std::size_t i = 0, j = 0;
        double v = 0.0;
        if (!(in >> i >> j >> v) || i < 1 || j < 1 || i > rows || j > cols) {
            throw Error(ErrorCode::invalid_config, "bad triplet entry " + std::to_string(e + 1));
        }
        A(i - 1, j - 1) = v;
    }
    return A;
}

} // namespace peri_couple

// Serial kernels. The parallel versions in dense_linalg.cpp must agree with
// these; the unit tests and the benchmark compare the two.
#include "peri_couple/dense_linalg.hpp"

#include "peri_couple/error.hpp"

namespace peri_couple {

namespace detail {
std::size_t select_pivot(LuFactorization& f, std::size_t k);
LuFactorization start_factorization(const DenseMatrix& A);
} // namespace detail

namespace reference {

LuFactorization lu_factor(const DenseMatrix& A) {
    LuFactorization f = detail::start_factorization(A);
    DenseMatrix& lu = f.lu;
    const std::size_t n = lu.rows();
    for (std::size_t k = 0; k < n; ++k) {
        detail::select_pivot(f, k);
        const double pivot = lu(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double l = lu(i, k) / pivot;
            lu(i, k) = l;
            for (std::size_t j = k + 1; j < n; ++j) {
                lu(i, j) -= l * lu(k, j);
            }
        }
    }
    return f;
}

std::vector<double> multiply(const DenseMatrix& A, std::span<const double> x) {
    std::vector<double> y(A.rows(), 0.0);
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < A.cols(); ++j) {
            y[i] += A(i, j) * x[j];
        }
    }
    return y;
}

std::vector<double> multiply_transposed(const DenseMatrix& A, std::span<const double> x) {
    std::vector<double> y(A.cols(), 0.0);
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < A.cols(); ++j) {
            y[j] += A(i, j) * x[i];
        }
    }
    return y;
}

} // namespace reference
} // namespace peri_couple

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace peri_couple {

/// Row-major dense matrix.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double value = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, value) {}

    static DenseMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }

    std::span<const double> data() const noexcept { return data_; }

    /// max_i sum_j |a_ij|
    double norm_inf() const noexcept;
    std::size_t row_nonzeros(std::size_t i) const noexcept;

    bool operator==(const DenseMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// y = A x, rows distributed across OpenMP threads.
std::vector<double> multiply(const DenseMatrix& A, std::span<const double> x);
/// y = A^T x
std::vector<double> multiply_transposed(const DenseMatrix& A, std::span<const double> x);

double norm_inf(std::span<const double> v) noexcept;
double norm_2(std::span<const double> v) noexcept;

/// P A = L U with unit-lower L and U packed into one matrix.
struct LuFactorization {
    DenseMatrix lu;
    std::vector<std::size_t> perm; ///< row i of P A is row perm[i] of A
    double norm_inf_a = 0.0;

    std::size_t size() const noexcept { return lu.rows(); }

    /// Solves A x = b.
    std::vector<double> solve(std::span<const double> b) const;
    /// Solves A^T x = b.
    std::vector<double> solve_transposed(std::span<const double> b) const;
};

/// Partial-pivoting LU; the trailing row updates run in parallel.
/// Throws Error{singular_matrix} if a pivot falls below 1e-14 ||A||_inf.
LuFactorization lu_factor(const DenseMatrix& A);

/// Solves A x = b; the residual satisfies
/// ||A x - b||_inf <= 1e-10 (||A||_inf ||x||_inf + ||b||_inf) in practice.
std::vector<double> lu_solve(const DenseMatrix& A, std::span<const double> b);

struct ConditionEstimate {
    double value = 0.0;
    double sigma_max = 0.0;
    double sigma_min = 0.0;
    bool converged = false;
    int iterations = 0;
};

struct ConditionOptions {
    int max_iterations = 10000;
    double tolerance = 1e-6;
    std::uint64_t seed = 0x5eed;
};

/// Spectral condition number sigma_max / sigma_min from power iteration on
/// A^T A and inverse iteration through the LU factors. A run that hits the
/// iteration cap returns its best estimate with converged = false. Each
/// iteration stops once ||B v - rho v|| <= tolerance |rho|.
ConditionEstimate condition_number_2(const DenseMatrix& A, const ConditionOptions& options = {});

/// Serial kernels kept as the reference for the parallel ones.
namespace reference {

LuFactorization lu_factor(const DenseMatrix& A);
std::vector<double> multiply(const DenseMatrix& A, std::span<const double> x);
std::vector<double> multiply_transposed(const DenseMatrix& A, std::span<const double> x);

} // namespace reference

} // namespace peri_couple

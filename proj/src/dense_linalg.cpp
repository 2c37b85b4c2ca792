#include "peri_couple/dense_linalg.hpp"

#include "peri_couple/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <utility>

namespace peri_couple {

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix I(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        I(i, i) = 1.0;
    }
    return I;
}

double DenseMatrix::norm_inf() const noexcept {
    double best = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (double v : row(i)) {
            s += std::abs(v);
        }
        best = std::max(best, s);
    }
    return best;
}

std::size_t DenseMatrix::row_nonzeros(std::size_t i) const noexcept {
    const auto r = row(i);
    return static_cast<std::size_t>(std::count_if(r.begin(), r.end(), [](double v) { return v != 0.0; }));
}

std::vector<double> multiply(const DenseMatrix& A, std::span<const double> x) {
    const auto rows = static_cast<std::ptrdiff_t>(A.rows());
    const std::size_t cols = A.cols();
    std::vector<double> y(A.rows(), 0.0);
#pragma omp parallel for schedule(static) if (rows > 256)
    for (std::ptrdiff_t i = 0; i < rows; ++i) {
        const double* a = A.row(static_cast<std::size_t>(i)).data();
        double s = 0.0;
        for (std::size_t j = 0; j < cols; ++j) {
            s += a[j] * x[j];
        }
        y[static_cast<std::size_t>(i)] = s;
    }
    return y;
}

std::vector<double> multiply_transposed(const DenseMatrix& A, std::span<const double> x) {
    const std::size_t rows = A.rows();
    const auto cols = static_cast<std::ptrdiff_t>(A.cols());
    std::vector<double> y(A.cols(), 0.0);
#pragma omp parallel for schedule(static) if (cols > 256)
    for (std::ptrdiff_t j = 0; j < cols; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < rows; ++i) {
            s += A(i, static_cast<std::size_t>(j)) * x[i];
        }
        y[static_cast<std::size_t>(j)] = s;
    }
    return y;
}

double norm_inf(std::span<const double> v) noexcept {
    double best = 0.0;
    for (double x : v) {
        best = std::max(best, std::abs(x));
    }
    return best;
}

double norm_2(std::span<const double> v) noexcept {
    return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

namespace detail {

// Shared by the serial and parallel factorizations: pivot search and row swap.
std::size_t select_pivot(LuFactorization& f, std::size_t k) {
    DenseMatrix& lu = f.lu;
    const std::size_t n = lu.rows();
    std::size_t p = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
        const double v = std::abs(lu(i, k));
        if (v > best) {
            best = v;
            p = i;
        }
    }
    if (!(best >= 1e-14 * f.norm_inf_a) || best == 0.0) {
        std::ostringstream msg;
        msg << "pivot " << best << " in column " << k << " below 1e-14 * ||A||_inf = "
            << 1e-14 * f.norm_inf_a;
        throw Error(ErrorCode::singular_matrix, msg.str());
    }
    if (p != k) {
        std::swap_ranges(lu.row(k).begin(), lu.row(k).end(), lu.row(p).begin());
        std::swap(f.perm[k], f.perm[p]);
    }
    return p;
}

LuFactorization start_factorization(const DenseMatrix& A) {
    if (!A.square()) {
        throw Error(ErrorCode::invalid_config, "LU factorization needs a square matrix");
    }
    LuFactorization f{A, std::vector<std::size_t>(A.rows()), A.norm_inf()};
    std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});
    return f;
}

// Last column holding a nonzero in row k (at least k).
std::size_t row_extent(const DenseMatrix& lu, std::size_t k) {
    std::size_t last = lu.cols() - 1;
    const auto r = lu.row(k);
    while (last > k && r[last] == 0.0) {
        --last;
    }
    return last;
}

} // namespace detail

LuFactorization lu_factor(const DenseMatrix& A) {
    LuFactorization f = detail::start_factorization(A);
    DenseMatrix& lu = f.lu;
    const std::size_t n = lu.rows();
    for (std::size_t k = 0; k < n; ++k) {
        detail::select_pivot(f, k);
        const double pivot = lu(k, k);
        const std::size_t last = detail::row_extent(lu, k);
        const double* pk = lu.row(k).data();
        const auto begin = static_cast<std::ptrdiff_t>(k + 1);
        const auto end = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (end - begin > 128)
        for (std::ptrdiff_t i = begin; i < end; ++i) {
            double* ai = lu.row(static_cast<std::size_t>(i)).data();
            if (ai[k] == 0.0) {
                continue;
            }
            const double l = ai[k] / pivot;
            ai[k] = l;
            for (std::size_t j = k + 1; j <= last; ++j) {
                ai[j] -= l * pk[j];
            }
        }
    }
    return f;
}

std::vector<double> LuFactorization::solve(std::span<const double> b) const {
    const std::size_t n = size();
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = b[perm[i]];
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double* r = lu.row(i).data();
        double s = x[i];
        for (std::size_t j = 0; j < i; ++j) {
            s -= r[j] * x[j];
        }
        x[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
        const double* r = lu.row(i).data();
        double s = x[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            s -= r[j] * x[j];
        }
        x[i] = s / r[i];
    }
    return x;
}

std::vector<double> LuFactorization::solve_transposed(std::span<const double> b) const {
    // A^T = U^T L^T P: solve U^T z = b, then L^T w = z, then x = P^T w.
    const std::size_t n = size();
    std::vector<double> w(b.begin(), b.end());
    for (std::size_t j = 0; j < n; ++j) {
        w[j] /= lu(j, j);
        const double wj = w[j];
        if (wj == 0.0) {
            continue;
        }
        const double* r = lu.row(j).data();
        for (std::size_t i = j + 1; i < n; ++i) {
            w[i] -= r[i] * wj;
        }
    }
    for (std::size_t j = n; j-- > 0;) {
        const double wj = w[j];
        if (wj == 0.0) {
            continue;
        }
        const double* r = lu.row(j).data();
        for (std::size_t i = 0; i < j; ++i) {
            w[i] -= r[i] * wj;
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[perm[i]] = w[i];
    }
    return x;
}

std::vector<double> lu_solve(const DenseMatrix& A, std::span<const double> b) {
    if (b.size() != A.rows()) {
        throw Error(ErrorCode::invalid_config, "right-hand side length does not match the matrix");
    }
    return lu_factor(A).solve(b);
}

namespace {

std::vector<double> random_unit(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) {
        x = dist(rng);
    }
    const double nrm = norm_2(v);
    for (auto& x : v) {
        x /= nrm;
    }
    return v;
}

struct Extreme {
    double value = 0.0;
    bool converged = false;
    int iterations = 0;
};

// Largest eigenvalue of a symmetric positive operator by power iteration with
// Rayleigh quotients.
template <typename Apply>
Extreme dominant_eigenvalue(std::size_t n, Apply&& apply, const ConditionOptions& opt,
                            std::mt19937_64& rng) {
    Extreme best;
    auto v = random_unit(n, rng);
    for (int it = 0; it < opt.max_iterations; ++it) {
        auto w = apply(v);
        const double rayleigh = std::inner_product(v.begin(), v.end(), w.begin(), 0.0);
        ++best.iterations;
        best.value = std::max(best.value, rayleigh);
        const double nrm = norm_2(w);
        if (nrm == 0.0) {
            break;
        }
        double residual = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            residual += (w[i] - rayleigh * v[i]) * (w[i] - rayleigh * v[i]);
            v[i] = w[i] / nrm;
        }
        if (std::sqrt(residual) <= opt.tolerance * std::abs(rayleigh)) {
            best.converged = true;
            break;
        }
    }
    return best;
}

} // namespace

ConditionEstimate condition_number_2(const DenseMatrix& A, const ConditionOptions& options) {
    const LuFactorization f = lu_factor(A);
    const std::size_t n = A.rows();
    std::mt19937_64 rng(options.seed);

    const Extreme top = dominant_eigenvalue(
        n, [&](const std::vector<double>& v) { return multiply_transposed(A, multiply(A, v)); },
        options, rng);
    // (A^T A)^{-1} = A^{-1} A^{-T}
    const Extreme inv = dominant_eigenvalue(
        n, [&](const std::vector<double>& v) { return f.solve(f.solve_transposed(v)); }, options,
        rng);

    ConditionEstimate est;
    est.sigma_max = std::sqrt(top.value);
    est.sigma_min = 1.0 / std::sqrt(inv.value);
    est.value = est.sigma_max / est.sigma_min;
    est.converged = top.converged && inv.converged;
    est.iterations = top.iterations + inv.iterations;
    return est;
}

} // namespace peri_couple

#pragma once

#include "peri_couple/assembly.hpp"
#include "peri_couple/stencils.hpp"

#include <vector>

namespace peri_couple {

struct Solution {
    Grid grid;
    DofMap dofs;
    SchemeKind scheme;
    std::vector<double> values; ///< one per dof

    /// Value representing the solution at grid point k (see DofMap::owner).
    double at_node(int k) const { return values[static_cast<std::size_t>(dofs.owner(k))]; }
};

/// Assembles and solves; propagates assembly and SingularMatrix errors.
Solution solve(const Grid& grid, const ManufacturedProblem& problem, const CouplingScheme& scheme);
Solution solve_system(const Grid& grid, const LinearSystem& system, SchemeKind scheme);

/// Largest |u_i - u_exact(x_k)| over all dofs, duplicated ones included.
double max_nodal_error(const Solution& solution, const ScalarFunction& u_exact);

struct ErrorField {
    Grid grid;
    std::vector<double> values; ///< Delta(x_k), k = 0..n
};

/// Delta(x_k) = coupled(x_k) - fdm(x_k). Throws Error{grid_mismatch}.
ErrorField delta_field(const Solution& coupled, const Solution& fdm);

/// Signed maximum of the field.
double delta_max(const ErrorField& field);

/// |delta_max - v_max| / v_max. Throws Error{division_by_zero} if v_max == 0.
double relative_error(double delta_max, double v_max);

enum class StressOrder { two, three };

/// Nonlocal stress at x for the displacement u by nested composite Simpson
/// quadrature of
///   plus:  int_{x-delta}^{x} int_{x}^{z+delta} kappa (u(y) - u(z)) / |y - z| dy dz
///   minus: int_{x}^{x+delta} int_{z-delta}^{x} kappa (u(y) - u(z)) / |y - z| dy dz
/// Order three subtracts kappa delta^4 u'''(x) / 48.
/// Throws Error{quadrature_failure} if refinement fails to settle to 1e-8.
double continuous_stress(const ScalarFunction& u, double x, double delta, double kappa, StressOrder order,
                         Side side = Side::plus);

} // namespace peri_couple

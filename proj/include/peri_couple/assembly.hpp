#pragma once

#include "peri_couple/dense_linalg.hpp"
#include "peri_couple/mesh.hpp"
#include "peri_couple/problems.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace peri_couple {

enum class SchemeKind { fdm, mdcm, mscm, vhcm };

std::string_view to_string(SchemeKind kind) noexcept;
std::optional<SchemeKind> parse_scheme(std::string_view name) noexcept;

/// Placement of the MSCM stress-constraint rows inside each overlap.
///
/// interface_inclusive: m + 1 stress rows per overlap, collocated at
///   x_{n1-m} .. x_{n1} and x_{n1+nd} .. x_{n1+nd+m}; the PD equation is
///   collocated strictly inside (a, b).
/// interface_exclusive: m stress rows per overlap, collocated at
///   x_{n1-m} .. x_{n1-1} and x_{n1+nd+1} .. x_{n1+nd+m}; the PD equation is
///   collocated on [a, b].
enum class StressRowLayout { interface_inclusive, interface_exclusive };

std::string_view to_string(StressRowLayout layout) noexcept;
std::optional<StressRowLayout> parse_stress_layout(std::string_view name) noexcept;

struct CouplingScheme {
    SchemeKind kind = SchemeKind::mdcm;
    std::optional<double> kappa_override;
    StressRowLayout mscm_layout = StressRowLayout::interface_inclusive;

    static CouplingScheme of(SchemeKind kind) { return {kind, std::nullopt, StressRowLayout::interface_inclusive}; }
};

enum class RowLabel {
    dirichlet_left,
    local_interior,
    overlap_displacement,
    interface_displacement,
    stress_constraint_plus,
    stress_constraint_minus,
    pd_interior,
    neumann_right,
    dirichlet_right,
};

std::string_view to_string(RowLabel label) noexcept;

struct LinearSystem {
    DenseMatrix matrix;
    std::vector<double> rhs;
    std::vector<RowLabel> row_labels;
    DofMap dofs;
};

/// 2E / delta^2
double nominal_kappa(double E, double delta);

NumberingKind numbering_for(SchemeKind kind) noexcept;

// Each assembler throws Error{inconsistent_dof_map} if `dofs` was not built
// for `grid` with the numbering its scheme requires.
LinearSystem assemble_fdm(const Grid& grid, const DofMap& dofs, const ManufacturedProblem& problem);
LinearSystem assemble_mdcm(const Grid& grid, const DofMap& dofs, const ManufacturedProblem& problem,
                           const CouplingScheme& scheme);
/// Throws Error{stencil_out_of_range} unless n1, n2 >= m + 3.
LinearSystem assemble_mscm(const Grid& grid, const DofMap& dofs, const ManufacturedProblem& problem,
                           const CouplingScheme& scheme);
/// Throws Error{domain_too_narrow} unless n_delta >= 2m + 2.
LinearSystem assemble_vhcm(const Grid& grid, const DofMap& dofs, const ManufacturedProblem& problem,
                           const CouplingScheme& scheme);

/// Throws what the scheme's assembler would throw for this grid and problem,
/// without building the matrix.
void check_preconditions(const Grid& grid, const ManufacturedProblem& problem, const CouplingScheme& scheme);

/// Builds the dof map for the scheme and dispatches.
LinearSystem assemble(const Grid& grid, const ManufacturedProblem& problem, const CouplingScheme& scheme);

} // namespace peri_couple

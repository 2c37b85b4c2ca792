#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace peri_couple {

enum class BcKind {
    mixed,          ///< u(0) = 0, E u'(ell) = g
    dirichlet_both, ///< u(0) = u(ell) = 0
};

std::string_view to_string(BcKind kind) noexcept;

struct BoundaryCondition {
    BcKind kind = BcKind::mixed;
    double g = 0.0; ///< traction at x = ell, mixed only
};

using ScalarFunction = std::function<double(double)>;

/// Manufactured solution with body force f_b = -E u'' computed in closed form.
struct ManufacturedProblem {
    std::string name;
    ScalarFunction u_exact;
    ScalarFunction du_exact;
    ScalarFunction f_b;
    BoundaryCondition bc;
    double lambda4 = 0.0; ///< constant fourth derivative of u_exact
    double E = 1.0;
    double ell = 3.0;
};

/// cubic_mixed, cubic_dirichlet, quartic_mixed, quartic_dirichlet on (0, 3).
/// Throws Error{unknown_problem}.
ManufacturedProblem catalog_get(std::string_view name);

std::vector<std::string> catalog_names();

} // namespace peri_couple

#include "peri_couple/analysis.hpp"

#include "peri_couple/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace peri_couple {

Solution solve_system(const Grid& grid, const LinearSystem& system, SchemeKind scheme) {
    return {grid, system.dofs, scheme, lu_solve(system.matrix, system.rhs)};
}

Solution solve(const Grid& grid, const ManufacturedProblem& problem, const CouplingScheme& scheme) {
    return solve_system(grid, assemble(grid, problem, scheme), scheme.kind);
}

double max_nodal_error(const Solution& s, const ScalarFunction& u_exact) {
    double worst = 0.0;
    for (int i = 0; i < s.dofs.N(); ++i) {
        const DofSite site = s.dofs.site(i);
        worst = std::max(worst, std::abs(s.values[static_cast<std::size_t>(i)] - u_exact(s.grid.x(site.k))));
    }
    return worst;
}

ErrorField delta_field(const Solution& coupled, const Solution& fdm) {
    if (!coupled.grid.same_layout(fdm.grid)) {
        throw Error(ErrorCode::grid_mismatch, "coupled and reference solutions live on different grids");
    }
    ErrorField field{coupled.grid, std::vector<double>(static_cast<std::size_t>(coupled.grid.n() + 1))};
    for (int k = 0; k <= coupled.grid.n(); ++k) {
        field.values[static_cast<std::size_t>(k)] = coupled.at_node(k) - fdm.at_node(k);
    }
    return field;
}

double delta_max(const ErrorField& field) {
    if (field.values.empty()) {
        throw Error(ErrorCode::invalid_config, "empty error field");
    }
    return *std::max_element(field.values.begin(), field.values.end());
}

double relative_error(double delta_max, double v_max) {
    if (v_max == 0.0) {
        throw Error(ErrorCode::division_by_zero, "v_max is zero; the relative error is undefined");
    }
    return std::abs(delta_max - v_max) / v_max;
}

namespace {

template <typename F>
double simpson(F&& f, double lo, double hi, int panels) {
    const double step = (hi - lo) / panels;
    double acc = f(lo) + f(hi);
    for (int j = 1; j < panels; ++j) {
        acc += f(lo + j * step) * ((j % 2) ? 4.0 : 2.0);
    }
    return acc * step / 3.0;
}

double bond_quotient(const ScalarFunction& u, double y, double z, double delta) {
    if (std::abs(y - z) <= 1e-12 * delta) {
        const double eta = 1e-4 * delta;
        return (u(z + eta) - u(z - eta)) / (2.0 * eta);
    }
    return (u(y) - u(z)) / (y - z);
}

double stress_integral(const ScalarFunction& u, double x, double delta, double kappa, Side side, int panels) {
    if (side == Side::plus) {
        auto inner = [&](double z) {
            return simpson([&](double y) { return bond_quotient(u, y, z, delta); }, x, z + delta, panels);
        };
        return kappa * simpson(inner, x - delta, x, panels);
    }
    auto inner = [&](double z) {
        return simpson([&](double y) { return bond_quotient(u, y, z, delta); }, z - delta, x, panels);
    };
    return kappa * simpson(inner, x, x + delta, panels);
}

} // namespace

double continuous_stress(const ScalarFunction& u, double x, double delta, double kappa, StressOrder order,
                         Side side) {
    if (!(delta > 0.0) || !(kappa > 0.0)) {
        throw Error(ErrorCode::invalid_config, "stress needs delta > 0 and kappa > 0");
    }
    int panels = 64;
    double coarse = stress_integral(u, x, delta, kappa, side, panels);
    double fine = 0.0;
    const double floor = 1e-14 * kappa * delta * delta;
    for (;;) {
        fine = stress_integral(u, x, delta, kappa, side, 2 * panels);
        if (std::abs(fine - coarse) <= 1e-8 * std::abs(fine) + floor) {
            break;
        }
        panels *= 2;
        if (panels > 1024) {
            std::ostringstream msg;
            msg << "stress quadrature at x=" << x << " did not settle: " << coarse << " vs " << fine;
            throw Error(ErrorCode::quadrature_failure, msg.str());
        }
        coarse = fine;
    }
    if (order == StressOrder::two) {
        return fine;
    }
    const double s = delta / 16.0;
    const double u3 = (-u(x - 2 * s) + 2 * u(x - s) - 2 * u(x + s) + u(x + 2 * s)) / (2 * s * s * s);
    return fine - kappa * std::pow(delta, 4) / 48.0 * u3;
}

} // namespace peri_couple

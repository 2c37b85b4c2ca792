#include "peri_couple/assembly.hpp"

#include "peri_couple/error.hpp"
#include "peri_couple/stencils.hpp"

#include <cmath>
#include <sstream>

namespace peri_couple {

std::string_view to_string(SchemeKind kind) noexcept {
    switch (kind) {
    case SchemeKind::fdm: return "fdm";
    case SchemeKind::mdcm: return "mdcm";
    case SchemeKind::mscm: return "mscm";
    case SchemeKind::vhcm: return "vhcm";
    }
    return "?";
}

std::optional<SchemeKind> parse_scheme(std::string_view name) noexcept {
    for (auto k : {SchemeKind::fdm, SchemeKind::mdcm, SchemeKind::mscm, SchemeKind::vhcm}) {
        if (to_string(k) == name) {
            return k;
        }
    }
    return std::nullopt;
}

std::string_view to_string(StressRowLayout layout) noexcept {
    return layout == StressRowLayout::interface_inclusive ? "inclusive" : "exclusive";
}

std::optional<StressRowLayout> parse_stress_layout(std::string_view name) noexcept {
    if (name == "inclusive") {
        return StressRowLayout::interface_inclusive;
    }
    if (name == "exclusive") {
        return StressRowLayout::interface_exclusive;
    }
    return std::nullopt;
}

std::string_view to_string(RowLabel label) noexcept {
    switch (label) {
    case RowLabel::dirichlet_left: return "dirichlet_left";
    case RowLabel::local_interior: return "local_interior";
    case RowLabel::overlap_displacement: return "overlap_displacement";
    case RowLabel::interface_displacement: return "interface_displacement";
    case RowLabel::stress_constraint_plus: return "stress_constraint_plus";
    case RowLabel::stress_constraint_minus: return "stress_constraint_minus";
    case RowLabel::pd_interior: return "pd_interior";
    case RowLabel::neumann_right: return "neumann_right";
    case RowLabel::dirichlet_right: return "dirichlet_right";
    }
    return "?";
}

double nominal_kappa(double E, double delta) {
    if (!(delta > 0.0)) {
        throw Error(ErrorCode::invalid_config, "horizon must be positive");
    }
    return 2.0 * E / (delta * delta);
}

NumberingKind numbering_for(SchemeKind kind) noexcept {
    switch (kind) {
    case SchemeKind::fdm: return NumberingKind::plain;
    case SchemeKind::vhcm: return NumberingKind::no_overlap;
    default: return NumberingKind::overlap;
    }
}

namespace {

// Rows are written in order; indices passed in are 1-based to match the
// documented equation ranges.
class RowWriter {
public:
    explicit RowWriter(const DofMap& dofs)
        : system_{DenseMatrix(static_cast<std::size_t>(dofs.N()), static_cast<std::size_t>(dofs.N())),
                  std::vector<double>(static_cast<std::size_t>(dofs.N()), 0.0),
                  {},
                  dofs} {
        system_.row_labels.reserve(static_cast<std::size_t>(dofs.N()));
    }

    void begin(RowLabel label, double rhs = 0.0) {
        if (next_ >= system_.dofs.N()) {
            throw Error(ErrorCode::inconsistent_dof_map, "more equations than dofs");
        }
        current_ = next_++;
        system_.row_labels.push_back(label);
        system_.rhs[static_cast<std::size_t>(current_)] = rhs;
    }

    void add(int col1, double value) {
        if (col1 < 1 || col1 > system_.dofs.N()) {
            throw Error(ErrorCode::stencil_out_of_range,
                        "row " + std::to_string(current_ + 1) + " reaches column " + std::to_string(col1));
        }
        system_.matrix(static_cast<std::size_t>(current_), static_cast<std::size_t>(col1 - 1)) += value;
    }

    void stencil(int center1, const Stencil& s, double factor = 1.0) {
        for (std::size_t j = 0; j < s.size(); ++j) {
            add(center1 + s.offsets[j], factor * s.weight(j));
        }
    }

    LinearSystem finish() {
        if (next_ != system_.dofs.N()) {
            throw Error(ErrorCode::inconsistent_dof_map,
                        std::to_string(next_) + " equations for " + std::to_string(system_.dofs.N()) + " dofs");
        }
        return std::move(system_);
    }

private:
    LinearSystem system_;
    int next_ = 0;
    int current_ = -1;
};

void require_map(const Grid& grid, const DofMap& dofs, NumberingKind kind) {
    const DofMap expected(grid, kind);
    if (dofs.kind() != kind || dofs.N() != expected.N() || dofs.N1() != expected.N1() ||
        dofs.N_delta() != expected.N_delta()) {
        throw Error(ErrorCode::inconsistent_dof_map, "dof map does not match the grid and scheme");
    }
}

void require_problem_domain(const Grid& grid, const ManufacturedProblem& problem) {
    if (std::abs(grid.config().ell - problem.ell) > 1e-12 * problem.ell) {
        std::ostringstream msg;
        msg << "problem " << problem.name << " is posed on (0, " << problem.ell << "), grid on (0, "
            << grid.config().ell << ")";
        throw Error(ErrorCode::invalid_config, msg.str());
    }
}

void require(bool ok, ErrorCode code, const std::string& what) {
    if (!ok) {
        throw Error(code, what);
    }
}

double kappa_for(const CouplingScheme& scheme, double E, double delta) {
    if (scheme.kappa_override) {
        require(*scheme.kappa_override > 0.0 && std::isfinite(*scheme.kappa_override),
                ErrorCode::invalid_config, "kappa override must be positive");
        return *scheme.kappa_override;
    }
    return nominal_kappa(E, delta);
}

void local_rows(RowWriter& w, const Grid& grid, const ManufacturedProblem& p, int first1, int last1,
                int k_shift) {
    const Stencil s = central_second_difference(p.E, grid.h());
    for (int i = first1; i <= last1; ++i) {
        w.begin(RowLabel::local_interior, p.f_b(grid.x(i - 1 - k_shift)));
        w.stencil(i, s);
    }
}

void boundary_row(RowWriter& w, const Grid& grid, const ManufacturedProblem& p, int N) {
    if (p.bc.kind == BcKind::mixed) {
        w.begin(RowLabel::neumann_right, p.bc.g);
        w.stencil(N, one_sided_third_order(Direction::backward, grid.h()), p.E);
    } else {
        w.begin(RowLabel::dirichlet_right, 0.0);
        w.add(N, 1.0);
    }
}

void pd_row(RowWriter& w, const Grid& grid, const ManufacturedProblem& p, int i1, int k, double kappa,
            int m_eff) {
    w.begin(RowLabel::pd_interior, p.f_b(grid.x(k)));
    w.stencil(i1, peridynamic_row({kappa, m_eff, grid.h()}));
}

void require_neumann_fits(const Grid& grid, const ManufacturedProblem& p) {
    require(p.bc.kind != BcKind::mixed || grid.n2() >= 3, ErrorCode::stencil_out_of_range,
            "Neumann row needs at least 3 intervals in (b, ell)");
}

void check_fdm(const Grid& grid, const ManufacturedProblem& problem) {
    require_problem_domain(grid, problem);
    require(grid.n() >= 3, ErrorCode::stencil_out_of_range, "FDM needs at least 3 intervals");
}

void check_mdcm(const Grid& grid, const ManufacturedProblem& problem, const CouplingScheme& scheme) {
    require_problem_domain(grid, problem);
    require_neumann_fits(grid, problem);
    kappa_for(scheme, problem.E, grid.delta());
}

void check_mscm(const Grid& grid, const ManufacturedProblem& problem, const CouplingScheme& scheme) {
    require_problem_domain(grid, problem);
    const int m = grid.m();
    require(grid.n1() >= m + 3 && grid.n2() >= m + 3, ErrorCode::stencil_out_of_range,
            "MSCM stress constraints need n1, n2 >= m + 3 (n1=" + std::to_string(grid.n1()) +
                ", n2=" + std::to_string(grid.n2()) + ", m=" + std::to_string(m) + ")");
    kappa_for(scheme, problem.E, grid.delta());
}

void check_vhcm(const Grid& grid, const ManufacturedProblem& problem, const CouplingScheme& scheme) {
    require_problem_domain(grid, problem);
    const int m = grid.m();
    require(grid.n_delta() >= 2 * m + 2, ErrorCode::domain_too_narrow,
            "variable horizon needs (b - a) / h >= 2m + 2 (n_delta=" + std::to_string(grid.n_delta()) +
                ", m=" + std::to_string(m) + ")");
    require(grid.n1() >= 3 && grid.n2() >= 3, ErrorCode::stencil_out_of_range,
            "interface stress constraints need n1, n2 >= 3");
    kappa_for(scheme, problem.E, grid.delta());
}

} // namespace

void check_preconditions(const Grid& grid, const ManufacturedProblem& problem, const CouplingScheme& scheme) {
    switch (scheme.kind) {
    case SchemeKind::fdm: check_fdm(grid, problem); return;
    case SchemeKind::mdcm: check_mdcm(grid, problem, scheme); return;
    case SchemeKind::mscm: check_mscm(grid, problem, scheme); return;
    case SchemeKind::vhcm: check_vhcm(grid, problem, scheme); return;
    }
}

LinearSystem assemble_fdm(const Grid& grid, const DofMap& dofs, const ManufacturedProblem& problem) {
    require_map(grid, dofs, NumberingKind::plain);
    check_fdm(grid, problem);
    const int N = dofs.N();
    RowWriter w(dofs);
    w.begin(RowLabel::dirichlet_left, 0.0);
    w.add(1, 1.0);
    local_rows(w, grid, problem, 2, N - 1, 0);
    boundary_row(w, grid, problem, N);
    return w.finish();
}

LinearSystem assemble_mdcm(const Grid& grid, const DofMap& dofs, const ManufacturedProblem& problem,
                           const CouplingScheme& scheme) {
    require_map(grid, dofs, NumberingKind::overlap);
    check_mdcm(grid, problem, scheme);
    const int m = grid.m();
    const int N1 = dofs.N1();
    const int Nd = dofs.N_delta();
    const int N = dofs.N();
    const double kappa = kappa_for(scheme, problem.E, grid.delta());

    RowWriter w(dofs);
    w.begin(RowLabel::dirichlet_left, 0.0);
    w.add(1, 1.0);
    local_rows(w, grid, problem, 2, N1 - 1, 0);
    for (int i = N1; i <= N1 + m; ++i) {
        w.begin(RowLabel::overlap_displacement, 0.0);
        w.add(i - m, 1.0);
        w.add(i + 1, -1.0);
    }
    for (int i = N1 + 1 + m; i <= N1 + Nd - m; ++i) {
        pd_row(w, grid, problem, i, i - 2 - m, kappa, m);
    }
    for (int i = N1 + Nd + 1 - m; i <= N1 + Nd + 1; ++i) {
        w.begin(RowLabel::overlap_displacement, 0.0);
        w.add(i - 1, 1.0);
        w.add(i + m, -1.0);
    }
    local_rows(w, grid, problem, N1 + Nd + 2, N - 1, 2 + 2 * m);
    boundary_row(w, grid, problem, N);
    return w.finish();
}

LinearSystem assemble_mscm(const Grid& grid, const DofMap& dofs, const ManufacturedProblem& problem,
                           const CouplingScheme& scheme) {
    require_map(grid, dofs, NumberingKind::overlap);
    check_mscm(grid, problem, scheme);
    const int m = grid.m();
    const int N1 = dofs.N1();
    const int Nd = dofs.N_delta();
    const int N = dofs.N();
    const double h = grid.h();
    const double E = problem.E;
    const double kappa = kappa_for(scheme, E, grid.delta());
    const Stencil plus = discrete_stress_row(Side::plus, kappa, grid.delta(), h);
    const Stencil minus = discrete_stress_row(Side::minus, kappa, grid.delta(), h);
    const Stencil forward = one_sided_third_order(Direction::forward, h);
    const Stencil backward = one_sided_third_order(Direction::backward, h);
    const bool inclusive = scheme.mscm_layout == StressRowLayout::interface_inclusive;
    const int stress_rows = inclusive ? m + 1 : m;

    RowWriter w(dofs);
    w.begin(RowLabel::dirichlet_left, 0.0);
    w.add(1, 1.0);
    local_rows(w, grid, problem, 2, N1 - 1, 0);

    w.begin(RowLabel::interface_displacement, 0.0);
    w.add(N1, 1.0);
    w.add(N1 + 1 + m, -1.0);
    for (int i = N1 + 1; i < N1 + 1 + stress_rows; ++i) {
        // sigma_h^+ on PD dofs i..i+3 against E u' from local dofs i-4-m..i-1-m
        w.begin(RowLabel::stress_constraint_plus, 0.0);
        w.stencil(i, plus);
        w.stencil(i - 1 - m, backward, -E);
    }
    for (int i = N1 + 1 + stress_rows; i <= N1 + Nd - stress_rows; ++i) {
        pd_row(w, grid, problem, i, i - 2 - m, kappa, m);
    }
    for (int i = N1 + Nd + 1 - stress_rows; i <= N1 + Nd; ++i) {
        w.begin(RowLabel::stress_constraint_minus, 0.0);
        w.stencil(i, minus);
        w.stencil(i + 1 + m, forward, -E);
    }
    w.begin(RowLabel::interface_displacement, 0.0);
    w.add(N1 + Nd - m, 1.0);
    w.add(N1 + Nd + 1, -1.0);

    local_rows(w, grid, problem, N1 + Nd + 2, N - 1, 2 + 2 * m);
    boundary_row(w, grid, problem, N);
    return w.finish();
}

LinearSystem assemble_vhcm(const Grid& grid, const DofMap& dofs, const ManufacturedProblem& problem,
                           const CouplingScheme& scheme) {
    require_map(grid, dofs, NumberingKind::no_overlap);
    check_vhcm(grid, problem, scheme);
    const int m = grid.m();
    const int N1 = dofs.N1();
    const int Nd = dofs.N_delta();
    const int N = dofs.N();
    const int n1 = grid.n1();
    const int nb = grid.node_b();
    const double h = grid.h();
    const double E = problem.E;
    const double nominal = nominal_kappa(E, grid.delta());
    const double ratio = kappa_for(scheme, E, grid.delta()) / nominal;
    // kappa_bar * delta_v^2 / 2, constant along (a, b)
    const double stress_scale = E * ratio;
    const Stencil forward = one_sided_third_order(Direction::forward, h);
    const Stencil backward = one_sided_third_order(Direction::backward, h);

    RowWriter w(dofs);
    w.begin(RowLabel::dirichlet_left, 0.0);
    w.add(1, 1.0);
    local_rows(w, grid, problem, 2, N1 - 1, 0);

    w.begin(RowLabel::interface_displacement, 0.0);
    w.add(N1, 1.0);
    w.add(N1 + 1, -1.0);
    w.begin(RowLabel::stress_constraint_plus, 0.0);
    w.stencil(N1 + 1, forward, stress_scale);
    w.stencil(N1, backward, -E);

    for (int i = N1 + 2; i <= N1 + Nd - 1; ++i) {
        const int k = i - 2;
        const int m_eff = std::min({k - n1, nb - k, m});
        const double kappa_bar = 2.0 * E / ((m_eff * h) * (m_eff * h)) * ratio;
        pd_row(w, grid, problem, i, k, kappa_bar, m_eff);
    }

    w.begin(RowLabel::stress_constraint_minus, 0.0);
    w.stencil(N1 + Nd, backward, stress_scale);
    w.stencil(N1 + Nd + 1, forward, -E);
    w.begin(RowLabel::interface_displacement, 0.0);
    w.add(N1 + Nd, 1.0);
    w.add(N1 + Nd + 1, -1.0);

    local_rows(w, grid, problem, N1 + Nd + 2, N - 1, 2);
    boundary_row(w, grid, problem, N);
    return w.finish();
}

LinearSystem assemble(const Grid& grid, const ManufacturedProblem& problem, const CouplingScheme& scheme) {
    const DofMap dofs(grid, numbering_for(scheme.kind));
    switch (scheme.kind) {
    case SchemeKind::fdm: return assemble_fdm(grid, dofs, problem);
    case SchemeKind::mdcm: return assemble_mdcm(grid, dofs, problem, scheme);
    case SchemeKind::mscm: return assemble_mscm(grid, dofs, problem, scheme);
    case SchemeKind::vhcm: return assemble_vhcm(grid, dofs, problem, scheme);
    }
    throw Error(ErrorCode::invalid_config, "unknown scheme");
}

} // namespace peri_couple

#include "doctest.h"

#include "peri_couple/analysis.hpp"
#include "peri_couple/assembly.hpp"
#include "peri_couple/error.hpp"

#include <cmath>
#include <map>

using namespace peri_couple;

namespace {

Grid grid_for(int delta_den, int m, double a = 1.0, double b = 2.0) {
    GridConfig g;
    g.a = a;
    g.b = b;
    g.m = m;
    g.h = 1.0 / (delta_den * m);
    return build_grid(g);
}

ErrorCode assembly_error(const Grid& grid, const ManufacturedProblem& p, const CouplingScheme& s) {
    try {
        assemble(grid, p, s);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::invalid_config;
}

std::map<RowLabel, int> label_counts(const LinearSystem& sys) {
    std::map<RowLabel, int> c;
    for (RowLabel l : sys.row_labels) {
        ++c[l];
    }
    return c;
}

} // namespace

TEST_CASE("nominal kappa") {
    CHECK(nominal_kappa(1.0, 0.125) == 128.0);
    CHECK(nominal_kappa(1.0, 1.0) == 2.0);
    CHECK(nominal_kappa(2.0, 0.5) == 16.0);
    CHECK_THROWS_AS(nominal_kappa(1.0, 0.0), Error);
}

TEST_CASE("scheme names") {
    for (auto k : {SchemeKind::fdm, SchemeKind::mdcm, SchemeKind::mscm, SchemeKind::vhcm}) {
        CHECK(parse_scheme(to_string(k)) == k);
    }
    CHECK_FALSE(parse_scheme("MDCM ").has_value());
    CHECK(parse_stress_layout("exclusive") == StressRowLayout::interface_exclusive);
    CHECK(to_string(StressRowLayout::interface_inclusive) == "inclusive");
    CHECK(numbering_for(SchemeKind::vhcm) == NumberingKind::no_overlap);
    CHECK(numbering_for(SchemeKind::fdm) == NumberingKind::plain);
}

TEST_CASE("FDM rows") {
    const Grid g = grid_for(8, 2);
    const auto p = catalog_get("quartic_mixed");
    const LinearSystem sys = assemble(g, p, CouplingScheme::of(SchemeKind::fdm));
    CHECK(sys.matrix.rows() == 49);
    CHECK(sys.rhs[16] == doctest::Approx(-12.0)); // x = 1
    CHECK(sys.rhs[48] == doctest::Approx(108.0));
    CHECK(sys.row_labels.front() == RowLabel::dirichlet_left);
    CHECK(sys.row_labels.back() == RowLabel::neumann_right);
    CHECK(sys.matrix(48, 45) == doctest::Approx(-2.0 * 16 / 6));
    CHECK(sys.matrix(48, 48) == doctest::Approx(11.0 * 16 / 6));

    const auto d = assemble(g, catalog_get("quartic_dirichlet"), CouplingScheme::of(SchemeKind::fdm));
    CHECK(d.row_labels.back() == RowLabel::dirichlet_right);
    CHECK(d.matrix.row_nonzeros(48) == 1);
}

TEST_CASE("FDM accuracy") {
    const auto cubic = catalog_get("cubic_mixed");
    const Grid g = grid_for(8, 2);
    CHECK(max_nodal_error(solve(g, cubic, CouplingScheme::of(SchemeKind::fdm)), cubic.u_exact) <= 1e-10);

    const auto quartic = catalog_get("quartic_mixed");
    const double coarse = max_nodal_error(solve(grid_for(8, 2), quartic, CouplingScheme::of(SchemeKind::fdm)),
                                          quartic.u_exact);
    const double fine = max_nodal_error(solve(grid_for(16, 2), quartic, CouplingScheme::of(SchemeKind::fdm)),
                                        quartic.u_exact);
    CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("MDCM blocks") {
    const Grid g = grid_for(8, 2);
    const double h = g.h();
    const LinearSystem sys = assemble(g, catalog_get("quartic_mixed"), CouplingScheme::of(SchemeKind::mdcm));
    REQUIRE(sys.matrix.rows() == 55);
    const auto counts = label_counts(sys);
    CHECK(counts.at(RowLabel::overlap_displacement) == 6);
    CHECK(counts.at(RowLabel::pd_interior) == 17);
    CHECK(counts.at(RowLabel::local_interior) == 30);

    // first PD row, 1-based i = 20
    const std::size_t r = 19;
    CHECK(sys.row_labels[r] == RowLabel::pd_interior);
    const double unit = 1.0 / (8 * h * h);
    const double pattern[] = {-1, -4, 10, -4, -1};
    for (int j = 0; j < 5; ++j) {
        CHECK(sys.matrix(r, r - 2 + j) == doctest::Approx(pattern[j] * unit));
    }
    CHECK(sys.matrix.row_nonzeros(r) == 5);

    // overlap rows join a local and a peridynamic dof at the same grid point
    for (std::size_t i = 0; i < sys.matrix.rows(); ++i) {
        if (sys.row_labels[i] != RowLabel::overlap_displacement) {
            continue;
        }
        std::vector<std::size_t> cols;
        for (std::size_t j = 0; j < sys.matrix.cols(); ++j) {
            if (sys.matrix(i, j) != 0.0) {
                cols.push_back(j);
            }
        }
        REQUIRE(cols.size() == 2);
        CHECK(sys.matrix(i, cols[0]) * sys.matrix(i, cols[1]) == -1.0);
        const DofSite s0 = sys.dofs.site(static_cast<int>(cols[0]));
        const DofSite s1 = sys.dofs.site(static_cast<int>(cols[1]));
        CHECK(s0.k == s1.k);
        CHECK(s0.model != s1.model);
    }
}

TEST_CASE("MSCM stress rows") {
    const Grid g = grid_for(8, 2);
    const LinearSystem sys = assemble(g, catalog_get("quartic_mixed"), CouplingScheme::of(SchemeKind::mscm));
    const auto counts = label_counts(sys);
    CHECK(counts.at(RowLabel::stress_constraint_plus) == 3);
    CHECK(counts.at(RowLabel::stress_constraint_minus) == 3);
    CHECK(counts.at(RowLabel::interface_displacement) == 2);
    CHECK(counts.at(RowLabel::pd_interior) == 15);
    // 1-based row 18: sigma_h^+ on dofs 18..21, local slope on dofs 12..15
    const std::size_t r = 17;
    CHECK(sys.row_labels[r] == RowLabel::stress_constraint_plus);
    const double s = 1.0 / (6 * g.h());
    const double local[] = {2, -9, 18, -11};
    const double pd[] = {-11, 18, -9, 2};
    for (int j = 0; j < 4; ++j) {
        CHECK(sys.matrix(r, 11 + j) == doctest::Approx(local[j] * s));
        CHECK(sys.matrix(r, 17 + j) == doctest::Approx(pd[j] * s));
    }
    CHECK(sys.matrix.row_nonzeros(r) == 8);

    CouplingScheme exclusive = CouplingScheme::of(SchemeKind::mscm);
    exclusive.mscm_layout = StressRowLayout::interface_exclusive;
    const auto ex = label_counts(assemble(g, catalog_get("quartic_mixed"), exclusive));
    CHECK(ex.at(RowLabel::stress_constraint_plus) == 2);
    CHECK(ex.at(RowLabel::pd_interior) == 17);
}

TEST_CASE("VHCM ramp rows") {
    const Grid g = grid_for(8, 2);
    const double h = g.h();
    const LinearSystem sys = assemble(g, catalog_get("quartic_mixed"), CouplingScheme::of(SchemeKind::vhcm));
    REQUIRE(sys.matrix.rows() == 51);
    // 1-based row 19 is the m_eff = 1 row next to a
    CHECK(sys.matrix(18, 17) == doctest::Approx(-1 / (h * h)));
    CHECK(sys.matrix(18, 18) == doctest::Approx(2 / (h * h)));
    CHECK(sys.matrix.row_nonzeros(18) == 3);
    CHECK(sys.matrix.row_nonzeros(19) == 5);
    CHECK(sys.matrix.row_nonzeros(32) == 3);

    GridConfig wide;
    wide.m = 4;
    wide.h = 1.0 / 32;
    const LinearSystem m4 = assemble(build_grid(wide), catalog_get("quartic_mixed"),
                                     CouplingScheme::of(SchemeKind::vhcm));
    // rows next to a have m_eff = 1, 2, 3, 4
    for (int j = 1; j <= 5; ++j) {
        const std::size_t row = static_cast<std::size_t>(33 + j);
        CHECK(m4.matrix.row_nonzeros(row) == static_cast<std::size_t>(2 * std::min(j, 4) + 1));
        // kappa_bar delta_v^2 / 2 = E: the row reproduces -u'' on quadratics
        double second_moment = 0.0;
        for (std::size_t c = 0; c < m4.matrix.cols(); ++c) {
            const double off = static_cast<double>(c) - static_cast<double>(row);
            second_moment += m4.matrix(row, c) * off * off * wide.h * wide.h;
        }
        CHECK(second_moment == doctest::Approx(-2.0));
    }
}

TEST_CASE("cubic patch test for every scheme, BC and m") {
    for (const char* name : {"cubic_mixed", "cubic_dirichlet"}) {
        const auto p = catalog_get(name);
        for (int m : {1, 2, 4, 8}) {
            const Grid g = grid_for(8, m);
            for (auto kind : {SchemeKind::fdm, SchemeKind::mdcm, SchemeKind::mscm, SchemeKind::vhcm}) {
                CAPTURE(name);
                CAPTURE(m);
                CAPTURE(to_string(kind));
                const Solution s = solve(g, p, CouplingScheme::of(kind));
                CHECK(max_nodal_error(s, p.u_exact) <= 1e-8 * 27);
            }
        }
    }
}

TEST_CASE("kappa override") {
    const Grid g = grid_for(8, 2);
    const auto p = catalog_get("cubic_mixed");
    CouplingScheme s = CouplingScheme::of(SchemeKind::mdcm);
    s.kappa_override = 120.0;
    const LinearSystem scaled = assemble(g, p, s);
    const LinearSystem nominal = assemble(g, p, CouplingScheme::of(SchemeKind::mdcm));
    for (std::size_t i = 0; i < nominal.matrix.rows(); ++i) {
        const double factor = nominal.row_labels[i] == RowLabel::pd_interior ? 120.0 / 128.0 : 1.0;
        for (std::size_t j = 0; j < nominal.matrix.cols(); ++j) {
            CHECK(scaled.matrix(i, j) == doctest::Approx(nominal.matrix(i, j) * factor));
        }
    }
    const Solution a = solve_system(g, nominal, SchemeKind::mdcm);
    const Solution b = solve_system(g, scaled, SchemeKind::mdcm);
    double diff = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        diff = std::max(diff, std::abs(a.values[i] - b.values[i]));
    }
    CHECK(diff > 1e-6);

    s.kappa_override = 0.0;
    CHECK(assembly_error(g, p, s) == ErrorCode::invalid_config);
    s.kappa_override = -5.0;
    CHECK(assembly_error(g, p, s) == ErrorCode::invalid_config);
}

TEST_CASE("precondition failures") {
    const auto p = catalog_get("quartic_mixed");
    // MSCM needs n1, n2 >= m + 3
    CHECK(assembly_error(grid_for(2, 4, 0.5, 2.0), p, CouplingScheme::of(SchemeKind::mscm)) ==
          ErrorCode::stencil_out_of_range);
    // VHCM needs n_delta >= 2m + 2
    CHECK(assembly_error(grid_for(8, 4, 1.0, 1.25), p, CouplingScheme::of(SchemeKind::vhcm)) ==
          ErrorCode::domain_too_narrow);

    const Grid g = grid_for(8, 2);
    CHECK_THROWS_AS(assemble_mdcm(g, DofMap(g, NumberingKind::no_overlap), p, CouplingScheme::of(SchemeKind::mdcm)),
                    Error);
    try {
        assemble_vhcm(g, DofMap(g, NumberingKind::overlap), p, CouplingScheme::of(SchemeKind::vhcm));
        FAIL("expected InconsistentDofMap");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::inconsistent_dof_map);
    }

    GridConfig other;
    other.ell = 4.0;
    CHECK(assembly_error(build_grid(other), p, CouplingScheme::of(SchemeKind::mdcm)) == ErrorCode::invalid_config);
}

TEST_CASE("sparsity bound and nonzero rows") {
    for (int m : {1, 2, 4, 8}) {
        const Grid g = grid_for(8, m);
        for (auto kind : {SchemeKind::fdm, SchemeKind::mdcm, SchemeKind::mscm, SchemeKind::vhcm}) {
            const LinearSystem sys = assemble(g, catalog_get("quartic_dirichlet"), CouplingScheme::of(kind));
            const std::size_t cap = static_cast<std::size_t>(std::max({5, 2 * m + 1, 8}));
            for (std::size_t i = 0; i < sys.matrix.rows(); ++i) {
                CHECK(sys.matrix.row_nonzeros(i) >= 1);
                CHECK(sys.matrix.row_nonzeros(i) <= cap);
            }
        }
    }
}

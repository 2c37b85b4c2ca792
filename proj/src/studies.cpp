#include "peri_couple/studies.hpp"

#include "peri_couple/error.hpp"

#include <omp.h>

#include <chrono>
#include <cmath>
#include <exception>

namespace peri_couple {

std::optional<VReference> v_reference_for(SchemeKind scheme, const ManufacturedProblem& problem,
                                          const GridConfig& grid) {
    if (scheme == SchemeKind::fdm) {
        return std::nullopt;
    }
    const auto profile = scheme == SchemeKind::vhcm ? HorizonProfile::vhcm_ramp : HorizonProfile::constant;
    return VReference(problem.bc.kind, {grid.a, grid.b, grid.ell}, problem.lambda4, grid.delta(), profile);
}

void validate_case(const CaseSpec& spec) {
    const ManufacturedProblem problem = catalog_get(spec.problem);
    check_preconditions(build_grid(spec.grid), problem, spec.scheme);
}

StudyResult run_case(const CaseSpec& spec) {
    const auto start = std::chrono::steady_clock::now();
    const ManufacturedProblem problem = catalog_get(spec.problem);
    const Grid grid = build_grid(spec.grid);

    const LinearSystem system = assemble(grid, problem, spec.scheme);
    const Solution coupled = solve_system(grid, system, spec.scheme.kind);
    const Solution fdm = spec.scheme.kind == SchemeKind::fdm ? coupled : solve(grid, problem, CouplingScheme::of(SchemeKind::fdm));

    StudyResult r;
    r.scheme = spec.scheme.kind;
    r.delta = spec.grid.delta();
    r.m = spec.grid.m;
    r.delta_max = delta_max(delta_field(coupled, fdm));
    r.exact_error = max_nodal_error(coupled, problem.u_exact);
    if (const auto v = v_reference_for(spec.scheme.kind, problem, spec.grid)) {
        r.v_max = v->v_max();
        if (r.v_max > 0.0) {
            r.relative_error = relative_error(r.delta_max, r.v_max);
        }
    }
    if (spec.with_condition) {
        r.condition = condition_number_2(system.matrix);
    }
    r.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

namespace {

template <typename Result, typename Fn>
std::vector<Result> parallel_cases(const std::vector<CaseSpec>& specs, int max_threads, Fn&& fn) {
    const auto count = static_cast<int>(specs.size());
    std::vector<std::optional<Result>> results(specs.size());
    std::vector<std::exception_ptr> failures(specs.size());
    int threads = max_threads > 0 ? std::min(max_threads, count) : count;
    threads = std::max(1, std::min(threads, omp_get_max_threads()));
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (int c = 0; c < count; ++c) {
        const auto idx = static_cast<std::size_t>(c);
        try {
            results[idx].emplace(fn(specs[idx]));
        } catch (...) {
            failures[idx] = std::current_exception();
        }
    }
    for (const auto& f : failures) {
        if (f) {
            std::rethrow_exception(f);
        }
    }
    std::vector<Result> out;
    out.reserve(results.size());
    for (auto& r : results) {
        out.push_back(std::move(*r));
    }
    return out;
}

ErrorField error_field(const CaseSpec& spec) {
    const ManufacturedProblem problem = catalog_get(spec.problem);
    const Grid grid = build_grid(spec.grid);
    return delta_field(solve(grid, problem, spec.scheme), solve(grid, problem, CouplingScheme::of(SchemeKind::fdm)));
}

} // namespace

std::vector<StudyResult> run_cases(const std::vector<CaseSpec>& specs, int max_threads) {
    return parallel_cases<StudyResult>(specs, max_threads, run_case);
}

std::vector<ErrorField> error_fields(const std::vector<CaseSpec>& specs, int max_threads) {
    return parallel_cases<ErrorField>(specs, max_threads, error_field);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw Error(ErrorCode::invalid_config, "slope fit needs two or more paired samples");
    }
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
            throw Error(ErrorCode::invalid_config, "log-log fit needs positive samples");
        }
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) {
        throw Error(ErrorCode::invalid_config, "slope fit needs distinct x values");
    }
    return (n * sxy - sx * sy) / denom;
}

ConvergenceResult convergence_study(const CouplingScheme& scheme, const std::string& problem,
                                    const GridConfig& geometry, int m, const std::vector<double>& deltas,
                                    int max_threads) {
    if (deltas.size() < 3) {
        throw Error(ErrorCode::invalid_config, "convergence study needs at least 3 horizons");
    }
    std::vector<CaseSpec> specs;
    for (double d : deltas) {
        GridConfig g = geometry;
        g.m = m;
        g.h = d / m;
        specs.push_back({scheme, problem, g});
    }
    ConvergenceResult out;
    out.results = run_cases(specs, max_threads);
    std::vector<double> errors;
    for (const auto& r : out.results) {
        errors.push_back(scheme.kind == SchemeKind::fdm ? r.exact_error : r.delta_max);
    }
    out.slope = loglog_slope(deltas, errors);
    return out;
}

std::vector<StudyResult> m_study(const CouplingScheme& scheme, const std::string& problem,
                                 const GridConfig& geometry, double delta, const std::vector<int>& ms,
                                 int max_threads) {
    std::vector<CaseSpec> specs;
    for (int m : ms) {
        GridConfig g = geometry;
        g.m = m;
        g.h = delta / m;
        specs.push_back({scheme, problem, g});
    }
    return run_cases(specs, max_threads);
}

} // namespace peri_couple

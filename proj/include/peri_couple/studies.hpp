#pragma once

#include "peri_couple/analysis.hpp"
#include "peri_couple/v_reference.hpp"

#include <optional>
#include <string>
#include <vector>

namespace peri_couple {

struct CaseSpec {
    CouplingScheme scheme;
    std::string problem;
    GridConfig grid; ///< h and m; delta = m h
    bool with_condition = false;
};

struct StudyResult {
    SchemeKind scheme = SchemeKind::fdm;
    double delta = 0.0;
    int m = 0;
    double delta_max = 0.0;
    double v_max = 0.0;
    std::optional<double> relative_error; ///< empty when v_max == 0
    double exact_error = 0.0;             ///< max nodal |u_h - u_exact|
    std::optional<ConditionEstimate> condition;
    double runtime_seconds = 0.0;
};

/// Modeling-error reference matching the scheme's horizon profile: constant
/// for MDCM and MSCM, ramped for VHCM; none (v = 0) for FDM.
std::optional<VReference> v_reference_for(SchemeKind scheme, const ManufacturedProblem& problem,
                                          const GridConfig& grid);

/// Throws the error run_case would raise before any solve: unknown problem,
/// inadmissible grid or scheme preconditions.
void validate_case(const CaseSpec& spec);

/// Solves the case and the FDM baseline on the same grid.
StudyResult run_case(const CaseSpec& spec);

/// Runs independent cases across OpenMP threads (at most max_threads when
/// positive). Results keep the input order. The first failing case, in input
/// order, is rethrown after all cases finish.
std::vector<StudyResult> run_cases(const std::vector<CaseSpec>& specs, int max_threads = 0);

/// Delta fields for independent cases, in input order, computed in parallel
/// like run_cases.
std::vector<ErrorField> error_fields(const std::vector<CaseSpec>& specs, int max_threads = 0);

/// Unweighted least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct ConvergenceResult {
    std::vector<StudyResult> results;
    double slope = 0.0; ///< of delta_max (exact_error for FDM) against delta
};

/// m fixed, delta -> 0. Needs at least 3 deltas.
ConvergenceResult convergence_study(const CouplingScheme& scheme, const std::string& problem,
                                    const GridConfig& geometry, int m, const std::vector<double>& deltas,
                                    int max_threads = 0);

/// delta fixed, m increasing.
std::vector<StudyResult> m_study(const CouplingScheme& scheme, const std::string& problem,
                                 const GridConfig& geometry, double delta, const std::vector<int>& ms,
                                 int max_threads = 0);

} // namespace peri_couple

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace peri_couple {

enum class ErrorCode {
    invalid_config,
    non_divisible_spacing,
    overlap_out_of_domain,
    inconsistent_dof_map,
    stencil_out_of_range,
    domain_too_narrow,
    singular_matrix,
    no_convergence,
    unknown_problem,
    grid_mismatch,
    division_by_zero,
    quadrature_failure,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// that callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::invalid_config: return "InvalidConfig";
    case ErrorCode::non_divisible_spacing: return "NonDivisibleSpacing";
    case ErrorCode::overlap_out_of_domain: return "OverlapOutOfDomain";
    case ErrorCode::inconsistent_dof_map: return "InconsistentDofMap";
    case ErrorCode::stencil_out_of_range: return "StencilOutOfRange";
    case ErrorCode::domain_too_narrow: return "DomainTooNarrow";
    case ErrorCode::singular_matrix: return "SingularMatrix";
    case ErrorCode::no_convergence: return "NoConvergence";
    case ErrorCode::unknown_problem: return "UnknownProblem";
    case ErrorCode::grid_mismatch: return "GridMismatch";
    case ErrorCode::division_by_zero: return "DivisionByZero";
    case ErrorCode::quadrature_failure: return "QuadratureFailure";
    }
    return "Unknown";
}

} // namespace peri_couple

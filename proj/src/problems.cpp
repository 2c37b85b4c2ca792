#include "peri_couple/problems.hpp"

#include "peri_couple/error.hpp"

#include <cmath>

namespace peri_couple {

std::string_view to_string(BcKind kind) noexcept {
    return kind == BcKind::mixed ? "mixed" : "dirichlet";
}

namespace {

constexpr double kEll = 3.0;
constexpr double kE = 1.0;

ManufacturedProblem cubic_mixed() {
    ManufacturedProblem p;
    p.name = "cubic_mixed";
    p.u_exact = [](double x) { return x * x * x; };
    p.du_exact = [](double x) { return 3.0 * x * x; };
    p.f_b = [](double x) { return -kE * 6.0 * x; };
    p.bc = {BcKind::mixed, kE * 3.0 * kEll * kEll};
    p.lambda4 = 0.0;
    return p;
}

// u = c x (3 - 2x)(3 - x) = c (2x^3 - 9x^2 + 9x), c = 2 / (3 sqrt 3)
ManufacturedProblem cubic_dirichlet() {
    const double c = 2.0 / (3.0 * std::sqrt(3.0));
    ManufacturedProblem p;
    p.name = "cubic_dirichlet";
    p.u_exact = [c](double x) { return c * x * (3.0 - 2.0 * x) * (3.0 - x); };
    p.du_exact = [c](double x) { return c * (6.0 * x * x - 18.0 * x + 9.0); };
    p.f_b = [](double x) { return -kE * (2.0 / std::sqrt(3.0)) * (-6.0 + 4.0 * x); };
    p.bc = {BcKind::dirichlet_both, 0.0};
    p.lambda4 = 0.0;
    return p;
}

ManufacturedProblem quartic_mixed() {
    ManufacturedProblem p;
    p.name = "quartic_mixed";
    p.u_exact = [](double x) { return x * x * x * x; };
    p.du_exact = [](double x) { return 4.0 * x * x * x; };
    p.f_b = [](double x) { return -kE * 12.0 * x * x; };
    p.bc = {BcKind::mixed, kE * 4.0 * kEll * kEll * kEll};
    p.lambda4 = 24.0;
    return p;
}

// u = (16/81) x^2 (3 - x)^2, symmetric about x = 3/2
ManufacturedProblem quartic_dirichlet() {
    ManufacturedProblem p;
    p.name = "quartic_dirichlet";
    p.u_exact = [](double x) {
        const double s = x * (3.0 - x);
        return 16.0 / 81.0 * s * s;
    };
    p.du_exact = [](double x) { return 32.0 / 81.0 * x * (3.0 - x) * (3.0 - 2.0 * x); };
    p.f_b = [](double x) { return -kE * (32.0 / 9.0 - 64.0 * x / 9.0 + 64.0 * x * x / 27.0); };
    p.bc = {BcKind::dirichlet_both, 0.0};
    p.lambda4 = 128.0 / 27.0;
    return p;
}

} // namespace

ManufacturedProblem catalog_get(std::string_view name) {
    if (name == "cubic_mixed") {
        return cubic_mixed();
    }
    if (name == "cubic_dirichlet") {
        return cubic_dirichlet();
    }
    if (name == "quartic_mixed") {
        return quartic_mixed();
    }
    if (name == "quartic_dirichlet") {
        return quartic_dirichlet();
    }
    throw Error(ErrorCode::unknown_problem, "no manufactured problem named '" + std::string(name) + "'");
}

std::vector<std::string> catalog_names() {
    return {"cubic_mixed", "cubic_dirichlet", "quartic_mixed", "quartic_dirichlet"};
}

} // namespace peri_couple

#include "peri_couple/stencils.hpp"

#include "peri_couple/error.hpp"

#include <numeric>
#include <stdexcept>

namespace peri_couple {

double Stencil::weight_at(int offset) const noexcept {
    for (std::size_t j = 0; j < offsets.size(); ++j) {
        if (offsets[j] == offset) {
            return weight(j);
        }
    }
    return 0.0;
}

double Stencil::sum() const noexcept {
    return scale * std::accumulate(coefficients.begin(), coefficients.end(), 0.0);
}

double Stencil::apply(std::span<const double> values, std::size_t center) const {
    double acc = 0.0;
    for (std::size_t j = 0; j < offsets.size(); ++j) {
        const auto pos = static_cast<std::ptrdiff_t>(center) + offsets[j];
        if (pos < 0 || static_cast<std::size_t>(pos) >= values.size()) {
            throw std::out_of_range("stencil reaches outside the sampled values");
        }
        acc += coefficients[j] * values[static_cast<std::size_t>(pos)];
    }
    return scale * acc;
}

Stencil central_second_difference(double E, double h) {
    return {{-1, 0, 1}, {-1.0, 2.0, -1.0}, E / (h * h)};
}

Stencil one_sided_third_order(Direction direction, double h) {
    if (direction == Direction::forward) {
        return {{0, 1, 2, 3}, {-11.0, 18.0, -9.0, 2.0}, 1.0 / (6.0 * h)};
    }
    return {{-3, -2, -1, 0}, {-2.0, 9.0, -18.0, 11.0}, 1.0 / (6.0 * h)};
}

Stencil peridynamic_row(const PdStencilParams& p) {
    if (p.m_eff < 1) {
        throw Error(ErrorCode::invalid_config, "peridynamic stencil needs m_eff >= 1");
    }
    const int m = p.m_eff;
    Stencil s;
    s.scale = p.kappa;
    s.offsets.reserve(static_cast<std::size_t>(2 * m + 1));
    s.coefficients.assign(static_cast<std::size_t>(2 * m + 1), 0.0);
    for (int offset = -m; offset <= m; ++offset) {
        s.offsets.push_back(offset);
    }
    double diagonal = 0.0;
    for (int j = 1; j <= m; ++j) {
        // trapezoid weight h times the kernel 1 / (j h)
        const double w = (j < m) ? -1.0 / j : -1.0 / (2.0 * m);
        s.coefficients[static_cast<std::size_t>(m - j)] = w;
        s.coefficients[static_cast<std::size_t>(m + j)] = w;
        diagonal -= 2.0 * w;
    }
    s.coefficients[static_cast<std::size_t>(m)] = diagonal;
    return s;
}

Stencil discrete_stress_row(Side side, double kappa, double delta, double h) {
    Stencil s = one_sided_third_order(side == Side::plus ? Direction::forward : Direction::backward, h);
    s.scale *= kappa * delta * delta / 2.0;
    return s;
}

} // namespace peri_couple

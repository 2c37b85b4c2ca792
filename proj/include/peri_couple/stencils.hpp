#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace peri_couple {

/// A row stencil: coefficient scale * coefficients[j] multiplies the unknown
/// at (center + offsets[j]). Offsets are strictly increasing.
struct Stencil {
    std::vector<int> offsets;
    std::vector<double> coefficients;
    double scale = 1.0;

    std::size_t size() const noexcept { return offsets.size(); }
    double weight(std::size_t j) const noexcept { return scale * coefficients[j]; }
    double weight_at(int offset) const noexcept;
    double sum() const noexcept;

    /// Applies the stencil to nodal samples; values[center + offset] must exist.
    double apply(std::span<const double> values, std::size_t center) const;
};

/// Row of -E u'' ~ (E / h^2) (-u_{i-1} + 2 u_i - u_{i+1}).
Stencil central_second_difference(double E, double h);

enum class Direction { forward, backward };

/// Third-order one-sided approximation of u' (exact for cubics):
///   forward  (-11, 18, -9, 2) / (6h) on offsets 0..3
///   backward (-2, 9, -18, 11) / (6h) on offsets -3..0
Stencil one_sided_third_order(Direction direction, double h);

struct PdStencilParams {
    double kappa;
    int m_eff;
    double h;
};

/// Collocated bond-based operator -int kappa (u(y) - u(x)) / |y - x| dy over
/// |y - x| <= m_eff h, integrated by the composite trapezoid rule on the grid.
/// The node y = x contributes nothing; the end nodes carry half weight. The
/// resulting weights are -kappa / j for 1 <= j < m_eff and -kappa / (2 m_eff)
/// at j = m_eff, with the diagonal balancing the row to zero.
Stencil peridynamic_row(const PdStencilParams& params);

enum class Side { plus, minus };

/// Discrete nonlocal stress sigma_h^+ / sigma_h^-: the one-sided third-order
/// derivative (forward for plus, backward for minus) scaled by kappa delta^2 / 2.
Stencil discrete_stress_row(Side side, double kappa, double delta, double h);

} // namespace peri_couple

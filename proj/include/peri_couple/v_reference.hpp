#pragma once

#include "peri_couple/problems.hpp"

#include <vector>

namespace peri_couple {

enum class HorizonProfile {
    constant,  ///< delta on (a, b)
    vhcm_ramp, ///< min(x - a, delta, b - x) on (a, b)
};

struct VGeometry {
    double a = 1.0;
    double b = 2.0;
    double ell = 3.0;
};

/// Modeling-error reference: the solution of
///   v'' = -lambda p(x)^2 / 24 on (a, b),   v'' = 0 elsewhere,
/// with v, v' continuous at the breakpoints, v(0) = 0 and either v'(ell) = 0
/// (mixed) or v(ell) = 0 (dirichlet_both). p is the horizon profile.
class VReference {
public:
    VReference(BcKind bc, const VGeometry& geometry, double lambda, double delta, HorizonProfile profile);

    double evaluate(double x) const;
    double derivative(double x) const;

    double v_max() const noexcept { return v_max_; }
    double argmax() const noexcept { return argmax_; }

    /// Breakpoints of the piecewise quartic, including 0 and ell.
    std::vector<double> breakpoints() const;

private:
    struct Piece {
        double left;
        double right;
        double alpha; ///< p(left + t) = alpha + beta t
        double beta;
        double c0 = 0.0;
        double c1 = 0.0;
    };

    const Piece& piece_at(double x) const;
    double value(const Piece& s, double t) const;
    double slope(const Piece& s, double t) const;

    double lambda_;
    std::vector<Piece> pieces_;
    double v_max_ = 0.0;
    double argmax_ = 0.0;
};

} // namespace peri_couple

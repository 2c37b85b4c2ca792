#include "peri_couple/v_reference.hpp"

#include "peri_couple/dense_linalg.hpp"
#include "peri_couple/error.hpp"

#include <algorithm>
#include <cmath>

namespace peri_couple {

VReference::VReference(BcKind bc, const VGeometry& g, double lambda, double delta, HorizonProfile profile)
    : lambda_(lambda) {
    if (!(0.0 < g.a && g.a < g.b && g.b < g.ell)) {
        throw Error(ErrorCode::invalid_config, "v reference needs 0 < a < b < ell");
    }
    if (!(lambda >= 0.0) || !(delta > 0.0)) {
        throw Error(ErrorCode::invalid_config, "v reference needs lambda >= 0 and delta > 0");
    }
    auto push = [this](double left, double right, double alpha, double beta) {
        if (right > left) {
            pieces_.push_back({left, right, alpha, beta});
        }
    };
    push(0.0, g.a, 0.0, 0.0);
    if (profile == HorizonProfile::constant) {
        push(g.a, g.b, delta, 0.0);
    } else {
        const double ramp = std::min(delta, (g.b - g.a) / 2.0);
        push(g.a, g.a + ramp, 0.0, 1.0);
        push(g.a + ramp, g.b - ramp, delta, 0.0);
        push(g.b - ramp, g.b, ramp, -1.0);
    }
    push(g.b, g.ell, 0.0, 0.0);

    // Unknowns (c0, c1) per piece: v(0) = 0, C1 continuity, right BC.
    const std::size_t S = pieces_.size();
    DenseMatrix A(2 * S, 2 * S);
    std::vector<double> rhs(2 * S, 0.0);
    std::size_t row = 0;
    A(row++, 0) = 1.0;
    for (std::size_t s = 0; s + 1 < S; ++s) {
        const Piece& p = pieces_[s];
        const double w = p.right - p.left;
        // v_s(w) = v_{s+1}(0)
        A(row, 2 * s) = 1.0;
        A(row, 2 * s + 1) = w;
        A(row, 2 * s + 2) = -1.0;
        rhs[row++] = -value(p, w);
        // v_s'(w) = v_{s+1}'(0)
        A(row, 2 * s + 1) = 1.0;
        A(row, 2 * s + 3) = -1.0;
        rhs[row++] = -slope(p, w);
    }
    const Piece& last = pieces_.back();
    const double w = last.right - last.left;
    if (bc == BcKind::mixed) {
        A(row, 2 * S - 1) = 1.0;
        rhs[row] = -slope(last, w);
    } else {
        A(row, 2 * S - 2) = 1.0;
        A(row, 2 * S - 1) = w;
        rhs[row] = -value(last, w);
    }
    const auto c = lu_solve(A, rhs);
    for (std::size_t s = 0; s < S; ++s) {
        pieces_[s].c0 = c[2 * s];
        pieces_[s].c1 = c[2 * s + 1];
    }

    // v is concave, so its maximum sits where v' changes sign.
    argmax_ = 0.0;
    v_max_ = 0.0;
    for (const Piece& p : pieces_) {
        const double wp = p.right - p.left;
        double t = 0.0;
        if (slope(p, wp) >= 0.0) {
            t = wp;
        } else if (slope(p, 0.0) > 0.0) {
            double lo = 0.0, hi = wp;
            for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, p.right); ++it) {
                const double mid = 0.5 * (lo + hi);
                (slope(p, mid) > 0.0 ? lo : hi) = mid;
            }
            t = 0.5 * (lo + hi);
        }
        const double v = value(p, t);
        if (v > v_max_) {
            v_max_ = v;
            argmax_ = p.left + t;
        }
    }
}

double VReference::value(const Piece& s, double t) const {
    const double a = s.alpha, b = s.beta;
    const double particular = -lambda_ / 24.0 *
                              (a * a * t * t / 2.0 + a * b * t * t * t / 3.0 + b * b * t * t * t * t / 12.0);
    return particular + s.c0 + s.c1 * t;
}

double VReference::slope(const Piece& s, double t) const {
    const double a = s.alpha, b = s.beta;
    const double particular = -lambda_ / 24.0 * (a * a * t + a * b * t * t + b * b * t * t * t / 3.0);
    return particular + s.c1;
}

const VReference::Piece& VReference::piece_at(double x) const {
    for (const Piece& p : pieces_) {
        if (x <= p.right) {
            return p;
        }
    }
    return pieces_.back();
}

double VReference::evaluate(double x) const {
    const Piece& p = piece_at(x);
    return value(p, x - p.left);
}

double VReference::derivative(double x) const {
    const Piece& p = piece_at(x);
    return slope(p, x - p.left);
}

std::vector<double> VReference::breakpoints() const {
    std::vector<double> out;
    for (const Piece& p : pieces_) {
        out.push_back(p.left);
    }
    out.push_back(pieces_.back().right);
    return out;
}

} // namespace peri_couple

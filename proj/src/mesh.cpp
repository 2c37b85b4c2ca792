#include "peri_couple/mesh.hpp"

#include "peri_couple/error.hpp"

#include <cmath>
#include <sstream>

namespace peri_couple {

Grid::Grid(const GridConfig& config, int n1, int n_delta, int n2)
    : config_(config), n1_(n1), n_delta_(n_delta), n2_(n2) {
    nodes_.resize(static_cast<std::size_t>(n() + 1));
    for (int k = 0; k <= n(); ++k) {
        nodes_[static_cast<std::size_t>(k)] = x(k);
    }
}

bool Grid::same_layout(const Grid& other) const noexcept {
    return n1_ == other.n1_ && n_delta_ == other.n_delta_ && n2_ == other.n2_ &&
           config_.h == other.config_.h;
}

std::optional<int> exact_ratio(double x, double h) noexcept {
    if (!(h > 0.0) || !std::isfinite(x)) {
        return std::nullopt;
    }
    const double ratio = x / h;
    const double nearest = std::round(ratio);
    if (nearest < 1.0 || std::abs(ratio - nearest) >= 1e-12 * ratio) {
        return std::nullopt;
    }
    return static_cast<int>(nearest);
}

Grid build_grid(const GridConfig& c) {
    if (!(c.ell > 0.0) || !(c.a > 0.0) || !(c.b > c.a) || !(c.ell > c.b)) {
        std::ostringstream msg;
        msg << "require 0 < a < b < ell, got a=" << c.a << " b=" << c.b << " ell=" << c.ell;
        throw Error(ErrorCode::invalid_config, msg.str());
    }
    if (!(c.h > 0.0)) {
        throw Error(ErrorCode::invalid_config, "grid spacing h must be positive");
    }
    if (c.m < 1) {
        throw Error(ErrorCode::invalid_config, "horizon ratio m must be a positive integer");
    }
    const auto n1 = exact_ratio(c.a, c.h);
    const auto n_delta = exact_ratio(c.b - c.a, c.h);
    const auto n2 = exact_ratio(c.ell - c.b, c.h);
    if (!n1 || !n_delta || !n2) {
        std::ostringstream msg;
        msg << "h=" << c.h << " must divide a=" << c.a << ", b-a=" << (c.b - c.a)
            << " and ell-b=" << (c.ell - c.b);
        throw Error(ErrorCode::non_divisible_spacing, msg.str());
    }
    // Overlaps [a - m h, a] and [b, b + m h] must lie inside the domain.
    if (*n1 < c.m || *n2 < c.m) {
        std::ostringstream msg;
        msg << "overlaps of width delta=" << c.delta() << " do not fit in (0, " << c.ell << ")";
        throw Error(ErrorCode::overlap_out_of_domain, msg.str());
    }
    return Grid(c, *n1, *n_delta, *n2);
}

std::string_view to_string(Model model) noexcept {
    return model == Model::local ? "local" : "peridynamic";
}

DofMap::DofMap(const Grid& grid, NumberingKind kind)
    : kind_(kind),
      width_(kind == NumberingKind::overlap ? grid.m() : 0),
      n1_grid_(grid.n1()),
      n_delta_grid_(grid.n_delta()),
      n_grid_(grid.n()) {
    if (kind == NumberingKind::plain) {
        n_first_ = grid.n() + 1;
        n_delta_ = 0;
        n_second_ = 0;
    } else {
        n_first_ = grid.n1() + 1;
        n_delta_ = grid.n_delta() + 1 + 2 * width_;
        n_second_ = grid.n2() + 1;
    }
}

DofSite DofMap::site(int index) const {
    if (index < 0 || index >= N()) {
        throw Error(ErrorCode::inconsistent_dof_map, "dof index out of range");
    }
    if (index < n_first_) {
        return {Model::local, index};
    }
    // 0-based forms of k = i - 2 - w and k = i - 3 - 2w.
    if (index < n_first_ + n_delta_) {
        return {Model::peridynamic, index - 1 - width_};
    }
    return {Model::local, index - 2 - 2 * width_};
}

std::optional<int> DofMap::find(Model model, int k) const noexcept {
    if (k < 0 || k > n_grid_) {
        return std::nullopt;
    }
    if (kind_ == NumberingKind::plain) {
        return model == Model::local ? std::optional<int>(k) : std::nullopt;
    }
    const int a = n1_grid_;
    const int b = n1_grid_ + n_delta_grid_;
    if (model == Model::local) {
        if (k <= a) {
            return k;
        }
        if (k >= b) {
            return k + 2 + 2 * width_;
        }
        return std::nullopt;
    }
    if (k >= a - width_ && k <= b + width_) {
        return k + 1 + width_;
    }
    return std::nullopt;
}

int DofMap::at(Model model, int k) const {
    const auto dof = find(model, k);
    if (!dof) {
        throw Error(ErrorCode::inconsistent_dof_map,
                    std::string("no ") + std::string(to_string(model)) + " dof at grid index " +
                        std::to_string(k));
    }
    return *dof;
}

int DofMap::owner(int k) const noexcept {
    if (kind_ == NumberingKind::plain) {
        return k;
    }
    if (k > n1_grid_ && k < n1_grid_ + n_delta_grid_) {
        return *find(Model::peridynamic, k);
    }
    return *find(Model::local, k);
}

} // namespace peri_couple

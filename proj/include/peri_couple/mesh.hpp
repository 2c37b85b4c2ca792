#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace peri_couple {

/// Geometry of the bar (0, ell) with interfaces a < b, uniform spacing h and
/// horizon ratio m (the horizon is delta = m * h).
struct GridConfig {
    double ell = 3.0;
    double a = 1.0;
    double b = 2.0;
    double h = 1.0 / 16.0;
    int m = 2;

    double delta() const noexcept { return m * h; }
};

/// Uniform grid x_k = k h, k = 0..n, with node n1 at a and node n1 + n_delta at b.
class Grid {
public:
    explicit Grid(const GridConfig& config, int n1, int n_delta, int n2);

    const GridConfig& config() const noexcept { return config_; }
    int n1() const noexcept { return n1_; }
    int n_delta() const noexcept { return n_delta_; }
    int n2() const noexcept { return n2_; }
    int n() const noexcept { return n1_ + n_delta_ + n2_; }
    double h() const noexcept { return config_.h; }
    int m() const noexcept { return config_.m; }
    double delta() const noexcept { return config_.delta(); }

    /// Index of the node at x = a and x = b.
    int node_a() const noexcept { return n1_; }
    int node_b() const noexcept { return n1_ + n_delta_; }

    double x(int k) const noexcept { return k * config_.h; }
    const std::vector<double>& nodes() const noexcept { return nodes_; }

    bool same_layout(const Grid& other) const noexcept;

private:
    GridConfig config_;
    int n1_;
    int n_delta_;
    int n2_;
    std::vector<double> nodes_;
};

/// Throws Error{non_divisible_spacing} or Error{overlap_out_of_domain}.
Grid build_grid(const GridConfig& config);

/// Rounds x / h to an integer if it is one within 1e-12 relative.
std::optional<int> exact_ratio(double x, double h) noexcept;

enum class Model { local, peridynamic };

std::string_view to_string(Model model) noexcept;

/// plain: single-model FDM numbering (n+1 dofs).
/// overlap: dofs duplicated on the closed overlaps [a - delta, a] and [b, b + delta].
/// no_overlap: dofs duplicated only at a and b.
enum class NumberingKind { plain, overlap, no_overlap };

struct DofSite {
    Model model;
    int k; ///< grid index

    bool operator==(const DofSite&) const = default;
};

/// Correspondence between global dof indices and grid points.
///
/// Indices are 0-based here; the 1-based index used in reports is index + 1.
/// Block layout (1-based, w = m for overlap, 0 for no_overlap):
///   i in [1, N1]                -> local,       k = i - 1
///   i in [N1 + 1, N1 + N_delta] -> peridynamic, k = i - 2 - w
///   i in [N1 + N_delta + 1, N]  -> local,       k = i - 3 - 2w
class DofMap {
public:
    DofMap(const Grid& grid, NumberingKind kind);

    NumberingKind kind() const noexcept { return kind_; }
    int width() const noexcept { return width_; }
    int N1() const noexcept { return n_first_; }
    int N_delta() const noexcept { return n_delta_; }
    int N2() const noexcept { return n_second_; }
    int N() const noexcept { return n_first_ + n_delta_ + n_second_; }

    DofSite site(int index) const;

    /// Dof holding the given model's value at grid point k, if any.
    std::optional<int> find(Model model, int k) const noexcept;
    int at(Model model, int k) const;

    /// Dof whose value represents the solution at x_k: the local dof on
    /// [0, a] and [b, ell], the peridynamic dof on (a, b).
    int owner(int k) const noexcept;

private:
    NumberingKind kind_;
    int width_;
    int n1_grid_;
    int n_delta_grid_;
    int n_grid_;
    int n_first_;
    int n_delta_;
    int n_second_;
};

} // namespace peri_couple

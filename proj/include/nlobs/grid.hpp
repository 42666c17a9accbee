#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace nlobs {

using Point = std::array<double, 2>;
using Lattice = std::array<int, 2>;

/// Node indices into a grid, in increasing order unless stated otherwise.
using NodeSet = std::vector<std::size_t>;
/// One byte per node; nonzero means "in the set".
using Mask = std::vector<std::uint8_t>;

enum class ExteriorRule { zero, obstacle };

std::string to_string(ExteriorRule rule);
ExteriorRule exterior_rule_from_string(const std::string& name);

/// Uniform lattice x = h·k over the box [-R, R]^dim (dim = 1 or 2).
///
/// Nodes are stored with the first coordinate varying fastest. The second
/// component of Lattice/Point is ignored in 1D.
struct GridSpec {
    int dim = 1;
    double h = 0.0;
    double R = 0.0;
    ExteriorRule exterior_rule = ExteriorRule::zero;

    /// Grid with R/h = nodes_per_half.
    static GridSpec uniform(int dim, double R, int nodes_per_half,
                            ExteriorRule rule = ExteriorRule::zero);

    /// Throws ConfigError unless h > 0, R > 0, dim in {1,2} and R/h is an integer >= 8.
    void validate() const;

    /// R/h.
    int half() const;
    int side() const { return 2 * half() + 1; }
    std::size_t size() const;

    bool contains(const Lattice& k) const;
    std::size_t index(const Lattice& k) const;
    Lattice lattice(std::size_t index) const;
    Point coordinate(std::size_t index) const;
    Point coordinate(const Lattice& k) const;

    /// Node nearest to p (clamped to the box).
    std::size_t nearest(const Point& p) const;

    bool operator==(const GridSpec& other) const;
};

/// Scalar field sampled on every node of a grid.
class GridFunction {
public:
    GridFunction() = default;
    explicit GridFunction(GridSpec grid, double fill = 0.0);
    GridFunction(GridSpec grid, std::vector<double> values);

    static GridFunction sample(const GridSpec& grid,
                               const std::function<double(const Point&)>& f);

    const GridSpec& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }

    std::span<double> values() { return values_; }
    std::span<const double> values() const { return values_; }

    double& operator[](std::size_t i) { return values_[i]; }
    double operator[](std::size_t i) const { return values_[i]; }

    double max() const;
    double min() const;
    double max_abs() const;

private:
    GridSpec grid_{};
    std::vector<double> values_;
};

/// Field values outside the computational box.
///
/// `value` supplies lattice points beyond the box that fall inside the
/// interaction window; `far_field(node)` supplies the integral
/// ∫_{|y| > window} K(y) u(x + y) dy for box node x. Empty members mean zero.
struct Exterior {
    std::function<double(const Point&)> value;
    std::function<double(std::size_t)> far_field;

    bool is_zero() const { return !value && !far_field; }
};

NodeSet all_nodes(const GridSpec& grid);
NodeSet nodes_where(const GridSpec& grid, const std::function<bool(const Point&)>& pred);
NodeSet mask_to_nodes(const Mask& mask);
Mask nodes_to_mask(const GridSpec& grid, const NodeSet& nodes);

/// Nodes within Euclidean distance r of node `center` (lattice ball, clipped to the box).
NodeSet lattice_ball(const GridSpec& grid, std::size_t center, double r);

double norm(const Point& p, int dim);

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what);

}  // namespace nlobs

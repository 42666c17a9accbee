#include "nlobs/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nlobs/errors.hpp"

namespace nlobs {

std::string to_string(ExteriorRule rule) {
    return rule == ExteriorRule::zero ? "zero" : "obstacle";
}

ExteriorRule exterior_rule_from_string(const std::string& name) {
    if (name == "zero") return ExteriorRule::zero;
    if (name == "obstacle" || name == "mirror-of-obstacle-decay") return ExteriorRule::obstacle;
    throw ConfigError("unknown exterior rule '" + name + "'");
}

GridSpec GridSpec::uniform(int dim, double R, int nodes_per_half, ExteriorRule rule) {
    GridSpec g{dim, R / nodes_per_half, R, rule};
    g.validate();
    return g;
}

void GridSpec::validate() const {
    if (dim != 1 && dim != 2) throw ConfigError("grid dim must be 1 or 2");
    if (!(h > 0.0) || !(R > 0.0)) throw ConfigError("grid needs h > 0 and R > 0");
    const double ratio = R / h;
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, rounded))
        throw ConfigError("R/h must be an integer");
    if (rounded < 8) throw ConfigError("R/h must be at least 8");
}

int GridSpec::half() const { return static_cast<int>(std::lround(R / h)); }

std::size_t GridSpec::size() const {
    const auto n = static_cast<std::size_t>(side());
    return dim == 1 ? n : n * n;
}

bool GridSpec::contains(const Lattice& k) const {
    const int m = half();
    if (k[0] < -m || k[0] > m) return false;
    return dim == 1 || (k[1] >= -m && k[1] <= m);
}

std::size_t GridSpec::index(const Lattice& k) const {
    const int m = half();
    const auto i0 = static_cast<std::size_t>(k[0] + m);
    if (dim == 1) return i0;
    return i0 + static_cast<std::size_t>(k[1] + m) * static_cast<std::size_t>(side());
}

Lattice GridSpec::lattice(std::size_t index) const {
    const int m = half();
    if (dim == 1) return {static_cast<int>(index) - m, 0};
    const auto n = static_cast<std::size_t>(side());
    return {static_cast<int>(index % n) - m, static_cast<int>(index / n) - m};
}

Point GridSpec::coordinate(std::size_t index) const { return coordinate(lattice(index)); }

Point GridSpec::coordinate(const Lattice& k) const {
    return {h * k[0], dim == 2 ? h * k[1] : 0.0};
}

std::size_t GridSpec::nearest(const Point& p) const {
    const int m = half();
    auto snap = [&](double x) {
        return std::clamp(static_cast<int>(std::lround(x / h)), -m, m);
    };
    return index({snap(p[0]), dim == 2 ? snap(p[1]) : 0});
}

bool GridSpec::operator==(const GridSpec& other) const {
    return dim == other.dim && h == other.h && R == other.R &&
           exterior_rule == other.exterior_rule;
}

GridFunction::GridFunction(GridSpec grid, double fill)
    : grid_(grid), values_(grid.size(), fill) {}

GridFunction::GridFunction(GridSpec grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size())
        throw StructuralError("grid function size does not match its grid");
}

GridFunction GridFunction::sample(const GridSpec& grid,
                                  const std::function<double(const Point&)>& f) {
    GridFunction out(grid);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(grid.coordinate(i));
    return out;
}

double GridFunction::max() const {
    double v = -std::numeric_limits<double>::infinity();
    for (double x : values_) v = std::max(v, x);
    return v;
}

double GridFunction::min() const {
    double v = std::numeric_limits<double>::infinity();
    for (double x : values_) v = std::min(v, x);
    return v;
}

double GridFunction::max_abs() const {
    double v = 0.0;
    for (double x : values_) v = std::max(v, std::abs(x));
    return v;
}

NodeSet all_nodes(const GridSpec& grid) {
    NodeSet out(grid.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
    return out;
}

NodeSet nodes_where(const GridSpec& grid, const std::function<bool(const Point&)>& pred) {
    NodeSet out;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (pred(grid.coordinate(i))) out.push_back(i);
    return out;
}

NodeSet mask_to_nodes(const Mask& mask) {
    NodeSet out;
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) out.push_back(i);
    return out;
}

Mask nodes_to_mask(const GridSpec& grid, const NodeSet& nodes) {
    Mask mask(grid.size(), 0);
    for (auto i : nodes) mask.at(i) = 1;
    return mask;
}

NodeSet lattice_ball(const GridSpec& grid, std::size_t center, double r) {
    const Lattice c = grid.lattice(center);
    const int reach = static_cast<int>(std::floor(r / grid.h + 1e-9));
    const double r2 = (r / grid.h) * (r / grid.h) * (1.0 + 1e-12);
    NodeSet out;
    const int jmin = grid.dim == 2 ? -reach : 0;
    const int jmax = grid.dim == 2 ? reach : 0;
    for (int j = jmin; j <= jmax; ++j) {
        for (int i = -reach; i <= reach; ++i) {
            if (static_cast<double>(i) * i + static_cast<double>(j) * j > r2) continue;
            const Lattice k{c[0] + i, c[1] + j};
            if (grid.contains(k)) out.push_back(grid.index(k));
        }
    }
    return out;
}

double norm(const Point& p, int dim) {
    return dim == 1 ? std::abs(p[0]) : std::hypot(p[0], p[1]);
}

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what) {
    if (!(a.dim == b.dim && a.h == b.h && a.R == b.R))
        throw StructuralError(std::string("grid mismatch: ") + what);
}

}  // namespace nlobs

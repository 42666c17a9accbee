#include "nlobs/freeboundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nlobs/errors.hpp"
#include "nlobs/io.hpp"

namespace nlobs {

namespace {

// Felzenszwalb–Huttenlocher lower envelope of parabolas: out[q] = min_p (f[p] + (q - p)²).
void edt_1d(const std::vector<double>& f, std::vector<double>& out) {
    const int n = static_cast<int>(f.size());
    std::vector<int> v(n);
    std::vector<double> z(n + 1);
    int k = 0;
    int first = -1;
    for (int q = 0; q < n; ++q)
        if (std::isfinite(f[q])) {
            first = q;
            break;
        }
    if (first < 0) {
        std::fill(out.begin(), out.end(), std::numeric_limits<double>::infinity());
        return;
    }
    v[0] = first;
    z[0] = -std::numeric_limits<double>::infinity();
    z[1] = std::numeric_limits<double>::infinity();
    for (int q = first + 1; q < n; ++q) {
        if (!std::isfinite(f[q])) continue;
        double s = 0.0;
        while (true) {
            const int p = v[k];
            s = ((f[q] + static_cast<double>(q) * q) - (f[p] + static_cast<double>(p) * p)) / (2.0 * (q - p));
            if (s <= z[k] && k > 0) --k;
            else break;
        }
        if (s <= z[k]) {
            v[k] = q;
        } else {
            ++k;
            v[k] = q;
            z[k] = s;
        }
        z[k + 1] = std::numeric_limits<double>::infinity();
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[k + 1] < q) ++k;
        const double d = q - v[k];
        out[q] = d * d + f[v[k]];
    }
}

}  // namespace

ContactSet extract_contact_set(const GridFunction& u, const GridFunction& phi, double tol) {
    require_same_grid(u.grid(), phi.grid(), "solution vs obstacle");
    const GridSpec& g = u.grid();
    ContactSet c;
    c.mask.assign(u.size(), 0);
    for (std::size_t i = 0; i < u.size(); ++i) c.mask[i] = u[i] - phi[i] <= tol ? 1 : 0;
    const std::vector<Lattice> nbrs = g.dim == 1 ? std::vector<Lattice>{{1, 0}, {-1, 0}}
                                                 : std::vector<Lattice>{{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (!c.mask[i]) continue;
        const Lattice k = g.lattice(i);
        for (const auto& d : nbrs) {
            const Lattice p{k[0] + d[0], k[1] + d[1]};
            if (!g.contains(p) || !c.mask[g.index(p)]) {
                c.boundary.push_back(i);
                break;
            }
        }
    }
    return c;
}

GridFunction distance_function(const GridSpec& grid, const Mask& mask) {
    if (mask.size() != grid.size()) throw StructuralError("mask size does not match the grid");
    if (std::none_of(mask.begin(), mask.end(), [](auto v) { return v != 0; }))
        throw StructuralError("distance to an empty contact set is undefined");
    const int n = grid.side();
    const double inf = std::numeric_limits<double>::infinity();
    GridFunction d(grid);
    if (grid.dim == 1) {
        std::vector<double> f(n), out(n);
        for (int i = 0; i < n; ++i) f[i] = mask[i] ? 0.0 : inf;
        edt_1d(f, out);
        for (int i = 0; i < n; ++i) d[i] = grid.h * std::sqrt(out[i]);
        return d;
    }
    // Squared distances in lattice units: columns, then rows.
    std::vector<double> D(grid.size());
    std::vector<double> f(n), out(n);
    for (int c = 0; c < n; ++c) {
        for (int r = 0; r < n; ++r) f[r] = mask[c + static_cast<std::size_t>(r) * n] ? 0.0 : inf;
        edt_1d(f, out);
        for (int r = 0; r < n; ++r) D[c + static_cast<std::size_t>(r) * n] = out[r];
    }
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) f[c] = D[c + static_cast<std::size_t>(r) * n];
        edt_1d(f, out);
        for (int c = 0; c < n; ++c) d[c + static_cast<std::size_t>(r) * n] = grid.h * std::sqrt(out[c]);
    }
    return d;
}

Point estimate_normal(const GridSpec& grid, const Mask& mask, std::size_t x0, double window) {
    if (window < 3.0 * grid.h * (1.0 - 1e-12)) throw ConfigError("normal window must be at least 3h");
    if (mask.size() != grid.size()) throw StructuralError("mask size does not match the grid");
    const Lattice c = grid.lattice(x0);
    const NodeSet ball = lattice_ball(grid, x0, window);
    // Normal equations for (a, g1[, g2]) in lattice units.
    const int dim = grid.dim;
    const int p = dim + 1;
    double A[3][3] = {}, b[3] = {};
    std::size_t outside = 0;
    for (auto i : ball) {
        const Lattice k = grid.lattice(i);
        const double basis[3] = {1.0, static_cast<double>(k[0] - c[0]), static_cast<double>(k[1] - c[1])};
        const double y = mask[i] ? 0.0 : 1.0;
        outside += mask[i] ? 0 : 1;
        for (int r = 0; r < p; ++r) {
            b[r] += basis[r] * y;
            for (int s = 0; s < p; ++s) A[r][s] += basis[r] * basis[s];
        }
    }
    if (outside == 0 || outside == ball.size())
        throw StructuralError("normal window contains a single phase");
    // Gaussian elimination on the small symmetric system.
    for (int col = 0; col < p; ++col) {
        for (int row = col + 1; row < p; ++row) {
            const double f = A[row][col] / A[col][col];
            for (int s = col; s < p; ++s) A[row][s] -= f * A[col][s];
            b[row] -= f * b[col];
        }
    }
    double x[3] = {};
    for (int row = p - 1; row >= 0; --row) {
        double t = b[row];
        for (int s = row + 1; s < p; ++s) t -= A[row][s] * x[s];
        x[row] = t / A[row][row];
    }
    Point gvec{x[1], dim == 2 ? x[2] : 0.0};
    const double len = std::hypot(gvec[0], gvec[1]);
    if (!(len > 0.0)) throw StructuralError("normal fit is degenerate");
    return {gvec[0] / len, gvec[1] / len};
}

FreeBoundaryData analyze_free_boundary(const GridFunction& u, const GridFunction& phi, double tol) {
    FreeBoundaryData fb;
    fb.grid = u.grid();
    auto contact = extract_contact_set(u, phi, tol);
    fb.contact_mask = std::move(contact.mask);
    fb.boundary_cells = std::move(contact.boundary);
    if (!fb.boundary_cells.empty()) fb.distance = distance_function(fb.grid, fb.contact_mask);
    for (auto i : fb.boundary_cells) {
        try {
            fb.normals[i] = estimate_normal(fb.grid, fb.contact_mask, i, 6.0 * fb.grid.h);
        } catch (const StructuralError&) {
        }
    }
    return fb;
}

std::string boundary_csv(const FreeBoundaryData& fb) {
    std::ostringstream os;
    os << "x,y,normal_x,normal_y,d_along_normal\n";
    for (auto i : fb.boundary_cells) {
        const Point x = fb.grid.coordinate(i);
        const auto it = fb.normals.find(i);
        const Point e = it == fb.normals.end() ? Point{0.0, 0.0} : it->second;
        double d_ray = std::numeric_limits<double>::quiet_NaN();
        if (it != fb.normals.end() && fb.distance.size() == fb.grid.size()) {
            const Point probe{x[0] + 4.0 * fb.grid.h * e[0], x[1] + 4.0 * fb.grid.h * e[1]};
            d_ray = fb.distance[fb.grid.nearest(probe)];
        }
        os << format_number(x[0]) << ',' << format_number(x[1]) << ',' << format_number(e[0]) << ','
           << format_number(e[1]) << ',' << format_number(d_ray) << '\n';
    }
    return os.str();
}

}  // namespace nlobs

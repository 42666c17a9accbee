#pragma once

#include <map>
#include <string>

#include "nlobs/grid.hpp"

namespace nlobs {

struct ContactSet {
    Mask mask;
    /// Contact nodes with at least one of the 2n lattice neighbours off the mask.
    /// Neighbours outside the box count as off the mask.
    NodeSet boundary;
};

struct FreeBoundaryData {
    GridSpec grid;
    Mask contact_mask;
    NodeSet boundary_cells;
    /// Euclidean distance to the contact set; zero-sized if the mask is empty.
    GridFunction distance;
    /// Unit normal per boundary cell, pointing into {u > φ}. Cells whose window
    /// sees only one phase are left out.
    std::map<std::size_t, Point> normals;
};

/// mask = {u - φ <= tol}.
ContactSet extract_contact_set(const GridFunction& u, const GridFunction& phi, double tol);

/// Exact Euclidean distance to the mask on the lattice. Throws StructuralError if the mask is empty.
GridFunction distance_function(const GridSpec& grid, const Mask& mask);

/// Least-squares fit of a + g·(x - x0) to the indicator of the complement of the
/// mask over the lattice ball of radius `window`; returns g/|g|.
/// Throws ConfigError if window < 3h, StructuralError if the window sees one phase only.
Point estimate_normal(const GridSpec& grid, const Mask& mask, std::size_t x0, double window);

/// Contact set, boundary, distance and normals (window 6h) in one pass.
FreeBoundaryData analyze_free_boundary(const GridFunction& u, const GridFunction& phi, double tol);

/// CSV with one row per boundary cell: coordinates, normal components and the
/// distance sampled 4h along the normal ray.
std::string boundary_csv(const FreeBoundaryData& fb);

}  // namespace nlobs

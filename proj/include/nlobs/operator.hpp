#pragma once

#include <optional>

#include <json.hpp>
#include <vector>

#include "nlobs/grid.hpp"
#include "nlobs/kernels.hpp"

namespace nlobs {

enum class ExtremalSign { plus, minus };

/// Drift c_a of one family member: a constant, or a field on the grid.
struct Drift {
    double constant = 0.0;
    std::optional<GridFunction> field;
    /// How the field was specified, if it came from a config.
    nlohmann::json spec;

    double at(std::size_t node) const { return field ? (*field)[node] : constant; }
    double max() const { return field ? field->max() : constant; }
};

struct FamilyMember {
    KernelSpec kernel;
    Drift drift;
};

/// I u = max_a (L_a u + c_a) over a finite family.
struct FullyNonlinearSpec {
    std::vector<FamilyMember> members;
    /// Asserts I0 = 0, i.e. every drift is <= 0.
    bool normalization = false;

    /// Throws StructuralError for an empty family or mismatched s/dim/drift grids,
    /// ConfigError if normalization is set and some drift is positive.
    void validate(const GridSpec& grid) const;
};

struct FullyNonlinearResult {
    GridFunction values;
    /// Maximizing member per node (lowest index on ties); -1 off the requested nodes.
    std::vector<int> argmax;
};

/// Value of the extended field at lattice point k: u inside the box, the exterior outside.
double extended_value(const GridFunction& u, const Lattice& k, const Exterior& exterior);

/// L_h u at each node of `where` (zero elsewhere). Each node sums its offsets
/// in table order, so results are bitwise reproducible for any thread count.
GridFunction apply_linear(const KernelTable& table, const GridFunction& u, const NodeSet& where,
                          const Exterior& exterior = {});

/// Pucci-type extremal operator built from an isotropic (μ ≡ 1) table:
/// M⁺ weighs positive second differences by Λ and negative ones by λ; M⁻ swaps them.
/// Throws ConfigError if λ > Λ or λ <= 0.
GridFunction apply_extremal(ExtremalSign sign, double lambda, double Lambda,
                            const KernelTable& isotropic, const GridFunction& u,
                            const NodeSet& where, const Exterior& exterior = {});

/// max_a (L_a u + c_a) with the maximizing member. `exteriors` is either empty
/// (zero exterior for every member) or holds one entry per member.
FullyNonlinearResult apply_fully_nonlinear(const FullyNonlinearSpec& spec,
                                           const std::vector<KernelTable>& tables,
                                           const GridFunction& u, const NodeSet& where,
                                           const std::vector<Exterior>& exteriors = {});

}  // namespace nlobs

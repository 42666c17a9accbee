#include "nlobs/operator.hpp"

#include <algorithm>
#include <cmath>

#include "nlobs/errors.hpp"
#include "nlobs/parallel.hpp"

namespace nlobs {

namespace {

// Visits every offset of node `node` in table order with the extended value ū(x + y_j).
template <class F>
void for_each_neighbour(const KernelTable& table, const GridFunction& u, std::size_t node,
                        const Exterior& exterior, F&& f) {
    const GridSpec& g = table.grid;
    const int m = g.half();
    const int side = g.side();
    const Lattice k = g.lattice(node);
    const bool has_value = static_cast<bool>(exterior.value);
    const auto& values = u.values();
    for (std::size_t q = 0; q < table.offsets.size(); ++q) {
        const int a = k[0] + table.offsets[q][0];
        const int b = g.dim == 2 ? k[1] + table.offsets[q][1] : 0;
        double v = 0.0;
        if (a >= -m && a <= m && b >= -m && b <= m) {
            v = values[static_cast<std::size_t>(a + m) + (g.dim == 2 ? static_cast<std::size_t>(b + m) * side : 0)];
        } else if (has_value) {
            v = exterior.value(g.coordinate(Lattice{a, b}));
        }
        f(q, v);
    }
}

void check_inputs(const KernelTable& table, const GridFunction& u, const NodeSet& where) {
    require_same_grid(table.grid, u.grid(), "kernel table vs grid function");
    for (auto i : where)
        if (i >= u.size()) throw StructuralError("node index outside the grid");
}

double far_value(const Exterior& exterior, std::size_t node) {
    return exterior.far_field ? exterior.far_field(node) : 0.0;
}

}  // namespace

void FullyNonlinearSpec::validate(const GridSpec& grid) const {
    if (members.empty()) throw StructuralError("fully nonlinear family has no members");
    const double s = members.front().kernel.s;
    for (const auto& m : members) {
        if (m.kernel.s != s) throw StructuralError("family members must share s");
        if (m.kernel.dim != grid.dim) throw StructuralError("family member dimension differs from grid");
        if (m.drift.field) require_same_grid(m.drift.field->grid(), grid, "drift field");
        if (normalization && m.drift.max() > 0.0)
            throw ConfigError("normalization requires every drift to be <= 0");
    }
}

double extended_value(const GridFunction& u, const Lattice& k, const Exterior& exterior) {
    const GridSpec& g = u.grid();
    if (g.contains(k)) return u[g.index(k)];
    return exterior.value ? exterior.value(g.coordinate(k)) : 0.0;
}

GridFunction apply_linear(const KernelTable& table, const GridFunction& u, const NodeSet& where,
                          const Exterior& exterior) {
    check_inputs(table, u, where);
    GridFunction out(u.grid());
    parallel_for(where.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t p = begin; p < end; ++p) {
            const std::size_t node = where[p];
            const double u0 = u[node];
            double acc = 0.0;
            for_each_neighbour(table, u, node, exterior, [&](std::size_t q, double v) {
                acc += table.weights[q] * (v - u0);
            });
            out[node] = acc + far_value(exterior, node) - table.tail_weight * u0;
        }
    });
    return out;
}

GridFunction apply_extremal(ExtremalSign sign, double lambda, double Lambda,
                            const KernelTable& isotropic, const GridFunction& u,
                            const NodeSet& where, const Exterior& exterior) {
    if (!(lambda > 0.0) || lambda > Lambda) throw ConfigError("extremal operator needs 0 < lambda <= Lambda");
    check_inputs(isotropic, u, where);
    const double up = sign == ExtremalSign::plus ? Lambda : lambda;
    const double down = sign == ExtremalSign::plus ? lambda : Lambda;
    auto psi = [&](double t) { return t >= 0.0 ? up * t : down * t; };

    // Offsets are stored so that entry n-1-q is the mirror of entry q.
    const std::size_t n = isotropic.offsets.size();
    GridFunction out(u.grid());
    parallel_for(where.size(), [&](std::size_t begin, std::size_t end) {
        std::vector<double> vals(n);
        for (std::size_t p = begin; p < end; ++p) {
            const std::size_t node = where[p];
            const double u0 = u[node];
            for_each_neighbour(isotropic, u, node, exterior, [&](std::size_t q, double v) { vals[q] = v; });
            double acc = 0.0;
            for (std::size_t q = 0; q < n / 2; ++q) {
                const double delta = 0.5 * (vals[q] + vals[n - 1 - q]) - u0;
                acc += 2.0 * isotropic.weights[q] * psi(delta);
            }
            const double tail = isotropic.tail_weight;
            const double delta_far = far_value(exterior, node) / tail - u0;
            out[node] = acc + tail * psi(delta_far);
        }
    });
    return out;
}

FullyNonlinearResult apply_fully_nonlinear(const FullyNonlinearSpec& spec,
                                           const std::vector<KernelTable>& tables,
                                           const GridFunction& u, const NodeSet& where,
                                           const std::vector<Exterior>& exteriors) {
    spec.validate(u.grid());
    if (tables.size() != spec.members.size()) throw StructuralError("one kernel table per member required");
    if (!exteriors.empty() && exteriors.size() != tables.size())
        throw StructuralError("one exterior per member required");
    const Exterior none;
    FullyNonlinearResult r{GridFunction(u.grid()), std::vector<int>(u.size(), -1)};
    for (std::size_t a = 0; a < tables.size(); ++a) {
        const GridFunction la = apply_linear(tables[a], u, where, exteriors.empty() ? none : exteriors[a]);
        for (auto node : where) {
            const double v = la[node] + spec.members[a].drift.at(node);
            if (a == 0 || v > r.values[node]) {
                r.values[node] = v;
                r.argmax[node] = static_cast<int>(a);
            }
        }
    }
    return r;
}

}  // namespace nlobs

#include "nlobs/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "nlobs/errors.hpp"
#include "nlobs/fast_operator.hpp"
#include "nlobs/krylov.hpp"

namespace nlobs {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Linear system A_p z = diag_p z - Σ_j w_j^p z(x + y_j) with a frozen member p(x) per row.
class FrozenSystem {
public:
    FrozenSystem(std::vector<FastOperator>& ops, std::vector<int> policy)
        : ops_(ops), policy_(std::move(policy)), tmp_(ops.front().table().grid.size()) {
        used_.assign(ops.size(), false);
        if (policy_.empty()) {
            used_[0] = true;
        } else {
            for (int a : policy_) used_.at(static_cast<std::size_t>(a)) = true;
        }
    }

    std::size_t size() const { return tmp_.size(); }

    bool symmetric() const { return std::count(used_.begin(), used_.end(), true) == 1; }

    int member(std::size_t i) const { return policy_.empty() ? 0 : policy_[i]; }

    double max_diag() const {
        double d = 0.0;
        for (std::size_t a = 0; a < ops_.size(); ++a)
            if (used_[a]) d = std::max(d, ops_[a].table().diag_coeff);
        return d;
    }

    // Circulant preconditioner of the first member in use.
    void precondition(std::span<const double> z, std::span<double> out) {
        for (std::size_t a = 0; a < ops_.size(); ++a)
            if (used_[a]) return ops_[a].precondition(z, out);
    }

    void apply(std::span<const double> z, std::span<double> out) {
        for (std::size_t a = 0; a < ops_.size(); ++a) {
            if (!used_[a]) continue;
            ops_[a].neighbour_sum(z, tmp_);
            const double diag = ops_[a].table().diag_coeff;
            for (std::size_t i = 0; i < z.size(); ++i)
                if (member(i) == static_cast<int>(a)) out[i] = diag * z[i] - tmp_[i];
        }
    }

private:
    std::vector<FastOperator>& ops_;
    std::vector<int> policy_;
    std::vector<bool> used_;
    std::vector<double> tmp_;
};

struct InnerOutcome {
    int iterations = 0;
    int krylov = 0;
    bool converged = false;
    std::string message;
};

// Solves (A z)_i = b_i for i in `free_nodes`, with z fixed elsewhere.
KrylovResult solve_on_set(FrozenSystem& sys, std::span<const double> b, const NodeSet& free_nodes,
                          std::vector<double>& z, double abs_tol, int max_iters) {
    const std::size_t n = sys.size();
    std::vector<double> fixed(z), Az(n);
    for (auto i : free_nodes) fixed[i] = 0.0;
    sys.apply(fixed, Az);
    std::vector<double> rhs(free_nodes.size()), x(free_nodes.size());
    for (std::size_t k = 0; k < free_nodes.size(); ++k) {
        rhs[k] = b[free_nodes[k]] - Az[free_nodes[k]];
        x[k] = z[free_nodes[k]];
    }
    std::vector<double> full(n), full_out(n);
    LinearMap A = [&](std::span<const double> in, std::span<double> out) {
        std::fill(full.begin(), full.end(), 0.0);
        for (std::size_t k = 0; k < free_nodes.size(); ++k) full[free_nodes[k]] = in[k];
        sys.apply(full, full_out);
        for (std::size_t k = 0; k < free_nodes.size(); ++k) out[k] = full_out[free_nodes[k]];
    };
    LinearMap M = [&](std::span<const double> in, std::span<double> out) {
        std::fill(full.begin(), full.end(), 0.0);
        for (std::size_t k = 0; k < free_nodes.size(); ++k) full[free_nodes[k]] = in[k];
        sys.precondition(full, full_out);
        for (std::size_t k = 0; k < free_nodes.size(); ++k) out[k] = full_out[free_nodes[k]];
    };
    const KrylovResult kr = sys.symmetric() ? conjugate_gradient(A, rhs, x, abs_tol, max_iters, M)
                                            : gmres(A, rhs, x, abs_tol, max_iters, M);
    for (std::size_t k = 0; k < free_nodes.size(); ++k) z[free_nodes[k]] = x[k];
    return kr;
}

// Primal-dual active set iteration for A z >= b, z >= φ, (A z - b)·(z - φ) = 0.
InnerOutcome active_set(FrozenSystem& sys, std::span<const double> b, const GridFunction& phi,
                        std::vector<double>& u, double tol, const SolverConfig& cfg) {
    const std::size_t n = sys.size();
    const double c = sys.max_diag();
    const double eps = 0.1 * tol;
    InnerOutcome out;
    std::vector<double> Au(n);
    std::vector<char> active(n, 0), previous, before_previous;

    auto update_active = [&](std::vector<char>& a) {
        sys.apply(u, Au);
        for (std::size_t i = 0; i < n; ++i) a[i] = (Au[i] - b[i]) + c * (phi[i] - u[i]) > eps ? 1 : 0;
    };
    update_active(active);

    for (out.iterations = 1; out.iterations <= cfg.max_iters; ++out.iterations) {
        NodeSet free_nodes;
        for (std::size_t i = 0; i < n; ++i) {
            if (active[i]) u[i] = phi[i];
            else free_nodes.push_back(i);
        }
        const auto kr = solve_on_set(sys, b, free_nodes, u, 0.1 * tol, cfg.max_krylov_iters);
        out.krylov += kr.iterations;
        // An inexact inner solve is tolerated; the final residual check decides.
        out.message = kr.converged ? "" : "inner Krylov solve stalled";
        before_previous = std::move(previous);
        previous = active;
        update_active(active);
        if (active == previous) {
            out.converged = true;
            return out;
        }
        if (active == before_previous) {
            out.message = "active set cycling";
            return out;
        }
    }
    out.iterations = cfg.max_iters;
    out.message = "active set iteration limit reached";
    return out;
}

InnerOutcome projected_gauss_seidel(const KernelTable& table, FastOperator& op, std::span<const double> b,
                                    const GridFunction& phi, std::vector<double>& u, double tol,
                                    const SolverConfig& cfg) {
    const GridSpec& g = table.grid;
    const std::size_t n = g.size();
    const int m = g.half();
    const double diag = table.diag_coeff;
    InnerOutcome out;
    std::vector<double> Lu(n), fresh(n);

    auto local = [&](std::size_t node) {
        const Lattice k = g.lattice(node);
        double acc = 0.0;
        for (std::size_t q = 0; q < table.offsets.size(); ++q) {
            const int a = k[0] + table.offsets[q][0];
            const int bb = g.dim == 2 ? k[1] + table.offsets[q][1] : 0;
            if (a < -m || a > m || bb < -m || bb > m) continue;
            acc += table.weights[q] * u[g.index({a, bb})];
        }
        return std::max(phi[node], (acc + b[node]) / diag);
    };

    for (out.iterations = 1; out.iterations <= cfg.max_iters; ++out.iterations) {
        if (cfg.sweep == SweepOrder::lexicographic) {
            for (std::size_t i = 0; i < n; ++i) u[i] = local(i);
        } else {
            for (int colour = 0; colour < 2; ++colour) {
                for (std::size_t i = 0; i < n; ++i) {
                    const Lattice k = g.lattice(i);
                    if (((k[0] + k[1]) & 1) == colour) fresh[i] = local(i);
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const Lattice k = g.lattice(i);
                    if (((k[0] + k[1]) & 1) == colour) u[i] = fresh[i];
                }
            }
        }
        op.neighbour_sum(u, Lu);
        double r = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double minus_lu = diag * u[i] - Lu[i] - b[i];
            r = std::max(r, std::abs(std::min(minus_lu, u[i] - phi[i])));
        }
        if (r <= tol) {
            out.converged = true;
            return out;
        }
    }
    out.iterations = cfg.max_iters;
    out.message = "sweep limit reached";
    return out;
}

double node_residual(double minus_op, double gap) { return std::abs(std::min(minus_op, gap)); }

}  // namespace

std::string to_string(SolverMethod m) {
    return m == SolverMethod::active_set ? "active_set" : "projected_gauss_seidel";
}

std::string to_string(SweepOrder o) { return o == SweepOrder::lexicographic ? "lexicographic" : "red_black"; }

SolverMethod solver_method_from_string(const std::string& name) {
    if (name == "active_set") return SolverMethod::active_set;
    if (name == "projected_gauss_seidel" || name == "pgs") return SolverMethod::projected_gauss_seidel;
    throw ConfigError("unknown solver method '" + name + "'");
}

SweepOrder sweep_order_from_string(const std::string& name) {
    if (name == "lexicographic") return SweepOrder::lexicographic;
    if (name == "red_black" || name == "red-black") return SweepOrder::red_black;
    throw ConfigError("unknown sweep order '" + name + "'");
}

double SolverConfig::tolerance(int dim) const {
    if (tol > 0.0) return tol;
    return dim == 1 ? 1e-8 : 1e-6;
}

nlohmann::json SolverConfig::to_json() const {
    return {{"tol", tol},
            {"max_iters", max_iters},
            {"method", to_string(method)},
            {"sweep", to_string(sweep)},
            {"max_policy_iters", max_policy_iters},
            {"max_krylov_iters", max_krylov_iters}};
}

SolverConfig SolverConfig::from_json(const nlohmann::json& j) {
    SolverConfig c;
    c.tol = j.value("tol", c.tol);
    c.max_iters = j.value("max_iters", c.max_iters);
    if (j.contains("method")) c.method = solver_method_from_string(j.at("method").get<std::string>());
    if (j.contains("sweep")) c.sweep = sweep_order_from_string(j.at("sweep").get<std::string>());
    c.max_policy_iters = j.value("max_policy_iters", c.max_policy_iters);
    c.max_krylov_iters = j.value("max_krylov_iters", c.max_krylov_iters);
    if (c.tol < 0.0 || c.max_iters < 1 || c.max_policy_iters < 1 || c.max_krylov_iters < 1)
        throw ConfigError("solver settings must be positive");
    return c;
}

void ObstacleProblem::validate() const {
    const GridSpec& g = grid();
    g.validate();
    if (phi.size() != g.size()) throw StructuralError("obstacle size does not match its grid");
    double support = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) {
        if (!std::isfinite(phi[i])) throw ConfigError("obstacle must be bounded");
        if (phi[i] > 0.0) support = std::max(support, norm(g.coordinate(i), g.dim));
    }
    if (support > 0.25 * g.R * (1.0 + 1e-12))
        throw ConfigError("obstacle support must lie within |x| <= R/4");
    if (!std::isfinite(c11_seminorm(phi))) throw ConfigError("obstacle second differences are not finite");
    if (table) require_same_grid(table->grid, g, "kernel table vs obstacle");
    for (const auto& t : family_tables) require_same_grid(t.grid, g, "family table vs obstacle");
}

nlohmann::json SolveReport::to_json() const {
    return {{"method", method},
            {"iterations", iterations},
            {"krylov_iterations", krylov_iterations},
            {"complementarity_residual", complementarity_residual},
            {"operator_bound", operator_bound},
            {"contact_nodes", contact_nodes},
            {"converged", converged},
            {"wall_time", wall_time},
            {"tolerance", tolerance},
            {"outer_residuals", outer_residuals},
            {"policy_updates", policy_updates},
            {"outer_residuals_monotone", outer_residuals_monotone},
            {"message", message}};
}

SolveResult solve_obstacle(const ObstacleProblem& problem, const SolverConfig& cfg) {
    const auto t0 = Clock::now();
    if (!problem.table) throw ConfigError("solve_obstacle needs a single kernel table");
    problem.validate();
    const GridSpec& g = problem.grid();
    const double tol = cfg.tolerance(g.dim);
    const GridFunction& phi = problem.phi;

    std::vector<FastOperator> ops;
    ops.emplace_back(*problem.table);
    const PreparedExterior ext = ops[0].prepare(problem.exterior);
    const std::vector<double> b = ops[0].exterior_source(ext);  // L_h u = -(A u) + b

    std::vector<double> u(g.size());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = std::max(phi[i], 0.0);

    SolveReport rep;
    rep.method = to_string(cfg.method);
    rep.tolerance = tol;
    InnerOutcome inner;
    if (cfg.method == SolverMethod::active_set) {
        FrozenSystem sys(ops, {});
        inner = active_set(sys, b, phi, u, tol, cfg);
    } else {
        inner = projected_gauss_seidel(*problem.table, ops[0], b, phi, u, tol, cfg);
    }
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = std::max(u[i], phi[i]);

    GridFunction sol(g, std::move(u));
    std::vector<double> Lu(g.size());
    ops[0].apply(sol.values(), Lu, &ext);
    double r = 0.0, bound = 0.0;
    std::size_t contact = 0;
    for (std::size_t i = 0; i < sol.size(); ++i) {
        r = std::max(r, node_residual(-Lu[i], sol[i] - phi[i]));
        if (sol[i] == phi[i]) {
            ++contact;
            bound = std::max(bound, std::abs(Lu[i]));
        }
    }
    rep.iterations = inner.iterations;
    rep.krylov_iterations = inner.krylov;
    rep.complementarity_residual = r;
    rep.operator_bound = bound;
    rep.contact_nodes = contact;
    rep.converged = inner.converged && r <= tol;
    rep.message = inner.converged && r > tol ? "residual above tolerance after convergence" : inner.message;
    rep.wall_time = seconds_since(t0);
    return {std::move(sol), rep};
}

FullyNonlinearSolveResult solve_obstacle_fully_nonlinear(const ObstacleProblem& problem,
                                                         const SolverConfig& cfg) {
    const auto t0 = Clock::now();
    if (!problem.family) throw ConfigError("fully nonlinear solve needs a family");
    problem.validate();
    const GridSpec& g = problem.grid();
    const FullyNonlinearSpec& spec = *problem.family;
    spec.validate(g);
    if (problem.family_tables.size() != spec.members.size())
        throw StructuralError("one kernel table per family member required");
    const double tol = cfg.tolerance(g.dim);
    const double tie = 1e-2 * tol;
    const std::size_t n = g.size();
    const std::size_t K = spec.members.size();
    const GridFunction& phi = problem.phi;

    Exterior values_only;
    values_only.value = problem.exterior.value;
    std::vector<FastOperator> ops;
    std::vector<PreparedExterior> exts;
    std::vector<std::vector<double>> sources;  // exterior source + drift per member
    for (std::size_t a = 0; a < K; ++a) {
        ops.emplace_back(problem.family_tables[a]);
        exts.push_back(ops[a].prepare(values_only));
        auto src = ops[a].exterior_source(exts[a]);
        for (std::size_t i = 0; i < n; ++i) src[i] += spec.members[a].drift.at(i);
        sources.push_back(std::move(src));
    }

    // values[a][i] = L_a u + c_a at node i.
    std::vector<std::vector<double>> values(K, std::vector<double>(n));
    auto evaluate = [&](const std::vector<double>& u) {
        for (std::size_t a = 0; a < K; ++a) {
            ops[a].neighbour_sum(u, values[a]);
            const double diag = ops[a].table().diag_coeff;
            for (std::size_t i = 0; i < n; ++i) values[a][i] += sources[a][i] - diag * u[i];
        }
    };
    auto residual = [&](const std::vector<double>& u) {
        double r = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double best = values[0][i];
            for (std::size_t a = 1; a < K; ++a) best = std::max(best, values[a][i]);
            r = std::max(r, node_residual(-best, u[i] - phi[i]));
        }
        return r;
    };

    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = std::max(phi[i], 0.0);
    evaluate(u);
    std::vector<int> policy(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 1; a < K; ++a)
            if (values[a][i] > values[static_cast<std::size_t>(policy[i])][i]) policy[i] = static_cast<int>(a);

    SolveReport rep;
    rep.method = "policy_iteration";
    rep.tolerance = tol;
    // Howard iteration over the controls {obstacle, members}: the obstacle row is chosen
    // where c (φ - u) exceeds the best member value, as in the active set update.
    double c = 0.0;
    for (const auto& op : ops) c = std::max(c, op.table().diag_coeff);
    const double eps = 0.1 * tol;
    std::vector<char> active(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const double best = values[static_cast<std::size_t>(policy[i])][i];
        active[i] = c * (phi[i] - u[i]) > best + eps ? 1 : 0;
    }
    std::vector<double> b(n);
    bool stable = false;
    for (rep.iterations = 1; rep.iterations <= cfg.max_policy_iters; ++rep.iterations) {
        FrozenSystem sys(ops, policy);
        NodeSet free_nodes;
        for (std::size_t i = 0; i < n; ++i) {
            b[i] = sources[static_cast<std::size_t>(policy[i])][i];
            if (active[i]) u[i] = phi[i];
            else free_nodes.push_back(i);
        }
        const auto kr = solve_on_set(sys, b, free_nodes, u, 0.1 * tol, cfg.max_krylov_iters);
        rep.krylov_iterations += kr.iterations;
        std::vector<double> projected(u);
        for (std::size_t i = 0; i < n; ++i) projected[i] = std::max(u[i], phi[i]);
        evaluate(projected);
        const double r = residual(projected);
        if (!rep.outer_residuals.empty() && r > rep.outer_residuals.back()) rep.outer_residuals_monotone = false;
        rep.outer_residuals.push_back(r);
        evaluate(u);
        bool changed = false, switched = false;
        for (std::size_t i = 0; i < n; ++i) {
            const auto current = static_cast<std::size_t>(policy[i]);
            std::size_t best = 0;
            for (std::size_t a = 1; a < K; ++a)
                if (values[a][i] > values[best][i]) best = a;
            if (best != current && values[best][i] > values[current][i] + tie) {
                policy[i] = static_cast<int>(best);
                changed = switched = true;
            }
            const char act = c * (phi[i] - u[i]) > values[static_cast<std::size_t>(policy[i])][i] + eps ? 1 : 0;
            if (act != active[i]) {
                active[i] = act;
                changed = true;
            }
        }
        if (switched) ++rep.policy_updates;
        if (!changed) {
            stable = true;
            break;
        }
    }
    if (rep.iterations > cfg.max_policy_iters) {
        rep.iterations = cfg.max_policy_iters;
        rep.message = "policy iteration limit reached";
    }
    for (std::size_t i = 0; i < n; ++i) u[i] = std::max(u[i], phi[i]);
    evaluate(u);

    GridFunction sol(g, std::move(u));
    rep.complementarity_residual = rep.outer_residuals.empty() ? 0.0 : rep.outer_residuals.back();
    double bound = 0.0;
    std::size_t contact = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (sol[i] != phi[i]) continue;
        ++contact;
        double best = values[0][i];
        for (std::size_t a = 1; a < K; ++a) best = std::max(best, values[a][i]);
        bound = std::max(bound, std::abs(best));
    }
    rep.operator_bound = bound;
    rep.contact_nodes = contact;
    rep.converged = stable && rep.complementarity_residual <= tol;
    if (stable && !rep.converged) rep.message = "policy stable but residual above tolerance";
    rep.wall_time = seconds_since(t0);
    return {std::move(sol), rep, std::move(policy)};
}

SolveResult solve_dirichlet(const KernelTable& table, const NodeSet& domain, const GridFunction& rhs,
                            const GridFunction& exterior_data, const SolverConfig& cfg,
                            const Exterior& beyond) {
    const auto t0 = Clock::now();
    if (domain.empty()) throw StructuralError("Dirichlet domain is empty");
    const GridSpec& g = table.grid;
    require_same_grid(g, rhs.grid(), "rhs");
    require_same_grid(g, exterior_data.grid(), "exterior data");
    const int m = g.half();
    for (auto i : domain) {
        if (i >= g.size()) throw StructuralError("domain node outside the grid");
        const Lattice k = g.lattice(i);
        if (std::abs(k[0]) == m || (g.dim == 2 && std::abs(k[1]) == m))
            throw ConfigError("Dirichlet domain must lie strictly inside the box");
    }
    const double tol = cfg.tolerance(g.dim);

    std::vector<FastOperator> ops;
    ops.emplace_back(table);
    const PreparedExterior ext = ops[0].prepare(beyond);
    std::vector<double> b = ops[0].exterior_source(ext);
    for (auto i : domain) b[i] -= rhs[i];

    std::vector<double> u(exterior_data.values().begin(), exterior_data.values().end());
    for (auto i : domain) u[i] = 0.0;
    FrozenSystem sys(ops, {});
    const auto kr = solve_on_set(sys, b, domain, u, 0.1 * tol, cfg.max_krylov_iters);

    GridFunction sol(g, std::move(u));
    std::vector<double> Lu(g.size());
    ops[0].apply(sol.values(), Lu, &ext);
    double r = 0.0;
    for (auto i : domain) r = std::max(r, std::abs(Lu[i] - rhs[i]));

    SolveReport rep;
    rep.method = "conjugate_gradient";
    rep.tolerance = tol;
    rep.iterations = 1;
    rep.krylov_iterations = kr.iterations;
    rep.complementarity_residual = r;
    rep.converged = kr.converged && r <= tol;
    if (!rep.converged) rep.message = kr.converged ? "residual above tolerance" : "Krylov solve did not converge";
    rep.wall_time = seconds_since(t0);
    return {std::move(sol), rep};
}

double complementarity_residual(const GridFunction& Lu, const GridFunction& u, const GridFunction& phi) {
    require_same_grid(Lu.grid(), u.grid(), "operator values vs solution");
    require_same_grid(phi.grid(), u.grid(), "obstacle vs solution");
    double r = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) r = std::max(r, node_residual(-Lu[i], u[i] - phi[i]));
    return r;
}

namespace {

std::vector<Lattice> stencil_directions(int dim) {
    if (dim == 1) return {{1, 0}};
    return {{1, 0}, {0, 1}, {1, 1}, {1, -1}};
}

template <class F>
void for_each_second_difference(const GridFunction& u, double radius, F&& f) {
    const GridSpec& g = u.grid();
    for (const auto& z : stencil_directions(g.dim)) {
        const double len2 = g.h * g.h * (z[0] * z[0] + z[1] * z[1]);
        for (std::size_t i = 0; i < u.size(); ++i) {
            if (norm(g.coordinate(i), g.dim) > radius) continue;
            const Lattice k = g.lattice(i);
            const Lattice p{k[0] + z[0], k[1] + z[1]}, q{k[0] - z[0], k[1] - z[1]};
            if (!g.contains(p) || !g.contains(q)) continue;
            f((u[g.index(p)] + u[g.index(q)] - 2.0 * u[i]) / len2);
        }
    }
}

}  // namespace

double discrete_lipschitz(const GridFunction& u, double radius) {
    const GridSpec& g = u.grid();
    double lip = 0.0;
    for (const auto& z : stencil_directions(g.dim)) {
        const double len = g.h * std::hypot(z[0], z[1]);
        for (std::size_t i = 0; i < u.size(); ++i) {
            if (norm(g.coordinate(i), g.dim) > radius) continue;
            const Lattice k = g.lattice(i);
            const Lattice p{k[0] + z[0], k[1] + z[1]};
            if (!g.contains(p)) continue;
            lip = std::max(lip, std::abs(u[g.index(p)] - u[i]) / len);
        }
    }
    return lip;
}

double min_second_difference(const GridFunction& u, double radius) {
    double v = std::numeric_limits<double>::infinity();
    for_each_second_difference(u, radius, [&](double d) { v = std::min(v, d); });
    return v;
}

double c11_seminorm(const GridFunction& u, double radius) {
    double v = 0.0;
    for_each_second_difference(u, radius, [&](double d) { v = std::max(v, std::abs(d)); });
    return v;
}

nlohmann::json AprioriReport::to_json() const {
    return {{"sup_u", sup_u},
            {"sup_phi", sup_phi},
            {"lipschitz_u", lipschitz_u},
            {"lipschitz_phi", lipschitz_phi},
            {"min_second_difference_u", min_second_difference_u},
            {"c11_phi", c11_phi},
            {"contact_operator_bound", contact_operator_bound},
            {"bounded", bounded},
            {"lipschitz", lipschitz},
            {"semiconvex", semiconvex},
            {"operator_finite", operator_finite},
            {"pass", pass()}};
}

AprioriReport apriori_bounds(const GridFunction& u, const GridFunction& phi, const GridFunction& Lu) {
    require_same_grid(u.grid(), phi.grid(), "solution vs obstacle");
    require_same_grid(u.grid(), Lu.grid(), "solution vs operator values");
    AprioriReport r;
    r.sup_u = u.max_abs();
    r.sup_phi = phi.max_abs();
    const double interior = 0.5 * u.grid().R;
    r.lipschitz_u = discrete_lipschitz(u, interior);
    r.lipschitz_phi = discrete_lipschitz(phi);
    r.min_second_difference_u = min_second_difference(u, interior);
    r.c11_phi = c11_seminorm(phi);
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i] == phi[i]) r.contact_operator_bound = std::max(r.contact_operator_bound, std::abs(Lu[i]));
    r.bounded = r.sup_u <= r.sup_phi + 1e-12;
    r.lipschitz = r.lipschitz_u <= r.lipschitz_phi + 1e-8;
    r.semiconvex = r.min_second_difference_u >= -r.c11_phi - 1e-6;
    r.operator_finite = std::isfinite(r.contact_operator_bound);
    return r;
}

}  // namespace nlobs

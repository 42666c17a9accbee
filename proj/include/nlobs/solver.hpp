#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nlobs/grid.hpp"
#include "nlobs/kernels.hpp"
#include "nlobs/operator.hpp"

namespace nlobs {

enum class SolverMethod { active_set, projected_gauss_seidel };
enum class SweepOrder { lexicographic, red_black };

std::string to_string(SolverMethod m);
std::string to_string(SweepOrder o);
SolverMethod solver_method_from_string(const std::string& name);
SweepOrder sweep_order_from_string(const std::string& name);

struct SolverConfig {
    /// Sup-norm complementarity tolerance; 0 selects 1e-8 in 1D and 1e-6 in 2D.
    double tol = 0.0;
    /// Active-set iterations, or sweeps for projected Gauss-Seidel.
    int max_iters = 200;
    SolverMethod method = SolverMethod::active_set;
    SweepOrder sweep = SweepOrder::lexicographic;
    /// Policy iteration limit for the fully nonlinear solve.
    int max_policy_iters = 50;
    int max_krylov_iters = 20000;

    double tolerance(int dim) const;
    nlohmann::json to_json() const;
    static SolverConfig from_json(const nlohmann::json& j);
};

/// min(-L u, u - φ) = 0 on the box nodes with u given by the exterior outside.
/// Exactly one of `table` (linear) or `family` (fully nonlinear) is used by each solve.
struct ObstacleProblem {
    GridFunction phi;
    std::optional<KernelTable> table;
    std::optional<FullyNonlinearSpec> family;
    std::vector<KernelTable> family_tables;
    /// Field beyond the box (zero by default). Far-field terms are per kernel, so
    /// a nonzero far field is only honoured for the linear operator.
    Exterior exterior;

    const GridSpec& grid() const { return phi.grid(); }
    /// Throws ConfigError if φ is unbounded, has non-finite second differences,
    /// or {φ > 0} reaches beyond |x| = R/4.
    void validate() const;
};

struct SolveReport {
    std::string method;
    int iterations = 0;
    int krylov_iterations = 0;
    double complementarity_residual = 0.0;
    /// max |L_h u| over contact nodes.
    double operator_bound = 0.0;
    std::size_t contact_nodes = 0;
    bool converged = false;
    double wall_time = 0.0;
    double tolerance = 0.0;
    /// Fully nonlinear solve only: residual after each policy iteration, and the
    /// number of iterations that changed the member choice at some node.
    std::vector<double> outer_residuals;
    int policy_updates = 0;
    bool outer_residuals_monotone = true;
    std::string message;

    nlohmann::json to_json() const;
};

struct SolveResult {
    GridFunction u;
    SolveReport report;
};

struct FullyNonlinearSolveResult {
    GridFunction u;
    SolveReport report;
    std::vector<int> policy;
};

/// Linear obstacle problem. The default method is a primal-dual active set
/// iteration with conjugate gradients on the free nodes; projected Gauss-Seidel
/// is available for small grids. Non-convergence is reported, not thrown.
SolveResult solve_obstacle(const ObstacleProblem& problem, const SolverConfig& cfg = {});

/// min(-max_a(L_a u + c_a), u - φ) = 0 by policy iteration over the controls
/// {obstacle, members}: each step solves one linear system with the chosen member per
/// free node and u = φ on obstacle rows, then updates both choices together.
FullyNonlinearSolveResult solve_obstacle_fully_nonlinear(const ObstacleProblem& problem,
                                                         const SolverConfig& cfg = {});

/// L_h u = rhs on `domain`, u = exterior_data at the other box nodes and
/// `beyond` outside the box. Throws StructuralError for an empty domain.
SolveResult solve_dirichlet(const KernelTable& table, const NodeSet& domain, const GridFunction& rhs,
                            const GridFunction& exterior_data, const SolverConfig& cfg = {},
                            const Exterior& beyond = {});

/// max over nodes of |min(-Lu, u - φ)|.
double complementarity_residual(const GridFunction& Lu, const GridFunction& u, const GridFunction& phi);

/// Discrete a-priori quantities of a solved obstacle problem.
struct AprioriReport {
    double sup_u = 0.0, sup_phi = 0.0;
    double lipschitz_u = 0.0, lipschitz_phi = 0.0;
    double min_second_difference_u = 0.0;
    double c11_phi = 0.0;
    double contact_operator_bound = 0.0;
    bool bounded = false;       // sup|u| <= sup|φ| + 1e-12
    bool lipschitz = false;     // Lip(u) <= Lip(φ) + 1e-8
    bool semiconvex = false;    // min δ²u/|z|² >= -|φ|_{C^{1,1}} - 1e-6
    bool operator_finite = false;

    bool pass() const { return bounded && lipschitz && semiconvex && operator_finite; }
    nlohmann::json to_json() const;
};

/// Lipschitz constant from forward differences along lattice axes (and diagonals
/// in 2D), over nodes with |x| <= radius.
double discrete_lipschitz(const GridFunction& u, double radius = INFINITY);
/// min over nodes with |x| <= radius and directions z of (u(x+z) + u(x-z) - 2u(x)) / |z|²,
/// z in {e1, e2, e1 ± e2}.
double min_second_difference(const GridFunction& u, double radius = INFINITY);
/// max |δ²u| / |z|² over the same stencil.
double c11_seminorm(const GridFunction& u, double radius = INFINITY);

/// The derivative bounds are taken over |x| <= R/2: with u = 0 outside the box
/// the truncated solution has a d^s boundary layer at the box edge.
AprioriReport apriori_bounds(const GridFunction& u, const GridFunction& phi, const GridFunction& Lu);

}  // namespace nlobs

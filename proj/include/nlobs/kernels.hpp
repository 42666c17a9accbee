#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nlobs/grid.hpp"

namespace nlobs {

/// Homogeneous kernel K(y) = μ(y/|y|) |y|^{-n-2s} of an operator in the class L*.
///
/// In 1D `mu` holds {μ(+1), μ(-1)}. In 2D it holds samples at the angles
/// θ_k = 2πk/M, k = 0..M-1, and is linearly interpolated in between.
struct KernelSpec {
    int dim = 1;
    double s = 0.5;
    double lambda = 1.0;
    double Lambda = 1.0;
    std::vector<double> mu;

    static KernelSpec isotropic(int dim, double s, double value = 1.0, int samples = 64);

    /// μ at the direction with angle theta (1D: theta = 0 is +1, anything else is -1).
    double mu_at(double theta) const;
    /// ∫_0^{2π} μ(θ) dθ in 2D, μ(+1) + μ(-1) in 1D.
    double angular_mass() const;

    static KernelSpec from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

inline constexpr int kMinAngularSamples = 64;

struct InvariantCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<InvariantCheck> checks;

    bool pass() const;
    /// Result of the named check; throws std::out_of_range if absent.
    bool passed(const std::string& name) const;
    nlohmann::json to_json() const;
};

/// Checks every KernelSpec invariant. Structural problems are reported, never thrown.
ValidationReport validate_kernel_spec(const KernelSpec& spec);

/// Discrete quadrature for L on one grid:
///
///   L_h u(x) = Σ_j w_j (ū(x + y_j) - u(x)) + far(x) - tail_weight · u(x)
///
/// where ū is u extended by the exterior rule and far(x) = ∫_{|y|>window} K(y) ū(x+y) dy.
/// Weights are symmetric under y ↦ -y and nonnegative. Immutable after construction.
struct KernelTable {
    KernelSpec spec;
    GridSpec grid;
    double window_radius = 0.0;

    std::vector<Lattice> offsets;
    /// Quadrature weight per offset, singular-cell correction included.
    std::vector<double> weights;
    /// ∫ K over each offset's lattice cell clipped to the window; no correction.
    std::vector<double> cell_integrals;
    /// ∫_{|y|>window} K per angular sector (1D: the two half-lines; 2D: [θ_k, θ_{k+1}]).
    std::vector<double> tail_by_sector;
    double tail_weight = 0.0;
    /// Σ weights + tail_weight, the coefficient of u(x).
    double diag_coeff = 0.0;
    /// Largest |component| over all offsets.
    int reach = 0;
};

/// Builds the table. The default window is the full box (2R).
/// Throws ConfigError for an invalid spec or a window outside [2h, 2R].
KernelTable build_kernel_table(const KernelSpec& spec, const GridSpec& grid,
                               std::optional<double> window_radius = std::nullopt);

/// Closed form of ∫_{|y|>radius} K(y) dy.
double tail_integral(const KernelSpec& spec, double radius);

/// ∫ K over the square lattice cell centred at h·(i, j), clipped to |y| < window (2D only).
/// Uses per-cell polar quadrature in the angle with the radial integral in closed form.
double cell_integral_2d(const KernelSpec& spec, int i, int j, double h, double window);

}  // namespace nlobs

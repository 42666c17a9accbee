#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nlobs/freeboundary.hpp"
#include "nlobs/grid.hpp"

namespace nlobs {

struct AnalysisConfig {
    /// Exponent offset; 0 selects min(s, 1 - s)/2.
    double alpha = 0.0;
    /// Decreasing radii; empty selects R/8·2^{-k}, k = 0..6, keeping those >= 4h.
    std::vector<double> radii;
    /// Hölder probe exponents; 0 selects s/2 and 0.05 respectively.
    double gamma_probe = 0.0;
    double tau_probe = 0.0;

    /// Copy with defaults filled in. Throws ConfigError if the result violates
    /// 0 < alpha < s, 1 + s + alpha < 2, or the radii are not strictly decreasing
    /// within [4h, R/4].
    AnalysisConfig resolved(double s, const GridSpec& grid) const;

    nlohmann::json to_json() const;
    static AnalysisConfig from_json(const nlohmann::json& j);
};

/// Centred differences inside the box, one-sided at its edge.
std::vector<Point> discrete_gradient(const GridFunction& u);

struct GrowthMonitor {
    std::vector<double> radii;
    /// sup of |∇w| over the lattice ball of each radius.
    std::vector<double> grad_sup;
    /// θ(r_k) = max_{r_j >= r_k} r_j^{-s-α} grad_sup_j.
    std::vector<double> theta;
    double growth_ratio = 0.0;  // θ(last)/θ(first)
    bool regular_candidate = false;  // growth_ratio >= 4

    nlohmann::json to_json() const;
};

/// Growth monitor at x0 with a resolved config. If `boundary` is nonempty,
/// x0 must belong to it (ConfigError otherwise).
GrowthMonitor growth_monitor(const GridFunction& w, std::size_t x0, double s, const AnalysisConfig& cfg,
                             const NodeSet& boundary = {});

struct ExponentFit {
    double beta = 0.0;
    double c = 0.0;
    double residual = 0.0;  // max |log sup w - (log c + beta log r)|
    std::vector<double> radii_used;
    std::vector<double> sup_values;

    nlohmann::json to_json() const;
};

/// Least-squares slope of log sup_{B_r(x0)} w against log r. Radii with sup w <= 0
/// are skipped. Throws ConfigError with fewer than 5 usable radii or a span under one decade.
ExponentFit fit_boundary_exponent(const GridFunction& w, std::size_t x0, const std::vector<double>& radii);

/// `count` geometric radii from r_max down to r_min.
std::vector<double> geometric_radii(double r_max, double r_min, int count);

/// Sub-cell free boundary point near the boundary node x0 along the unit normal e
/// (pointing into {w > 0}): fits w = c (t - δ)_+^{1+s} to w at x0 + h e and x0 + 2h e,
/// returns x0 + δ h e with δ clamped to [0, 1).
Point subcell_free_boundary_point(const GridFunction& w, std::size_t x0, const Point& e, double s);

struct BlowupProfile {
    Point center{};
    double r = 0.0;
    double theta = 0.0;
    double d = 0.0;  // r^{1+s+α} θ(r)
    GridFunction v;  // on the reference window, 129 nodes per axis
    double K = 0.0;
    Point e{};
    double c1_distance = 0.0;
    /// sup |∇v| over the unit ball of the window.
    double grad_sup_unit = 0.0;
    /// The window spacing r R0/64 is at least h, so resampling adds no interpolation error
    /// to an exactly self-similar profile.
    bool resolvable = false;

    nlohmann::json to_json() const;  // without v
};

/// Rescalings v(ξ) = w(c + r ξ)/d at every configured radius, each fitted to K(e·ξ)_+^{1+s}.
/// θ is measured on lattice balls about x0; c defaults to x0. Scales with θ(r) = 0 are skipped.
std::vector<BlowupProfile> blowup_profiles(const GridFunction& w, std::size_t x0, double s,
                                           const AnalysisConfig& cfg, double R0 = 1.0,
                                           std::optional<Point> center = std::nullopt);

struct ConeCheck {
    double ell = 0.0;
    bool pass = false;
    double min_derivative = 0.0;  // over admissible directions and B_r(x0)
};

struct MonotonicityCone {
    double r = 0.0;
    std::vector<ConeCheck> checks;
    /// Smallest passing ℓ, if any.
    std::optional<double> ell;
    /// min ∂_e u over B_r(x0 + 2 r e).
    double kick = 0.0;

    bool pass() const { return ell.has_value(); }
    /// Monotone on B_r and a positive kick.
    bool holds() const { return pass() && kick > 0.0; }
    nlohmann::json to_json() const;
};

/// Directions e' with e'·e >= ℓ/√(1+ℓ²) (64 on the circle in 2D, ±1 in 1D) must have
/// ∂_{e'} u >= -tol on B_r(x0).
MonotonicityCone monotonicity_cone(const GridFunction& u, std::size_t x0, const Point& e, double r,
                                   const std::vector<double>& ell_grid, double tol = 1e-8);

struct HarnackRatio {
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    double quotient = 0.0;  // max/min

    nlohmann::json to_json() const;
};

/// Σ_x u(x)(1+|x|)^{-n-2s} h^n over the box.
double harnack_weight(const GridFunction& u, double s);

/// Extremes of (u1/m1)/(u2/m2) over `region`, m_i = harnack_weight(u_i, s).
/// Throws StructuralError if u2 <= 0 somewhere on the region.
HarnackRatio harnack_ratio(const GridFunction& u1, const GridFunction& u2, const NodeSet& region, double s);

struct BoundaryQuotient {
    GridFunction quotient;  // NaN outside the band
    std::size_t nodes = 0;
    double min = 0.0, max = 0.0;
    double oscillation = 0.0;  // max - min

    nlohmann::json to_json() const;
};

/// w/d^power on nodes with band_lo <= d <= band_hi and |x - x0| <= 2 band_hi.
/// band_lo is raised to 2h. Throws StructuralError if the band is empty.
BoundaryQuotient boundary_quotient(const GridFunction& w, const FreeBoundaryData& fb, std::size_t x0,
                                   double power, double band_lo, double band_hi);

/// |mask ∩ B_r(x0)| / |B_r(x0)| in lattice cells, per radius.
std::vector<double> contact_density(const GridSpec& grid, const Mask& mask, std::size_t x0,
                                    const std::vector<double>& radii);

/// max over node pairs of |∇u(x) - ∇u(y)| / |x - y|^exponent; the region is
/// thinned evenly to at most max_nodes nodes.
double holder_probe(const GridFunction& u, const NodeSet& region, double exponent, std::size_t max_nodes = 1500);

}  // namespace nlobs

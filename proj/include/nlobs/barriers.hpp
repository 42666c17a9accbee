#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nlobs/grid.hpp"
#include "nlobs/kernels.hpp"

namespace nlobs {

enum class ProfileKind { halfspace_s, halfspace_1ps, exp_barrier, cone_subsolution };

std::string to_string(ProfileKind kind);
/// Throws StructuralError for an unknown name.
ProfileKind profile_kind_from_string(const std::string& name);

/// Closed-form profiles:
///   halfspace_s       K (e·x)_+^s
///   halfspace_1ps     K (e·x)_+^{1+s}
///   exp_barrier       K exp(-|e·x|)
///   cone_subsolution  K (e·x - (η/4)|x|(1 - (e·x)²/|x|²))_+^{s+ε}, zero at the origin
struct ProfileSpec {
    ProfileKind kind = ProfileKind::halfspace_s;
    Point e{1.0, 0.0};
    double K = 1.0;
    double s = 0.5;
    double epsilon = 0.0;
    double eta = 0.0;

    /// Throws ConfigError unless e is a unit vector (e[1] = 0 in 1D), K > 0, s in (0, 1),
    /// and for the cone profile ε in (0, 1 - s) and η > 0.
    void validate(int dim) const;
    double operator()(const Point& x) const;
    /// Growth degree at infinity (0 for the exponential barrier).
    double growth() const;

    nlohmann::json to_json() const;
    static ProfileSpec from_json(const nlohmann::json& j);
};

GridFunction make_profile(const ProfileSpec& spec, const GridSpec& grid);

/// Exterior for applying `table` to the profile: exact values beyond the box and the
/// far field ∫_{|y|>window} K(y) f(x+y) dy. The far field uses adaptive Gauss–Kronrod
/// per node in 1D and a coarse lattice (≤ 65 nodes per axis, bilinear interpolation)
/// in 2D. Throws ConfigError if the profile grows like |x|^{2s} or faster.
Exterior profile_exterior(const ProfileSpec& spec, const KernelTable& table);

enum class InequalitySense { subsolution, supersolution, harmonic };

std::string to_string(InequalitySense sense);
InequalitySense inequality_sense_from_string(const std::string& name);

struct InequalityLevel {
    double h = 0.0;
    std::size_t region_nodes = 0;
    double min_value = 0.0;  // min L_h f over the region
    double max_value = 0.0;
    /// subsolution: max(0, -min); supersolution: max(0, max - bound); harmonic: max |L_h f|.
    double violation = 0.0;
    double tolerance = 0.0;
};

struct InequalityReport {
    ProfileSpec profile;
    InequalitySense sense = InequalitySense::harmonic;
    double bound = 0.0;
    std::vector<InequalityLevel> levels;
    /// The finest violation is within its tolerance and no refinement increases it.
    bool pass = false;

    nlohmann::json to_json() const;
};

/// L_h f over `region` on one grid. Throws StructuralError for an empty region.
InequalityLevel evaluate_inequality(const GridFunction& f, const KernelTable& table, const NodeSet& region,
                                    InequalitySense sense, const Exterior& exterior = {}, double bound = 0.0);

using RegionRule = std::function<bool(const Point& x, double h)>;
using ToleranceSchedule = std::function<double(double h)>;

/// Evaluates the profile on each grid (coarse to fine) with the full-box window
/// and the profile exterior. Nodes are kept where `region` holds.
InequalityReport verify_inequality(const ProfileSpec& profile, const KernelSpec& kernel,
                                   const std::vector<GridSpec>& grids, const RegionRule& region,
                                   InequalitySense sense, const ToleranceSchedule& tol, double bound = 0.0);

struct EtaSearch {
    std::optional<double> eta;
    std::vector<double> tried;
    std::vector<InequalityLevel> levels;  // one per tried η

    nlohmann::json to_json() const;
};

/// Tries η = 2^{-k}, k = 0..k_max, and returns the first η for which the cone profile
/// satisfies min L_h Φ >= -tol on C_η ∩ {|x| >= 8h} ∩ {|x| <= R/2}.
EtaSearch search_cone_eta(ProfileSpec base, const KernelTable& table, double tol, int k_max = 8);

}  // namespace nlobs

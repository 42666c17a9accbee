#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nlobs/analysis.hpp"
#include "nlobs/grid.hpp"
#include "nlobs/kernels.hpp"
#include "nlobs/operator.hpp"
#include "nlobs/solver.hpp"

namespace nlobs {

/// Catalog obstacle from {"type": ..., ...}:
///   bump    b (1 - |x/a|²)²_+
///   cosine  b (1 + cos(π|x|/a))/2 on |x| < a
///   tent    b (1 - |x|/a)_+  (Lipschitz only, outside the regularity hypothesis)
///   table   explicit "values", one per node
/// Throws ConfigError for an unknown type or bad parameters.
GridFunction make_obstacle(const nlohmann::json& spec, const GridSpec& grid);

/// Whether a catalog obstacle meets the regularity hypothesis (false for the tent).
bool obstacle_in_hypothesis(const nlohmann::json& spec);

/// Kernel from JSON: an explicit spec with "mu", or {"dim", "s"[, "value"]} for an isotropic one.
KernelSpec kernel_from_json(const nlohmann::json& j);

inline const std::vector<std::string> kStageNames = {"validate-kernel", "solve", "solve-fnl", "dirichlet",
                                                      "analyze", "barrier-check", "harnack"};

struct ExperimentConfig {
    std::string name = "experiment";
    GridSpec grid;
    std::optional<KernelSpec> kernel;
    std::optional<FullyNonlinearSpec> family;
    /// Interaction window radius; empty means the full box (2R).
    std::optional<double> window;
    nlohmann::json obstacle;
    SolverConfig solver;
    AnalysisConfig analysis;
    nlohmann::json analysis_extra = nlohmann::json::object();
    nlohmann::json dirichlet;
    nlohmann::json barrier;
    nlohmann::json harnack;
    std::vector<std::string> stages;
    std::string output = "out";

    /// Throws ConfigError (or StructuralError) if any nested invariant fails.
    static ExperimentConfig from_json(const nlohmann::json& j);
    /// Throws ConfigError naming the path if it cannot be read or parsed.
    static ExperimentConfig load(const std::filesystem::path& path);

    /// The configuration with every default filled in.
    nlohmann::json resolved() const;
};

struct StageOutcome {
    std::string stage;
    bool ok = false;
    std::string message;
};

struct RunSummary {
    std::vector<StageOutcome> stages;
    bool ok() const;
};

/// Runs the stages in order (the override list if nonempty), writing artifacts to `out`.
RunSummary run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out,
                          const std::vector<std::string>& stage_override = {});

/// Two Dirichlet solutions in B_1 minus the cone {x₂ <= -|x₁|}: zero on the cone, exterior
/// data g₁ = 1 and g₂ = exp(x₁) beyond B_1 off the cone, zero beyond the box. The ratio
/// is taken over B_{1/2} minus the cone.
struct HarnackExperiment {
    double h = 0.0;
    HarnackRatio ratio;
    SolveReport report1, report2;
    std::size_t region_nodes = 0;

    nlohmann::json to_json() const;
};

HarnackExperiment harnack_cone_experiment(const KernelSpec& kernel, const GridSpec& grid, const SolverConfig& cfg);

}  // namespace nlobs

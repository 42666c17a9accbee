#include <cmath>

#include <gtest/gtest.h>

#include "nlobs/barriers.hpp"
#include "nlobs/errors.hpp"

using namespace nlobs;

namespace {

ProfileSpec profile(ProfileKind kind, double s = 0.5, Point e = {1.0, 0.0}) {
    ProfileSpec p;
    p.kind = kind;
    p.s = s;
    p.e = e;
    if (kind == ProfileKind::cone_subsolution) {
        p.epsilon = 0.2;
        p.eta = 0.5;
    }
    return p;
}

}  // namespace

TEST(Profile, ExpBarrierValues) {
    const auto p = profile(ProfileKind::exp_barrier, 0.5, {0.0, 1.0});
    EXPECT_EQ(p({0.0, 0.0}), 1.0);
    EXPECT_DOUBLE_EQ(p({0.3, 1.0}), std::exp(-1.0));
    EXPECT_DOUBLE_EQ(p({0.3, -1.0}), std::exp(-1.0));
}

TEST(Profile, ConeAlongAxis) {
    const auto p = profile(ProfileKind::cone_subsolution, 0.5, {0.0, 1.0});
    EXPECT_EQ(p({0.0, 0.0}), 0.0);
    for (double t : {0.1, 0.5, 1.0, 2.5}) EXPECT_NEAR(p({0.0, t}), std::pow(t, 0.7), 1e-14);
}

TEST(Profile, ConeVanishesOutsideItsCone) {
    const auto p = profile(ProfileKind::cone_subsolution, 0.5, {0.0, 1.0});
    const auto g = GridSpec::uniform(2, 1.0, 32);
    const auto f = make_profile(p, g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Point x = g.coordinate(i);
        if (x[1] <= 0.0) EXPECT_EQ(f[i], 0.0);
        // The positivity set is a cone: invariant under dilation.
        const Point y{2.0 * x[0], 2.0 * x[1]};
        EXPECT_EQ(f[i] > 0.0, p(y) > 0.0);
    }
}

TEST(Profile, HalfspaceHomogeneity) {
    const double s = 0.5;
    const auto g = GridSpec::uniform(2, 2.0, 32);
    const auto p = profile(ProfileKind::halfspace_1ps, s, {0.6, 0.8});
    const auto f = make_profile(p, g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto k = g.lattice(i);
        const Lattice k2{2 * k[0], 2 * k[1]};
        if (!g.contains(k2)) continue;
        EXPECT_NEAR(f[g.index(k2)], std::pow(2.0, 1.0 + s) * f[i], 1e-14 * std::max(1.0, f[g.index(k2)]));
    }
}

TEST(Profile, QuarterTurnPermutesValues) {
    const auto g = GridSpec::uniform(2, 1.0, 16);
    for (auto kind : {ProfileKind::halfspace_s, ProfileKind::halfspace_1ps, ProfileKind::exp_barrier,
                      ProfileKind::cone_subsolution}) {
        const auto a = make_profile(profile(kind, 0.5, {0.6, 0.8}), g);
        const auto b = make_profile(profile(kind, 0.5, {-0.8, 0.6}), g);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const auto k = g.lattice(i);
            EXPECT_EQ(b[g.index({-k[1], k[0]})], a[i]) << to_string(kind);
        }
    }
}

TEST(Profile, UnknownKindIsStructural) {
    EXPECT_THROW(profile_kind_from_string("paraboloid"), StructuralError);
    EXPECT_THROW(ProfileSpec::from_json({{"kind", "paraboloid"}}), StructuralError);
    for (auto kind : {ProfileKind::halfspace_s, ProfileKind::halfspace_1ps, ProfileKind::exp_barrier,
                      ProfileKind::cone_subsolution})
        EXPECT_EQ(profile_kind_from_string(to_string(kind)), kind);
}

TEST(Profile, Validation) {
    auto p = profile(ProfileKind::halfspace_s);
    p.e = {1.0, 1.0};
    EXPECT_THROW(p.validate(2), ConfigError);
    p = profile(ProfileKind::halfspace_s, 0.5, {0.0, 1.0});
    EXPECT_THROW(p.validate(1), ConfigError);
    p = profile(ProfileKind::cone_subsolution, 0.5, {0.0, 1.0});
    p.epsilon = 0.6;
    EXPECT_THROW(p.validate(2), ConfigError);
    p.epsilon = 0.2;
    p.eta = 0.0;
    EXPECT_THROW(p.validate(2), ConfigError);
}

TEST(Profile, JsonRoundTrip) {
    const auto p = profile(ProfileKind::cone_subsolution, 0.4, {0.0, 1.0});
    const auto q = ProfileSpec::from_json(p.to_json());
    EXPECT_EQ(q.kind, p.kind);
    EXPECT_EQ(q.e, p.e);
    EXPECT_EQ(q.s, p.s);
    EXPECT_EQ(q.epsilon, p.epsilon);
    EXPECT_EQ(q.eta, p.eta);
}

TEST(ProfileExterior, FastGrowthRejected) {
    const auto t = build_kernel_table(KernelSpec::isotropic(1, 0.5), GridSpec::uniform(1, 1.0, 16));
    EXPECT_THROW(profile_exterior(profile(ProfileKind::halfspace_1ps), t), ConfigError);
}

TEST(Inequality, EmptyRegionIsStructural) {
    const auto g = GridSpec::uniform(1, 1.0, 16);
    const auto t = build_kernel_table(KernelSpec::isotropic(1, 0.5), g);
    EXPECT_THROW(evaluate_inequality(GridFunction(g), t, {}, InequalitySense::harmonic), StructuralError);
}

TEST(Inequality, HalfspaceHarmonicViolationNeverIncreases) {
    const double s = 0.5;
    std::vector<GridSpec> grids;
    for (int m : {32, 64, 128}) grids.push_back(GridSpec::uniform(1, 1.0, m));
    const double h0 = grids.front().h;
    const auto rep = verify_inequality(
        profile(ProfileKind::halfspace_s, s), KernelSpec::isotropic(1, s), grids,
        [h0](const Point& x, double) { return x[0] >= 4.0 * h0 * (1.0 - 1e-12) && x[0] <= 0.5; },
        InequalitySense::harmonic, [](double) { return 0.1; });
    ASSERT_EQ(rep.levels.size(), 3u);
    for (std::size_t k = 1; k < rep.levels.size(); ++k) EXPECT_LE(rep.levels[k].violation, rep.levels[k - 1].violation);
    EXPECT_TRUE(rep.pass);
}

TEST(Inequality, ExpBarrierSupersolutionStable) {
    const double s = 0.5;
    std::vector<GridSpec> grids;
    for (int m : {64, 128, 256}) grids.push_back(GridSpec::uniform(1, 4.0, m));
    const auto rep = verify_inequality(profile(ProfileKind::exp_barrier, s), KernelSpec::isotropic(1, s), grids,
                                       [](const Point&, double) { return true; }, InequalitySense::supersolution,
                                       [](double) { return 0.0; }, 0.0);
    ASSERT_EQ(rep.levels.size(), 3u);
    const double C = rep.levels.back().max_value;
    EXPECT_TRUE(std::isfinite(C));
    EXPECT_NEAR(rep.levels[1].max_value, C, 0.1 * std::abs(C));
}

TEST(Inequality, ReportJson) {
    std::vector<GridSpec> grids{GridSpec::uniform(1, 1.0, 32)};
    const auto rep = verify_inequality(profile(ProfileKind::halfspace_s), KernelSpec::isotropic(1, 0.5), grids,
                                       [](const Point& x, double h) { return x[0] >= 4.0 * h; },
                                       InequalitySense::harmonic, [](double) { return 1.0; });
    const auto j = rep.to_json();
    EXPECT_EQ(j.at("sense"), "harmonic");
    EXPECT_EQ(j.at("levels").size(), 1u);
    EXPECT_TRUE(j.contains("pass"));
    EXPECT_TRUE(j.at("levels")[0].contains("region_nodes"));
}

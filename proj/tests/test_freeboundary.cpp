#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "nlobs/errors.hpp"
#include "nlobs/experiment.hpp"
#include "nlobs/freeboundary.hpp"
#include "nlobs/solver.hpp"

using namespace nlobs;

namespace {

struct Solved {
    GridFunction u, phi;
};

const Solved& solved_bump() {
    static const Solved s = [] {
        const auto g = GridSpec::uniform(1, 8.0, 1024);
        ObstacleProblem p;
        p.phi = make_obstacle({{"type", "bump"}, {"a", 1.0}, {"b", 1.0}}, g);
        p.table = build_kernel_table(KernelSpec::isotropic(1, 0.5), g);
        return Solved{solve_obstacle(p).u, p.phi};
    }();
    return s;
}

Mask halfspace_mask(const GridSpec& g, const Point& e) {
    Mask m(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Point x = g.coordinate(i);
        m[i] = e[0] * x[0] + e[1] * x[1] <= 1e-12 ? 1 : 0;
    }
    return m;
}

}  // namespace

TEST(ContactSet, FullContactHasOnlyEdgeBoundary) {
    const auto g = GridSpec::uniform(2, 1.0, 8);
    const GridFunction u(g, 0.3);
    const auto c = extract_contact_set(u, u, 0.0);
    EXPECT_EQ(mask_to_nodes(c.mask).size(), g.size());
    EXPECT_EQ(c.boundary.size(), static_cast<std::size_t>(4 * (g.side() - 1)));
    for (auto i : c.boundary) {
        const auto k = g.lattice(i);
        EXPECT_TRUE(std::abs(k[0]) == g.half() || std::abs(k[1]) == g.half());
    }
}

TEST(ContactSet, NoContact) {
    const auto g = GridSpec::uniform(2, 1.0, 8);
    const GridFunction phi(g, 0.0), u(g, 1.0);
    const auto c = extract_contact_set(u, phi, 1e-6);
    EXPECT_TRUE(mask_to_nodes(c.mask).empty());
    EXPECT_TRUE(c.boundary.empty());
}

TEST(ContactSet, SolvedBumpIsOneInterval) {
    const auto& s = solved_bump();
    const double tol = 1e-7;
    const auto c = extract_contact_set(s.u, s.phi, tol);
    const auto nodes = mask_to_nodes(c.mask);
    ASSERT_FALSE(nodes.empty());
    EXPECT_EQ(nodes.back() - nodes.front() + 1, nodes.size());
    // Direct scan for the sign changes of u - φ - tol.
    std::vector<std::size_t> changes;
    for (std::size_t i = 0; i + 1 < s.u.size(); ++i) {
        const bool a = s.u[i] - s.phi[i] - tol <= 0.0, b = s.u[i + 1] - s.phi[i + 1] - tol <= 0.0;
        if (a != b) changes.push_back(b ? i + 1 : i);
    }
    ASSERT_EQ(changes.size(), 2u);
    EXPECT_EQ(changes[0], nodes.front());
    EXPECT_EQ(changes[1], nodes.back());
    EXPECT_EQ(c.boundary.size(), 2u);
}

TEST(ContactSet, ShrinksWithTolerance) {
    const auto& s = solved_bump();
    std::size_t prev = s.u.size() + 1;
    for (double tol : {1e-3, 1e-5, 1e-7, 0.0}) {
        const auto n = mask_to_nodes(extract_contact_set(s.u, s.phi, tol).mask).size();
        EXPECT_LE(n, prev);
        prev = n;
    }
}

TEST(Distance, SinglePointOneDimensional) {
    const auto g = GridSpec::uniform(1, 1.0, 16);
    Mask m(g.size(), 0);
    m[g.nearest({0.0, 0.0})] = 1;
    const auto d = distance_function(g, m);
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(d[i], std::abs(g.coordinate(i)[0]));
}

TEST(Distance, Halfspace) {
    const auto g = GridSpec::uniform(2, 1.0, 16);
    const Point e{0.6, 0.8};
    const auto d = distance_function(g, halfspace_mask(g, e));
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Point x = g.coordinate(i);
        EXPECT_LE(std::abs(d[i] - std::max(0.0, e[0] * x[0] + e[1] * x[1])), g.h);
    }
}

TEST(Distance, RandomMasksMatchBruteForce) {
    const auto g = GridSpec::uniform(2, 1.0, 12);
    std::mt19937 rng(42);
    std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
    for (int trial = 0; trial < 10; ++trial) {
        Mask m(g.size(), 0);
        for (int k = 0; k < 50; ++k) m[pick(rng)] = 1;
        const auto d = distance_function(g, m);
        const auto pts = mask_to_nodes(m);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const auto ki = g.lattice(i);
            double best = INFINITY;
            for (auto j : pts) {
                const auto kj = g.lattice(j);
                best = std::min(best, g.h * std::sqrt(double((ki[0] - kj[0]) * (ki[0] - kj[0]) +
                                                             (ki[1] - kj[1]) * (ki[1] - kj[1]))));
            }
            EXPECT_EQ(d[i], best);
        }
    }
}

TEST(Distance, EmptyMaskIsStructural) {
    const auto g = GridSpec::uniform(2, 1.0, 8);
    EXPECT_THROW(distance_function(g, Mask(g.size(), 0)), StructuralError);
}

TEST(Distance, LipschitzAndZeroOnMask) {
    const auto g = GridSpec::uniform(2, 1.0, 16);
    Mask m(g.size(), 0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Point x = g.coordinate(i);
        m[i] = std::hypot(x[0] - 0.2, x[1]) < 0.4 ? 1 : 0;
    }
    const auto d = distance_function(g, m);
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (m[i]) EXPECT_EQ(d[i], 0.0);
        else EXPECT_GT(d[i], 0.0);
        const auto k = g.lattice(i);
        for (const Lattice nb : {Lattice{k[0] + 1, k[1]}, Lattice{k[0], k[1] + 1}})
            if (g.contains(nb)) EXPECT_LE(std::abs(d[i] - d[g.index(nb)]), g.h + 1e-15);
    }
}

TEST(Normal, Halfspace) {
    const auto g = GridSpec::uniform(2, 1.0, 16);
    const auto m = halfspace_mask(g, {0.0, 1.0});
    const auto e = estimate_normal(g, m, g.index({0, 0}), 6.0 * g.h);
    EXPECT_NEAR(e[0], 0.0, 1e-6);
    EXPECT_NEAR(e[1], 1.0, 1e-6);
}

TEST(Normal, DiskWithinFiveDegrees) {
    const auto g = GridSpec::uniform(2, 1.0, 64);
    Mask m(g.size(), 0);
    for (std::size_t i = 0; i < g.size(); ++i) m[i] = norm(g.coordinate(i), 2) <= 0.5 ? 1 : 0;
    const auto c = extract_contact_set(GridFunction(g, 0.0), GridFunction::sample(g, [](const Point& x) {
                                           return norm(x, 2) <= 0.5 ? 0.0 : -1.0;
                                       }),
                                       0.0);
    ASSERT_FALSE(c.boundary.empty());
    for (auto i : c.boundary) {
        const Point x = g.coordinate(i);
        const auto e = estimate_normal(g, m, i, 6.0 * g.h);
        const double r = norm(x, 2);
        const double cosang = (e[0] * x[0] + e[1] * x[1]) / r;
        EXPECT_GE(cosang, std::cos(5.0 * std::numbers::pi / 180.0));
    }
}

TEST(Normal, QuarterTurnEquivariance) {
    const auto g = GridSpec::uniform(2, 1.0, 16);
    Mask m(g.size(), 0), rot(g.size(), 0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Point x = g.coordinate(i);
        m[i] = (x[0] + 0.3) * (x[0] + 0.3) + 2.0 * x[1] * x[1] <= 0.36 ? 1 : 0;
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto k = g.lattice(i);
        rot[g.index({-k[1], k[0]})] = m[i];
    }
    const auto boundary = extract_contact_set(GridFunction(g, 0.0), GridFunction::sample(g, [&](const Point& x) {
                                                  return m[g.nearest(x)] ? 0.0 : -1.0;
                                              }),
                                              0.0)
                              .boundary;
    ASSERT_FALSE(boundary.empty());
    for (auto i : boundary) {
        const auto k = g.lattice(i);
        const auto e = estimate_normal(g, m, i, 6.0 * g.h);
        const auto r = estimate_normal(g, rot, g.index({-k[1], k[0]}), 6.0 * g.h);
        EXPECT_NEAR(r[0], -e[1], 1e-12);
        EXPECT_NEAR(r[1], e[0], 1e-12);
    }
}

TEST(Normal, Errors) {
    const auto g = GridSpec::uniform(2, 1.0, 16);
    const auto m = halfspace_mask(g, {0.0, 1.0});
    EXPECT_THROW(estimate_normal(g, m, g.index({0, 0}), 2.0 * g.h), ConfigError);
    EXPECT_THROW(estimate_normal(g, Mask(g.size(), 1), g.index({0, 0}), 6.0 * g.h), StructuralError);
}

TEST(FreeBoundary, SolvedBumpData) {
    const auto& s = solved_bump();
    const auto fb = analyze_free_boundary(s.u, s.phi, 1e-7);
    ASSERT_EQ(fb.boundary_cells.size(), 2u);
    for (auto i : fb.boundary_cells) {
        EXPECT_TRUE(fb.contact_mask[i]);
        ASSERT_TRUE(fb.normals.count(i));
        const auto e = fb.normals.at(i);
        EXPECT_NEAR(std::hypot(e[0], e[1]), 1.0, 1e-12);
        // Points into {u > φ}: away from the origin.
        EXPECT_GT(e[0] * s.u.grid().coordinate(i)[0], 0.0);
    }
    for (std::size_t i = 0; i < s.u.size(); ++i) EXPECT_EQ(fb.distance[i] == 0.0, fb.contact_mask[i] != 0);
    const auto csv = boundary_csv(fb);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
}

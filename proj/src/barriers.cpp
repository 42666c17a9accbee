#include "nlobs/barriers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "nlobs/errors.hpp"
#include "nlobs/fast_operator.hpp"
#include "nlobs/parallel.hpp"

namespace nlobs {

std::string to_string(ProfileKind kind) {
    switch (kind) {
        case ProfileKind::halfspace_s: return "halfspace_s";
        case ProfileKind::halfspace_1ps: return "halfspace_1ps";
        case ProfileKind::exp_barrier: return "exp_barrier";
        case ProfileKind::cone_subsolution: return "cone_subsolution";
    }
    return "unknown";
}

ProfileKind profile_kind_from_string(const std::string& name) {
    for (auto k : {ProfileKind::halfspace_s, ProfileKind::halfspace_1ps, ProfileKind::exp_barrier,
                   ProfileKind::cone_subsolution})
        if (to_string(k) == name) return k;
    throw StructuralError("unknown profile kind '" + name + "'");
}

void ProfileSpec::validate(int dim) const {
    if (std::abs(std::hypot(e[0], e[1]) - 1.0) > 1e-12) throw ConfigError("profile direction must be a unit vector");
    if (dim == 1 && e[1] != 0.0) throw ConfigError("1D profile direction must be ±1");
    if (!(K > 0.0)) throw ConfigError("profile amplitude K must be positive");
    if (!(s > 0.0 && s < 1.0)) throw ConfigError("profile order s must lie in (0, 1)");
    if (kind == ProfileKind::cone_subsolution) {
        if (!(epsilon > 0.0 && epsilon < 1.0 - s)) throw ConfigError("cone epsilon must lie in (0, 1 - s)");
        if (!(eta > 0.0)) throw ConfigError("cone eta must be positive");
    }
}

double ProfileSpec::operator()(const Point& x) const {
    const double p = e[0] * x[0] + e[1] * x[1];
    switch (kind) {
        case ProfileKind::halfspace_s: return p > 0.0 ? K * std::pow(p, s) : 0.0;
        case ProfileKind::halfspace_1ps: return p > 0.0 ? K * std::pow(p, 1.0 + s) : 0.0;
        case ProfileKind::exp_barrier: return K * std::exp(-std::abs(p));
        case ProfileKind::cone_subsolution: {
            const double r = std::hypot(x[0], x[1]);
            if (r == 0.0) return 0.0;
            const double b = p - 0.25 * eta * r * (1.0 - (p * p) / (r * r));
            return b > 0.0 ? K * std::pow(b, s + epsilon) : 0.0;
        }
    }
    return 0.0;
}

double ProfileSpec::growth() const {
    switch (kind) {
        case ProfileKind::halfspace_s: return s;
        case ProfileKind::halfspace_1ps: return 1.0 + s;
        case ProfileKind::exp_barrier: return 0.0;
        case ProfileKind::cone_subsolution: return s + epsilon;
    }
    return 0.0;
}

nlohmann::json ProfileSpec::to_json() const {
    return {{"kind", to_string(kind)}, {"e", {e[0], e[1]}}, {"K", K}, {"s", s}, {"epsilon", epsilon}, {"eta", eta}};
}

ProfileSpec ProfileSpec::from_json(const nlohmann::json& j) {
    ProfileSpec p;
    p.kind = profile_kind_from_string(j.at("kind").get<std::string>());
    if (j.contains("e")) {
        const auto e = j.at("e").get<std::vector<double>>();
        if (e.empty() || e.size() > 2) throw ConfigError("profile e needs one or two components");
        p.e = {e[0], e.size() > 1 ? e[1] : 0.0};
    }
    p.K = j.value("K", 1.0);
    p.s = j.value("s", 0.5);
    p.epsilon = j.value("epsilon", 0.0);
    p.eta = j.value("eta", 0.0);
    return p;
}

GridFunction make_profile(const ProfileSpec& spec, const GridSpec& grid) {
    spec.validate(grid.dim);
    return GridFunction::sample(grid, [&](const Point& x) { return spec(x); });
}

namespace {

// ∫_ρ^∞ r^{-1-2s} f(x + r θ) dr after r = ρ/t, t = v^{1/(2s-β)}; the integrand in v is bounded.
struct RadialTail {
    const ProfileSpec& f;
    double s, rho, beta;

    double integrand(const Point& x, const Point& th, double v) const {
        const double t = std::pow(v, 1.0 / (2.0 * s - beta));
        if (!(t > 0.0)) return 0.0;
        const double r = rho / t;
        return std::pow(t, beta) * f({x[0] + r * th[0], x[1] + r * th[1]});
    }
    double scale() const { return std::pow(rho, -2.0 * s) / (2.0 * s - beta); }
};

}  // namespace

Exterior profile_exterior(const ProfileSpec& spec, const KernelTable& table) {
    const GridSpec& g = table.grid;
    spec.validate(g.dim);
    const double s = table.spec.s;
    const double beta = spec.growth();
    if (beta >= 2.0 * s) throw ConfigError("profile grows too fast for a convergent far field");

    Exterior ext;
    ext.value = [spec](const Point& x) { return spec(x); };
    const RadialTail tail{spec, s, table.window_radius, beta};
    const KernelSpec& ks = table.spec;

    if (g.dim == 1) {
        auto far = std::make_shared<std::vector<double>>(g.size());
        parallel_for(g.size(), [&](std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i) {
                const Point x = g.coordinate(i);
                double total = 0.0;
                for (int side = 0; side < 2; ++side) {
                    const Point th{side == 0 ? 1.0 : -1.0, 0.0};
                    auto fn = [&](double v) { return tail.integrand(x, th, v); };
                    const double I =
                        boost::math::quadrature::gauss_kronrod<double, 15>::integrate(fn, 0.0, 1.0, 15, 1e-12);
                    total += ks.mu[side] * I;
                }
                (*far)[i] = tail.scale() * total;
            }
        });
        ext.far_field = [far](std::size_t i) { return (*far)[i]; };
        return ext;
    }

    // 2D: midpoint rule in the angle, Gauss–Legendre in v, on a coarse lattice.
    const int m = g.half();
    int stride = 1;
    while (m / stride > 32 && m % (2 * stride) == 0) stride *= 2;
    const int cm = m / stride;
    const int cside = 2 * cm + 1;
    constexpr int angles = 256;
    std::vector<Point> dirs(angles);
    std::vector<double> mus(angles);
    for (int k = 0; k < angles; ++k) {
        const double a = 2.0 * std::numbers::pi * (k + 0.5) / angles;
        dirs[k] = {std::cos(a), std::sin(a)};
        mus[k] = ks.mu_at(a) * 2.0 * std::numbers::pi / angles;
    }
    using GL = boost::math::quadrature::gauss<double, 30>;
    std::vector<double> vnodes, vweights;
    {
        const auto& a = GL::abscissa();
        const auto& w = GL::weights();
        for (std::size_t k = 0; k < a.size(); ++k) {
            const double sgn[2] = {1.0, -1.0};
            for (double sg : sgn) {
                if (a[k] == 0.0 && sg < 0) continue;
                vnodes.push_back(0.5 * (1.0 + sg * a[k]));
                vweights.push_back(0.5 * w[k]);
            }
        }
    }
    auto coarse = std::make_shared<std::vector<double>>(static_cast<std::size_t>(cside) * cside);
    parallel_for(coarse->size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t c = b; c < e; ++c) {
            const int ci = static_cast<int>(c % cside) - cm, cj = static_cast<int>(c / cside) - cm;
            const Point x{ci * stride * g.h, cj * stride * g.h};
            double total = 0.0;
            for (int k = 0; k < angles; ++k) {
                double I = 0.0;
                for (std::size_t q = 0; q < vnodes.size(); ++q) I += vweights[q] * tail.integrand(x, dirs[k], vnodes[q]);
                total += mus[k] * I;
            }
            (*coarse)[c] = tail.scale() * total;
        }
    });
    ext.far_field = [coarse, g, stride, cside](std::size_t i) {
        const Lattice k = g.lattice(i);
        const int ax = k[0] + g.half(), ay = k[1] + g.half();
        const int i0 = std::min(ax / stride, cside - 2), j0 = std::min(ay / stride, cside - 2);
        const double fx = static_cast<double>(ax - i0 * stride) / stride;
        const double fy = static_cast<double>(ay - j0 * stride) / stride;
        auto at = [&](int a, int b) { return (*coarse)[static_cast<std::size_t>(a) + static_cast<std::size_t>(b) * cside]; };
        return (1 - fx) * (1 - fy) * at(i0, j0) + fx * (1 - fy) * at(i0 + 1, j0) + (1 - fx) * fy * at(i0, j0 + 1) +
               fx * fy * at(i0 + 1, j0 + 1);
    };
    return ext;
}

std::string to_string(InequalitySense sense) {
    switch (sense) {
        case InequalitySense::subsolution: return "subsolution";
        case InequalitySense::supersolution: return "supersolution";
        case InequalitySense::harmonic: return "harmonic";
    }
    return "unknown";
}

InequalitySense inequality_sense_from_string(const std::string& name) {
    for (auto k : {InequalitySense::subsolution, InequalitySense::supersolution, InequalitySense::harmonic})
        if (to_string(k) == name) return k;
    throw ConfigError("unknown inequality sense '" + name + "'");
}

nlohmann::json InequalityReport::to_json() const {
    nlohmann::json lv = nlohmann::json::array();
    for (const auto& l : levels)
        lv.push_back({{"h", l.h},
                      {"region_nodes", l.region_nodes},
                      {"min", l.min_value},
                      {"max", l.max_value},
                      {"violation", l.violation},
                      {"tolerance", l.tolerance}});
    return {{"profile", profile.to_json()}, {"sense", to_string(sense)}, {"bound", bound}, {"levels", lv}, {"pass", pass}};
}

InequalityLevel evaluate_inequality(const GridFunction& f, const KernelTable& table, const NodeSet& region,
                                    InequalitySense sense, const Exterior& exterior, double bound) {
    require_same_grid(f.grid(), table.grid, "profile vs kernel table");
    if (region.empty()) throw StructuralError("inequality region is empty");
    FastOperator op(table);
    const PreparedExterior prep = op.prepare(exterior);
    std::vector<double> Lf(f.size());
    op.apply(f.values(), Lf, &prep);
    InequalityLevel l;
    l.h = f.grid().h;
    l.region_nodes = region.size();
    l.min_value = std::numeric_limits<double>::infinity();
    l.max_value = -std::numeric_limits<double>::infinity();
    for (auto i : region) {
        l.min_value = std::min(l.min_value, Lf[i]);
        l.max_value = std::max(l.max_value, Lf[i]);
    }
    switch (sense) {
        case InequalitySense::subsolution: l.violation = std::max(0.0, -l.min_value); break;
        case InequalitySense::supersolution: l.violation = std::max(0.0, l.max_value - bound); break;
        case InequalitySense::harmonic: l.violation = std::max(std::abs(l.min_value), std::abs(l.max_value)); break;
    }
    return l;
}

InequalityReport verify_inequality(const ProfileSpec& profile, const KernelSpec& kernel,
                                   const std::vector<GridSpec>& grids, const RegionRule& region,
                                   InequalitySense sense, const ToleranceSchedule& tol, double bound) {
    if (grids.empty()) throw ConfigError("verify_inequality needs at least one grid");
    InequalityReport rep;
    rep.profile = profile;
    rep.sense = sense;
    rep.bound = bound;
    for (const auto& g : grids) {
        const KernelTable table = build_kernel_table(kernel, g);
        const GridFunction f = make_profile(profile, g);
        const NodeSet nodes = nodes_where(g, [&](const Point& x) { return region(x, g.h); });
        InequalityLevel l = evaluate_inequality(f, table, nodes, sense, profile_exterior(profile, table), bound);
        l.tolerance = tol(g.h);
        rep.levels.push_back(l);
    }
    rep.pass = rep.levels.back().violation <= rep.levels.back().tolerance;
    for (std::size_t k = 1; k < rep.levels.size(); ++k)
        rep.pass = rep.pass && rep.levels[k].violation <= rep.levels[k - 1].violation;
    return rep;
}

nlohmann::json EtaSearch::to_json() const {
    nlohmann::json lv = nlohmann::json::array();
    for (std::size_t k = 0; k < levels.size(); ++k)
        lv.push_back({{"eta", tried[k]},
                      {"min", levels[k].min_value},
                      {"violation", levels[k].violation},
                      {"tolerance", levels[k].tolerance},
                      {"region_nodes", levels[k].region_nodes}});
    return {{"eta", eta ? nlohmann::json(*eta) : nlohmann::json(nullptr)}, {"trials", lv}};
}

EtaSearch search_cone_eta(ProfileSpec base, const KernelTable& table, double tol, int k_max) {
    const GridSpec& g = table.grid;
    base.kind = ProfileKind::cone_subsolution;
    EtaSearch out;
    for (int k = 0; k <= k_max; ++k) {
        base.eta = std::ldexp(1.0, -k);
        const GridFunction f = make_profile(base, g);
        const NodeSet region = nodes_where(g, [&](const Point& x) {
            const double r = norm(x, g.dim);
            return r >= 8.0 * g.h * (1.0 - 1e-12) && r <= 0.5 * g.R && base(x) > 0.0;
        });
        InequalityLevel l = evaluate_inequality(f, table, region, InequalitySense::subsolution,
                                                profile_exterior(base, table));
        l.tolerance = tol;
        out.tried.push_back(base.eta);
        out.levels.push_back(l);
        if (l.violation <= tol) {
            out.eta = base.eta;
            break;
        }
    }
    return out;
}

}  // namespace nlobs

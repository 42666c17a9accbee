#include "nlobs/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "nlobs/errors.hpp"

namespace nlobs {

namespace {

double gradient_norm(const Point& g) { return std::hypot(g[0], g[1]); }

// Linear (1D) / bilinear (2D) interpolation of u at p; zero outside the box.
double interpolate(const GridFunction& u, const Point& p) {
    const GridSpec& g = u.grid();
    auto at = [&](int a, int b) {
        const Lattice k{a, b};
        return g.contains(k) ? u[g.index(k)] : 0.0;
    };
    const double tx = p[0] / g.h;
    const int ix = static_cast<int>(std::floor(tx));
    const double fx = tx - ix;
    if (g.dim == 1) return (1.0 - fx) * at(ix, 0) + fx * at(ix + 1, 0);
    const double ty = p[1] / g.h;
    const int iy = static_cast<int>(std::floor(ty));
    const double fy = ty - iy;
    return (1.0 - fx) * (1.0 - fy) * at(ix, iy) + fx * (1.0 - fy) * at(ix + 1, iy) +
           (1.0 - fx) * fy * at(ix, iy + 1) + fx * fy * at(ix + 1, iy + 1);
}

double ball_sup(const GridFunction& w, std::size_t x0, double r) {
    double v = -std::numeric_limits<double>::infinity();
    for (auto i : lattice_ball(w.grid(), x0, r)) v = std::max(v, w[i]);
    return v;
}

double ball_grad_sup(const std::vector<Point>& grad, const GridSpec& g, std::size_t x0, double r) {
    double v = 0.0;
    for (auto i : lattice_ball(g, x0, r)) v = std::max(v, gradient_norm(grad[i]));
    return v;
}

}  // namespace

AnalysisConfig AnalysisConfig::resolved(double s, const GridSpec& grid) const {
    AnalysisConfig c = *this;
    if (c.alpha == 0.0) c.alpha = 0.5 * std::min(s, 1.0 - s);
    if (c.gamma_probe == 0.0) c.gamma_probe = 0.5 * s;
    if (c.tau_probe == 0.0) c.tau_probe = 0.05;
    if (c.radii.empty()) {
        for (int k = 0; k <= 6; ++k) {
            const double r = grid.R / 8.0 * std::pow(2.0, -k);
            if (r >= 4.0 * grid.h * (1.0 - 1e-12)) c.radii.push_back(r);
        }
    }
    if (!(c.alpha > 0.0 && c.alpha < s && 1.0 + s + c.alpha < 2.0))
        throw ConfigError("alpha must satisfy 0 < alpha < s and 1 + s + alpha < 2");
    if (!(c.gamma_probe > 0.0 && c.gamma_probe < s)) throw ConfigError("gamma_probe must lie in (0, s)");
    if (!(c.tau_probe > 0.0 && c.tau_probe < 1.0)) throw ConfigError("tau_probe must lie in (0, 1)");
    if (c.radii.empty()) throw ConfigError("no resolvable radii");
    for (std::size_t k = 0; k < c.radii.size(); ++k) {
        if (k > 0 && !(c.radii[k] < c.radii[k - 1])) throw ConfigError("radii must be strictly decreasing");
        if (c.radii[k] < 4.0 * grid.h * (1.0 - 1e-12)) throw ConfigError("radii must be at least 4h");
    }
    if (c.radii.front() > 0.25 * grid.R * (1.0 + 1e-12)) throw ConfigError("radii must not exceed R/4");
    return c;
}

nlohmann::json AnalysisConfig::to_json() const {
    return {{"alpha", alpha}, {"radii", radii}, {"gamma_probe", gamma_probe}, {"tau_probe", tau_probe}};
}

AnalysisConfig AnalysisConfig::from_json(const nlohmann::json& j) {
    AnalysisConfig c;
    c.alpha = j.value("alpha", 0.0);
    c.gamma_probe = j.value("gamma_probe", 0.0);
    c.tau_probe = j.value("tau_probe", 0.0);
    if (j.contains("radii")) c.radii = j.at("radii").get<std::vector<double>>();
    return c;
}

std::vector<Point> discrete_gradient(const GridFunction& u) {
    const GridSpec& g = u.grid();
    std::vector<Point> grad(u.size(), Point{0.0, 0.0});
    for (std::size_t i = 0; i < u.size(); ++i) {
        const Lattice k = g.lattice(i);
        for (int axis = 0; axis < g.dim; ++axis) {
            Lattice p = k, q = k;
            p[axis] += 1;
            q[axis] -= 1;
            const bool hp = g.contains(p), hq = g.contains(q);
            if (hp && hq) grad[i][axis] = (u[g.index(p)] - u[g.index(q)]) / (2.0 * g.h);
            else if (hp) grad[i][axis] = (u[g.index(p)] - u[i]) / g.h;
            else if (hq) grad[i][axis] = (u[i] - u[g.index(q)]) / g.h;
        }
    }
    return grad;
}

nlohmann::json GrowthMonitor::to_json() const {
    return {{"radii", radii},
            {"grad_sup", grad_sup},
            {"theta", theta},
            {"growth_ratio", growth_ratio},
            {"regular_candidate", regular_candidate},
            {"criterion", "theta(last)/theta(first) >= 4"}};
}

GrowthMonitor growth_monitor(const GridFunction& w, std::size_t x0, double s, const AnalysisConfig& cfg,
                             const NodeSet& boundary) {
    if (x0 >= w.size()) throw ConfigError("x0 is not a grid node");
    if (!boundary.empty() && std::find(boundary.begin(), boundary.end(), x0) == boundary.end())
        throw ConfigError("x0 is not a free boundary node");
    const auto grad = discrete_gradient(w);
    GrowthMonitor m;
    m.radii = cfg.radii;
    double running = 0.0;
    for (double r : cfg.radii) {
        const double G = ball_grad_sup(grad, w.grid(), x0, r);
        m.grad_sup.push_back(G);
        running = std::max(running, std::pow(r, -s - cfg.alpha) * G);
        m.theta.push_back(running);
    }
    m.growth_ratio = m.theta.front() > 0.0 ? m.theta.back() / m.theta.front() : 0.0;
    m.regular_candidate = m.growth_ratio >= 4.0;
    return m;
}

nlohmann::json ExponentFit::to_json() const {
    return {{"beta", beta}, {"c", c}, {"residual", residual}, {"radii_used", radii_used}, {"sup_values", sup_values}};
}

std::vector<double> geometric_radii(double r_max, double r_min, int count) {
    std::vector<double> r(count);
    for (int k = 0; k < count; ++k) r[k] = r_max * std::pow(r_min / r_max, static_cast<double>(k) / (count - 1));
    return r;
}

ExponentFit fit_boundary_exponent(const GridFunction& w, std::size_t x0, const std::vector<double>& radii) {
    ExponentFit fit;
    for (double r : radii) {
        const double v = ball_sup(w, x0, r);
        if (v > 0.0) {
            fit.radii_used.push_back(r);
            fit.sup_values.push_back(v);
        }
    }
    const std::size_t n = fit.radii_used.size();
    if (n < 5) throw ConfigError("exponent fit needs at least 5 radii with positive sup");
    const auto [lo, hi] = std::minmax_element(fit.radii_used.begin(), fit.radii_used.end());
    if (*hi / *lo < 10.0 * (1.0 - 1e-12)) throw ConfigError("exponent fit radii must span one decade");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double x = std::log(fit.radii_used[k]), y = std::log(fit.sup_values[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double dn = static_cast<double>(n);
    fit.beta = (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
    const double logc = (sy - fit.beta * sx) / dn;
    fit.c = std::exp(logc);
    for (std::size_t k = 0; k < n; ++k)
        fit.residual = std::max(fit.residual, std::abs(std::log(fit.sup_values[k]) -
                                                       (logc + fit.beta * std::log(fit.radii_used[k]))));
    return fit;
}

Point subcell_free_boundary_point(const GridFunction& w, std::size_t x0, const Point& e, double s) {
    const GridSpec& g = w.grid();
    const Point c = g.coordinate(x0);
    const double w1 = interpolate(w, {c[0] + g.h * e[0], c[1] + g.h * e[1]});
    const double w2 = interpolate(w, {c[0] + 2.0 * g.h * e[0], c[1] + 2.0 * g.h * e[1]});
    double delta = 0.0;
    if (w1 > 0.0 && w2 > w1) {
        const double q = std::pow(w2 / w1, 1.0 / (1.0 + s));
        if (q > 2.0) delta = std::min((q - 2.0) / (q - 1.0), 1.0 - 1e-12);
    }
    return {c[0] + delta * g.h * e[0], c[1] + delta * g.h * e[1]};
}

nlohmann::json BlowupProfile::to_json() const {
    return {{"center", {center[0], center[1]}},
            {"r", r},
            {"theta", theta},
            {"d", d},
            {"K", K},
            {"e", {e[0], e[1]}},
            {"c1_distance", c1_distance},
            {"grad_sup_unit", grad_sup_unit},
            {"resolvable", resolvable}};
}

std::vector<BlowupProfile> blowup_profiles(const GridFunction& w, std::size_t x0, double s,
                                           const AnalysisConfig& cfg, double R0, std::optional<Point> center) {
    const GridSpec& g = w.grid();
    const GrowthMonitor mon = growth_monitor(w, x0, s, cfg);
    const GridSpec window{g.dim, R0 / 64.0, R0, ExteriorRule::zero};
    const Point c = center ? *center : g.coordinate(x0);
    const double p = 1.0 + s;
    std::vector<BlowupProfile> out;

    for (std::size_t k = 0; k < cfg.radii.size(); ++k) {
        if (!(mon.theta[k] > 0.0)) continue;
        BlowupProfile b;
        b.center = c;
        b.r = cfg.radii[k];
        b.theta = mon.theta[k];
        b.d = std::pow(b.r, 1.0 + s + cfg.alpha) * b.theta;
        b.resolvable = b.r * R0 / 64.0 >= g.h * (1.0 - 1e-12);
        b.v = GridFunction::sample(window, [&](const Point& xi) {
            return interpolate(w, {c[0] + b.r * xi[0], c[1] + b.r * xi[1]}) / b.d;
        });
        const auto& v = b.v;

        auto model_at = [&](const Point& e, const Point& xi) {
            const double t = e[0] * xi[0] + e[1] * xi[1];
            return t > 0.0 ? std::pow(t, p) : 0.0;
        };
        // Least-squares amplitude and squared misfit for a direction.
        auto misfit = [&](const Point& e, double& K) {
            double mv = 0.0, mm = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i) {
                const double m = model_at(e, window.coordinate(i));
                mv += m * v[i];
                mm += m * m;
            }
            K = mm > 0.0 ? mv / mm : 0.0;
            double r2 = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i) {
                const double d = v[i] - K * model_at(e, window.coordinate(i));
                r2 += d * d;
            }
            return r2;
        };
        double bestK = 0.0;
        if (g.dim == 1) {
            double Kp = 0.0, Km = 0.0;
            const double fp = misfit({1.0, 0.0}, Kp), fm = misfit({-1.0, 0.0}, Km);
            b.e = fp <= fm ? Point{1.0, 0.0} : Point{-1.0, 0.0};
            bestK = fp <= fm ? Kp : Km;
        } else {
            auto dir = [](double a) { return Point{std::cos(a), std::sin(a)}; };
            double best_a = 0.0, best_f = std::numeric_limits<double>::infinity();
            const int coarse = 360;
            for (int j = 0; j < coarse; ++j) {
                const double a = 2.0 * std::numbers::pi * j / coarse;
                double K = 0.0;
                const double f = misfit(dir(a), K);
                if (f < best_f) {
                    best_f = f;
                    best_a = a;
                }
            }
            // Golden-section refinement within one coarse step.
            const double step = 2.0 * std::numbers::pi / coarse;
            double lo = best_a - step, hi = best_a + step;
            const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
            for (int it = 0; it < 40; ++it) {
                const double a1 = hi - phi * (hi - lo), a2 = lo + phi * (hi - lo);
                double K1 = 0.0, K2 = 0.0;
                if (misfit(dir(a1), K1) < misfit(dir(a2), K2)) hi = a2;
                else lo = a1;
            }
            b.e = dir(0.5 * (lo + hi));
            misfit(b.e, bestK);
        }
        b.K = bestK;

        const GridFunction model =
            GridFunction::sample(window, [&](const Point& xi) { return b.K * model_at(b.e, xi); });
        const auto gv = discrete_gradient(v);
        const auto gm = discrete_gradient(model);
        for (std::size_t i = 0; i < v.size(); ++i) {
            const double dv = std::abs(v[i] - model[i]);
            const double dg = std::hypot(gv[i][0] - gm[i][0], gv[i][1] - gm[i][1]);
            b.c1_distance = std::max(b.c1_distance, dv + dg);
            if (norm(window.coordinate(i), window.dim) <= 1.0 + 1e-12)
                b.grad_sup_unit = std::max(b.grad_sup_unit, gradient_norm(gv[i]));
        }
        out.push_back(std::move(b));
    }
    return out;
}

nlohmann::json MonotonicityCone::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks) arr.push_back({{"ell", c.ell}, {"pass", c.pass}, {"min_derivative", c.min_derivative}});
    return {{"r", r}, {"checks", arr}, {"ell", ell ? nlohmann::json(*ell) : nlohmann::json(nullptr)},
            {"kick", kick}, {"pass", pass()}, {"holds", holds()}};
}

MonotonicityCone monotonicity_cone(const GridFunction& u, std::size_t x0, const Point& e, double r,
                                   const std::vector<double>& ell_grid, double tol) {
    const GridSpec& g = u.grid();
    if (std::abs(std::hypot(e[0], e[1]) - 1.0) > 1e-12) throw ConfigError("cone axis must be a unit vector");
    const auto grad = discrete_gradient(u);
    std::vector<Point> dirs;
    if (g.dim == 1) {
        dirs = {{1.0, 0.0}, {-1.0, 0.0}};
    } else {
        for (int j = 0; j < 64; ++j) {
            const double a = 2.0 * std::numbers::pi * j / 64;
            dirs.push_back({std::cos(a), std::sin(a)});
        }
    }
    const NodeSet ball = lattice_ball(g, x0, r);
    MonotonicityCone res;
    res.r = r;
    std::vector<double> sorted = ell_grid;
    std::sort(sorted.begin(), sorted.end());
    for (double ell : sorted) {
        const double cut = ell / std::sqrt(1.0 + ell * ell);
        ConeCheck c;
        c.ell = ell;
        c.min_derivative = std::numeric_limits<double>::infinity();
        for (const auto& d : dirs) {
            if (d[0] * e[0] + d[1] * e[1] < cut) continue;
            for (auto i : ball) c.min_derivative = std::min(c.min_derivative, grad[i][0] * d[0] + grad[i][1] * d[1]);
        }
        c.pass = c.min_derivative >= -tol;
        if (c.pass && !res.ell) res.ell = ell;
        res.checks.push_back(c);
    }
    const Point x = g.coordinate(x0);
    const std::size_t centre = g.nearest({x[0] + 2.0 * r * e[0], x[1] + 2.0 * r * e[1]});
    res.kick = std::numeric_limits<double>::infinity();
    for (auto i : lattice_ball(g, centre, r)) res.kick = std::min(res.kick, grad[i][0] * e[0] + grad[i][1] * e[1]);
    return res;
}

nlohmann::json HarnackRatio::to_json() const {
    return {{"min_ratio", min_ratio}, {"max_ratio", max_ratio}, {"quotient", quotient}};
}

double harnack_weight(const GridFunction& u, double s) {
    const GridSpec& g = u.grid();
    const double cell = g.dim == 1 ? g.h : g.h * g.h;
    double m = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
        m += u[i] * std::pow(1.0 + norm(g.coordinate(i), g.dim), -g.dim - 2.0 * s) * cell;
    return m;
}

HarnackRatio harnack_ratio(const GridFunction& u1, const GridFunction& u2, const NodeSet& region, double s) {
    require_same_grid(u1.grid(), u2.grid(), "harnack pair");
    if (region.empty()) throw StructuralError("harnack region is empty");
    const double m1 = harnack_weight(u1, s), m2 = harnack_weight(u2, s);
    if (!(m1 > 0.0) || !(m2 > 0.0)) throw StructuralError("harnack normalization weight is not positive");
    HarnackRatio h;
    h.min_ratio = std::numeric_limits<double>::infinity();
    h.max_ratio = 0.0;
    for (auto i : region) {
        if (!(u2[i] > 0.0)) throw StructuralError("u2 vanishes on the harnack region");
        const double q = (u1[i] / m1) / (u2[i] / m2);
        h.min_ratio = std::min(h.min_ratio, q);
        h.max_ratio = std::max(h.max_ratio, q);
    }
    h.quotient = h.max_ratio / h.min_ratio;
    return h;
}

nlohmann::json BoundaryQuotient::to_json() const {
    return {{"nodes", nodes}, {"min", min}, {"max", max}, {"oscillation", oscillation}};
}

BoundaryQuotient boundary_quotient(const GridFunction& w, const FreeBoundaryData& fb, std::size_t x0,
                                   double power, double band_lo, double band_hi) {
    const GridSpec& g = w.grid();
    require_same_grid(g, fb.grid, "boundary quotient");
    if (fb.distance.size() != g.size()) throw StructuralError("free boundary data has no distance field");
    const double lo = std::max(band_lo, 2.0 * g.h);
    const Point c = g.coordinate(x0);
    BoundaryQuotient q;
    q.quotient = GridFunction(g, std::numeric_limits<double>::quiet_NaN());
    q.min = std::numeric_limits<double>::infinity();
    q.max = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double d = fb.distance[i];
        if (d < lo * (1.0 - 1e-12) || d > band_hi * (1.0 + 1e-12)) continue;
        const Point x = g.coordinate(i);
        if (std::hypot(x[0] - c[0], x[1] - c[1]) > 2.0 * band_hi * (1.0 + 1e-12)) continue;
        const double v = w[i] / std::pow(d, power);
        q.quotient[i] = v;
        q.min = std::min(q.min, v);
        q.max = std::max(q.max, v);
        ++q.nodes;
    }
    if (q.nodes == 0) throw StructuralError("boundary quotient band is empty");
    q.oscillation = q.max - q.min;
    return q;
}

std::vector<double> contact_density(const GridSpec& grid, const Mask& mask, std::size_t x0,
                                    const std::vector<double>& radii) {
    if (mask.size() != grid.size()) throw StructuralError("mask size does not match the grid");
    std::vector<double> out;
    for (double r : radii) {
        const NodeSet ball = lattice_ball(grid, x0, r);
        std::size_t in = 0;
        for (auto i : ball) in += mask[i] ? 1 : 0;
        out.push_back(ball.empty() ? 0.0 : static_cast<double>(in) / static_cast<double>(ball.size()));
    }
    return out;
}

double holder_probe(const GridFunction& u, const NodeSet& region, double exponent, std::size_t max_nodes) {
    if (!(exponent > 0.0 && exponent < 1.0)) throw ConfigError("Hölder exponent must lie in (0, 1)");
    const GridSpec& g = u.grid();
    const auto grad = discrete_gradient(u);
    NodeSet nodes;
    const std::size_t stride = std::max<std::size_t>(1, (region.size() + max_nodes - 1) / std::max<std::size_t>(max_nodes, 1));
    for (std::size_t k = 0; k < region.size(); k += stride) nodes.push_back(region[k]);
    double best = 0.0;
    for (std::size_t a = 0; a < nodes.size(); ++a) {
        const Point xa = g.coordinate(nodes[a]);
        for (std::size_t b = a + 1; b < nodes.size(); ++b) {
            const Point xb = g.coordinate(nodes[b]);
            const double dist = std::hypot(xa[0] - xb[0], xa[1] - xb[1]);
            const auto& ga = grad[nodes[a]];
            const auto& gb = grad[nodes[b]];
            best = std::max(best, std::hypot(ga[0] - gb[0], ga[1] - gb[1]) / std::pow(dist, exponent));
        }
    }
    return best;
}

}  // namespace nlobs

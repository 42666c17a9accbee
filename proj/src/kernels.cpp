#include "nlobs/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

#include "nlobs/errors.hpp"

namespace nlobs {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// ∫_a^b r^{-1-2s} dr
double radial_integral(double a, double b, double s) {
    return (std::pow(a, -2.0 * s) - std::pow(b, -2.0 * s)) / (2.0 * s);
}

double wrap_angle(double a) { return std::remainder(a, kTwoPi); }

// Parameter interval [enter, exit] along the ray t·d that lies inside the box.
bool ray_box(double dx, double dy, double x0, double x1, double y0, double y1,
             double& enter, double& exit) {
    enter = 0.0;
    exit = std::numeric_limits<double>::infinity();
    auto slab = [&](double d, double lo, double hi) {
        if (std::abs(d) < 1e-300) return lo <= 0.0 && 0.0 <= hi;
        double t0 = lo / d, t1 = hi / d;
        if (t0 > t1) std::swap(t0, t1);
        enter = std::max(enter, t0);
        exit = std::min(exit, t1);
        return true;
    };
    if (!slab(dx, x0, x1) || !slab(dy, y0, y1)) return false;
    return enter < exit;
}

template <class F>
double integrate_pieces(std::vector<double> breaks, F&& f) {
    std::sort(breaks.begin(), breaks.end());
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
        const double a = breaks[k], b = breaks[k + 1];
        if (b - a <= 1e-15) continue;
        total += boost::math::quadrature::gauss<double, 10>::integrate(f, a, b);
    }
    return total;
}

// Second moments ∫ K(y) y_i^2 dy over the centre cell [-h/2, h/2]^2.
std::array<double, 2> centre_cell_moments_2d(const KernelSpec& spec, double h) {
    const double s = spec.s;
    std::vector<double> breaks{0.0, kTwoPi};
    for (int q = 0; q < 4; ++q) breaks.push_back(std::numbers::pi / 4 + q * std::numbers::pi / 2);
    const auto m = static_cast<int>(spec.mu.size());
    for (int k = 1; k < m; ++k) breaks.push_back(kTwoPi * k / m);
    auto radial = [&](double th) {
        const double c = std::cos(th), sn = std::sin(th);
        const double rout = 0.5 * h / std::max(std::abs(c), std::abs(sn));
        return spec.mu_at(th) * std::pow(rout, 2.0 - 2.0 * s) / (2.0 - 2.0 * s);
    };
    const double m11 = integrate_pieces(breaks, [&](double th) {
        const double c = std::cos(th);
        return radial(th) * c * c;
    });
    const double m22 = integrate_pieces(breaks, [&](double th) {
        const double sn = std::sin(th);
        return radial(th) * sn * sn;
    });
    return {m11, m22};
}

void check_window(const GridSpec& grid, double window) {
    if (window < 2.0 * grid.h * (1.0 - 1e-12))
        throw ConfigError("window_radius must be at least 2h");
    if (window > 2.0 * grid.R * (1.0 + 1e-12))
        throw ConfigError("window_radius must not exceed 2R");
}

KernelTable build_1d(const KernelSpec& spec, const GridSpec& grid, double window) {
    KernelTable t;
    const double h = grid.h, s = spec.s;
    const double mu = spec.mu[0];  // evenness validated
    std::vector<double> w;
    for (int j = 1; (j - 0.5) * h < window * (1.0 - 1e-14); ++j) {
        const double a = (j - 0.5) * h;
        const double b = std::min((j + 0.5) * h, window);
        w.push_back(mu * radial_integral(a, b, s));
    }
    const int J = static_cast<int>(w.size());
    // Correction at ±h so that the one-sided second moment matches
    // ∫_0^window K y^2 dy, i.e. the scheme is exact on quadratics.
    double captured = 0.0;
    for (int j = 1; j <= J; ++j) captured += w[j - 1] * (j * h) * (j * h);
    const double target = mu * std::pow(window, 2.0 - 2.0 * s) / (2.0 - 2.0 * s);
    double moment = target - captured;
    if (!(moment > 0.0)) moment = mu * std::pow(0.5 * h, 2.0 - 2.0 * s) / (2.0 - 2.0 * s);
    const double correction = moment / (h * h);

    for (int j = -J; j <= J; ++j) {
        if (j == 0) continue;
        const double cell = w[std::abs(j) - 1];
        t.offsets.push_back({j, 0});
        t.cell_integrals.push_back(cell);
        t.weights.push_back(std::abs(j) == 1 ? cell + correction : cell);
    }
    t.reach = J;
    const double tail_half = mu * std::pow(window, -2.0 * s) / (2.0 * s);
    t.tail_by_sector = {tail_half, tail_half};
    return t;
}

KernelTable build_2d(const KernelSpec& spec, const GridSpec& grid, double window) {
    KernelTable t;
    const double h = grid.h, s = spec.s;
    const int reach = static_cast<int>(std::ceil(window / h + 0.5));
    auto intersects = [&](int i, int j) {
        const double dx = std::max(0.0, std::abs(i) - 0.5) * h;
        const double dy = std::max(0.0, std::abs(j) - 0.5) * h;
        return std::hypot(dx, dy) < window;
    };
    // Canonical half: j > 0, or j == 0 and i > 0. The other half is mirrored so
    // that w(y) = w(-y) holds bitwise.
    std::vector<Lattice> half;
    std::vector<double> half_w;
    for (int j = 0; j <= reach; ++j) {
        for (int i = -reach; i <= reach; ++i) {
            if (j == 0 && i <= 0) continue;
            if (!intersects(i, j)) continue;
            const double w = cell_integral_2d(spec, i, j, h, window);
            if (!(w > 0.0)) continue;
            half.push_back({i, j});
            half_w.push_back(w);
        }
    }
    const auto moments = centre_cell_moments_2d(spec, h);
    const double corr[2] = {moments[0] / (2.0 * h * h), moments[1] / (2.0 * h * h)};

    std::vector<std::pair<Lattice, double>> all;
    all.reserve(2 * half.size());
    for (std::size_t k = 0; k < half.size(); ++k) {
        all.push_back({half[k], half_w[k]});
        all.push_back({{-half[k][0], -half[k][1]}, half_w[k]});
    }
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        return a.first[1] != b.first[1] ? a.first[1] < b.first[1] : a.first[0] < b.first[0];
    });
    int max_reach = 0;
    for (const auto& [o, w] : all) {
        double weight = w;
        if (o[1] == 0 && std::abs(o[0]) == 1) weight += corr[0];
        if (o[0] == 0 && std::abs(o[1]) == 1) weight += corr[1];
        t.offsets.push_back(o);
        t.cell_integrals.push_back(w);
        t.weights.push_back(weight);
        max_reach = std::max({max_reach, std::abs(o[0]), std::abs(o[1])});
    }
    t.reach = max_reach;

    const auto m = static_cast<int>(spec.mu.size());
    const double dtheta = kTwoPi / m;
    const double radial = std::pow(window, -2.0 * s) / (2.0 * s);
    for (int k = 0; k < m; ++k)
        t.tail_by_sector.push_back(radial * dtheta * 0.5 * (spec.mu[k] + spec.mu[(k + 1) % m]));
    return t;
}

}  // namespace

KernelSpec KernelSpec::isotropic(int dim, double s, double value, int samples) {
    KernelSpec k;
    k.dim = dim;
    k.s = s;
    k.lambda = value;
    k.Lambda = value;
    k.mu.assign(dim == 1 ? 2 : samples, value);
    return k;
}

double KernelSpec::mu_at(double theta) const {
    if (dim == 1) return theta == 0.0 ? mu[0] : mu[1];
    const auto m = static_cast<int>(mu.size());
    double t = theta / kTwoPi;
    t -= std::floor(t);
    const double pos = t * m;
    int k = static_cast<int>(pos);
    if (k >= m) k = m - 1;
    const double frac = pos - k;
    return (1.0 - frac) * mu[k] + frac * mu[(k + 1) % m];
}

double KernelSpec::angular_mass() const {
    if (dim == 1) return mu[0] + mu[1];
    double sum = 0.0;
    for (double v : mu) sum += v;
    return sum * kTwoPi / static_cast<double>(mu.size());
}

KernelSpec KernelSpec::from_json(const nlohmann::json& j) {
    KernelSpec k;
    k.dim = j.at("dim").get<int>();
    k.s = j.at("s").get<double>();
    k.lambda = j.at("lambda").get<double>();
    k.Lambda = j.at("Lambda").get<double>();
    k.mu = j.at("mu").get<std::vector<double>>();
    return k;
}

nlohmann::json KernelSpec::to_json() const {
    return {{"dim", dim}, {"s", s}, {"lambda", lambda}, {"Lambda", Lambda}, {"mu", mu}};
}

bool ValidationReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

bool ValidationReport::passed(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return c.pass;
    throw std::out_of_range("no invariant named " + name);
}

nlohmann::json ValidationReport::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks) arr.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return {{"pass", pass()}, {"checks", arr}};
}

ValidationReport validate_kernel_spec(const KernelSpec& spec) {
    ValidationReport r;
    auto add = [&](std::string name, bool ok, std::string detail) {
        r.checks.push_back({std::move(name), ok, std::move(detail)});
    };

    bool structural = true;
    std::string why;
    if (spec.dim != 1 && spec.dim != 2) {
        structural = false;
        why = "dim must be 1 or 2";
    } else if (spec.mu.empty()) {
        structural = false;
        why = "empty mu table";
    } else if (spec.dim == 1 && spec.mu.size() != 2) {
        structural = false;
        why = "1D mu needs exactly two values";
    } else if (spec.dim == 2 && (spec.mu.size() < kMinAngularSamples || spec.mu.size() % 2 != 0)) {
        structural = false;
        why = "2D mu needs an even number >= 64 of angular samples";
    } else if (std::any_of(spec.mu.begin(), spec.mu.end(), [](double v) { return !std::isfinite(v); })) {
        structural = false;
        why = "non-finite mu value";
    }
    add("structure", structural, why);

    add("order", spec.s > 0.0 && spec.s < 1.0, "require 0 < s < 1");
    add("ellipticity_constants", spec.lambda > 0.0 && spec.lambda <= spec.Lambda,
        "require 0 < lambda <= Lambda");

    if (!structural) {
        add("evenness", false, "not checked: " + why);
        add("lower_bound", false, "not checked: " + why);
        add("upper_bound", false, "not checked: " + why);
        return r;
    }

    const auto m = spec.mu.size();
    const std::size_t shift = spec.dim == 1 ? 1 : m / 2;
    double worst = 0.0;
    for (std::size_t k = 0; k < m; ++k) worst = std::max(worst, std::abs(spec.mu[k] - spec.mu[(k + shift) % m]));
    const double scale = *std::max_element(spec.mu.begin(), spec.mu.end());
    {
        std::ostringstream os;
        os << "max |mu(theta) - mu(-theta)| = " << worst;
        add("evenness", worst <= 1e-12 * std::max(1.0, std::abs(scale)), os.str());
    }
    const double lo = *std::min_element(spec.mu.begin(), spec.mu.end());
    {
        std::ostringstream os;
        os << "min mu = " << lo << ", lambda = " << spec.lambda;
        add("lower_bound", lo >= spec.lambda, os.str());
    }
    {
        std::ostringstream os;
        os << "max mu = " << scale << ", Lambda = " << spec.Lambda;
        add("upper_bound", scale <= spec.Lambda, os.str());
    }
    return r;
}

double tail_integral(const KernelSpec& spec, double radius) {
    return spec.angular_mass() * std::pow(radius, -2.0 * spec.s) / (2.0 * spec.s);
}

double cell_integral_2d(const KernelSpec& spec, int i, int j, double h, double window) {
    if (i == 0 && j == 0) throw ConfigError("cell_integral_2d: the centre cell is singular");
    const double s = spec.s;
    const double x0 = (i - 0.5) * h, x1 = (i + 0.5) * h;
    const double y0 = (j - 0.5) * h, y1 = (j + 0.5) * h;
    const double dx = std::max(0.0, std::abs(i) - 0.5) * h;
    const double dy = std::max(0.0, std::abs(j) - 0.5) * h;
    if (std::hypot(dx, dy) >= window) return 0.0;

    const double centre = std::atan2(static_cast<double>(j), static_cast<double>(i));
    std::vector<double> corners;
    for (double cx : {x0, x1})
        for (double cy : {y0, y1}) corners.push_back(wrap_angle(std::atan2(cy, cx) - centre));
    const double lo = *std::min_element(corners.begin(), corners.end());
    const double hi = *std::max_element(corners.begin(), corners.end());

    std::vector<double> breaks = corners;
    auto add_break = [&](double absolute) {
        const double rel = wrap_angle(absolute - centre);
        if (rel > lo && rel < hi) breaks.push_back(rel);
    };
    const auto m = static_cast<int>(spec.mu.size());
    for (int k = 0; k < m; ++k) add_break(kTwoPi * k / m);
    // Angles where the window circle crosses the cell edges.
    for (double xe : {x0, x1}) {
        if (window > std::abs(xe)) {
            const double yc = std::sqrt(window * window - xe * xe);
            for (double yy : {yc, -yc})
                if (yy >= y0 && yy <= y1) add_break(std::atan2(yy, xe));
        }
    }
    for (double ye : {y0, y1}) {
        if (window > std::abs(ye)) {
            const double xc = std::sqrt(window * window - ye * ye);
            for (double xx : {xc, -xc})
                if (xx >= x0 && xx <= x1) add_break(std::atan2(ye, xx));
        }
    }

    return integrate_pieces(breaks, [&](double rel) {
        const double th = centre + rel;
        double enter = 0.0, exit = 0.0;
        if (!ray_box(std::cos(th), std::sin(th), x0, x1, y0, y1, enter, exit)) return 0.0;
        exit = std::min(exit, window);
        if (enter >= exit) return 0.0;
        return spec.mu_at(th) * radial_integral(enter, exit, s);
    });
}

KernelTable build_kernel_table(const KernelSpec& spec, const GridSpec& grid,
                               std::optional<double> window_radius) {
    const auto report = validate_kernel_spec(spec);
    if (!report.pass()) throw ConfigError("invalid kernel spec: " + report.to_json().dump());
    grid.validate();
    if (spec.dim != grid.dim) throw ConfigError("kernel and grid dimensions differ");
    const double window = window_radius.value_or(2.0 * grid.R);
    check_window(grid, window);

    KernelTable t = spec.dim == 1 ? build_1d(spec, grid, window) : build_2d(spec, grid, window);
    t.spec = spec;
    t.grid = grid;
    t.window_radius = window;
    t.tail_weight = 0.0;
    for (double v : t.tail_by_sector) t.tail_weight += v;
    double sum = 0.0;
    for (double w : t.weights) sum += w;
    t.diag_coeff = sum + t.tail_weight;
    return t;
}

}  // namespace nlobs

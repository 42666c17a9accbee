#include "nlobs/krylov.hpp"

#include <algorithm>
#include <cmath>

namespace nlobs {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double norm_inf(std::span<const double> a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

double true_residual(const LinearMap& A, std::span<const double> b, std::span<const double> x,
                     std::vector<double>& r) {
    A(x, r);
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = b[i] - r[i];
    return norm_inf(r);
}

}  // namespace

KrylovResult conjugate_gradient(const LinearMap& A, std::span<const double> b, std::span<double> x,
                                double abs_tol, int max_iters, const LinearMap& M) {
    const std::size_t n = b.size();
    KrylovResult res;
    if (n == 0) {
        res.converged = true;
        return res;
    }
    auto precond = [&](std::span<const double> in, std::span<double> out) {
        if (M) M(in, out);
        else std::copy(in.begin(), in.end(), out.begin());
    };
    std::vector<double> r(n), z(n), p(n), Ap(n);
    res.residual = true_residual(A, b, x, r);
    precond(r, z);
    p = z;
    double rz = dot(r, z);
    // Stop once rounding dominates: no 1% gain in the best residual over 200 steps.
    double best = res.residual;
    int best_at = 0;
    for (int it = 0; it < max_iters; ++it) {
        if (res.residual <= abs_tol) break;
        A(p, Ap);
        const double pAp = dot(p, Ap);
        if (!(pAp > 0.0)) break;
        const double alpha = rz / pAp;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * Ap[i];
        }
        ++res.iterations;
        res.residual = norm_inf(r);
        // Confirm with the true residual before stopping, and refresh it now and then.
        if (res.residual <= abs_tol || res.iterations % 100 == 0) res.residual = true_residual(A, b, x, r);
        if (res.residual <= abs_tol) break;
        if (res.residual < 0.99 * best) {
            best = res.residual;
            best_at = res.iterations;
        } else if (res.iterations - best_at > 200) {
            break;
        }
        precond(r, z);
        const double rz_new = dot(r, z);
        const double beta = rz_new / rz;
        rz = rz_new;
        for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    res.converged = res.residual <= abs_tol;
    return res;
}

KrylovResult gmres(const LinearMap& A, std::span<const double> b, std::span<double> x,
                   double abs_tol, int max_iters, const LinearMap& M, int restart) {
    const std::size_t n = b.size();
    KrylovResult res;
    if (n == 0) {
        res.converged = true;
        return res;
    }
    const int m = std::max(1, restart);
    std::vector<std::vector<double>> V(m + 1, std::vector<double>(n));
    std::vector<std::vector<double>> H(m + 1, std::vector<double>(m, 0.0));
    std::vector<double> cs(m), sn(m), g(m + 1), w(n), z(n), r(n);
    auto precond = [&](std::span<const double> in, std::span<double> out) {
        if (M) M(in, out);
        else std::copy(in.begin(), in.end(), out.begin());
    };

    res.residual = true_residual(A, b, x, r);
    while (res.residual > abs_tol && res.iterations < max_iters) {
        const double beta = norm2(r);
        for (std::size_t i = 0; i < n; ++i) V[0][i] = r[i] / beta;
        std::fill(g.begin(), g.end(), 0.0);
        g[0] = beta;
        int k = 0;
        while (k < m && res.iterations < max_iters) {
            precond(V[k], z);
            A(z, w);
            ++res.iterations;
            for (int j = 0; j <= k; ++j) {
                H[j][k] = dot(w, V[j]);
                for (std::size_t i = 0; i < n; ++i) w[i] -= H[j][k] * V[j][i];
            }
            H[k + 1][k] = norm2(w);
            if (H[k + 1][k] > 0.0)
                for (std::size_t i = 0; i < n; ++i) V[k + 1][i] = w[i] / H[k + 1][k];
            for (int j = 0; j < k; ++j) {
                const double t = cs[j] * H[j][k] + sn[j] * H[j + 1][k];
                H[j + 1][k] = -sn[j] * H[j][k] + cs[j] * H[j + 1][k];
                H[j][k] = t;
            }
            const double den = std::hypot(H[k][k], H[k + 1][k]);
            cs[k] = den > 0.0 ? H[k][k] / den : 1.0;
            sn[k] = den > 0.0 ? H[k + 1][k] / den : 0.0;
            H[k][k] = den;
            H[k + 1][k] = 0.0;
            g[k + 1] = -sn[k] * g[k];
            g[k] = cs[k] * g[k];
            ++k;
            if (std::abs(g[k]) <= 0.5 * abs_tol) break;
        }
        std::vector<double> y(k);
        for (int i = k - 1; i >= 0; --i) {
            double t = g[i];
            for (int j = i + 1; j < k; ++j) t -= H[i][j] * y[j];
            y[i] = t / H[i][i];
        }
        std::fill(w.begin(), w.end(), 0.0);
        for (int j = 0; j < k; ++j)
            for (std::size_t i = 0; i < n; ++i) w[i] += y[j] * V[j][i];
        precond(w, z);
        for (std::size_t i = 0; i < n; ++i) x[i] += z[i];
        const double previous = res.residual;
        res.residual = true_residual(A, b, x, r);
        if (res.residual > 0.99 * previous) break;  // restart cycle made no progress
    }
    res.converged = res.residual <= abs_tol;
    return res;
}

}  // namespace nlobs

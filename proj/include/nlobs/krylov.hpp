#pragma once

#include <functional>
#include <span>
#include <vector>

namespace nlobs {

using LinearMap = std::function<void(std::span<const double>, std::span<double>)>;

struct KrylovResult {
    int iterations = 0;
    double residual = 0.0;  // final max |b - A x|
    bool converged = false;
};

/// Preconditioned conjugate gradients for symmetric positive definite A and M.
/// x holds the initial guess on entry. Stops when max |b - A x| <= abs_tol.
/// An empty M means no preconditioning.
KrylovResult conjugate_gradient(const LinearMap& A, std::span<const double> b, std::span<double> x,
                                double abs_tol, int max_iters, const LinearMap& M = {});

/// Restarted right-preconditioned GMRES(restart) for general nonsingular A.
/// Same conventions as CG.
KrylovResult gmres(const LinearMap& A, std::span<const double> b, std::span<double> x,
                   double abs_tol, int max_iters, const LinearMap& M = {}, int restart = 50);

}  // namespace nlobs

#pragma once

#include <memory>
#include <span>
#include <vector>

#include "nlobs/grid.hpp"
#include "nlobs/kernels.hpp"

namespace nlobs {

/// Exterior data sampled once on the extended lattice for repeated FFT applies.
struct PreparedExterior {
    /// Values on the extended array (box plus reach), zero at box nodes.
    std::vector<double> padding;
    /// far(x) per box node.
    std::vector<double> far;
};

/// L_h by FFT convolution of the weight stencil with the extended field.
///
/// Agrees with apply_linear up to rounding. An instance owns scratch buffers,
/// so one instance must not be shared between threads.
class FastOperator {
public:
    explicit FastOperator(const KernelTable& table);
    ~FastOperator();
    FastOperator(FastOperator&&) noexcept;
    FastOperator& operator=(FastOperator&&) noexcept;
    FastOperator(const FastOperator&) = delete;
    FastOperator& operator=(const FastOperator&) = delete;

    const KernelTable& table() const;

    PreparedExterior prepare(const Exterior& exterior) const;

    /// out(x) = Σ_j w_j z(x + y_j) over box nodes, z = `inside` in the box and
    /// the padding outside (zero if null).
    void neighbour_sum(std::span<const double> inside, std::span<double> out,
                       const PreparedExterior* exterior = nullptr);

    /// out = L_h u on every box node.
    void apply(std::span<const double> u, std::span<double> out,
               const PreparedExterior* exterior = nullptr);

    /// Exterior part of L_h: the value of L_h at u = 0 in the box.
    std::vector<double> exterior_source(const PreparedExterior& exterior);

    /// out = R C^{-1} R^T in, where C is the periodic convolution with symbol
    /// diag_coeff - ŵ on the FFT lattice and R restricts to the box. Symmetric
    /// positive definite; used to precondition -L_h.
    void precondition(std::span<const double> in, std::span<double> out);

    struct Impl;

private:
    std::unique_ptr<Impl> impl_;
};

/// Smallest n >= target whose prime factors are all in {2, 3, 5, 7}.
int fft_friendly_size(int target);

}  // namespace nlobs

#include "nlobs/fast_operator.hpp"

#include <complex>
#include <mutex>

#include <fftw3.h>

#include "nlobs/errors.hpp"

namespace nlobs {

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwDeleter {
    void operator()(void* p) const { fftw_free(p); }
};

template <class T>
using FftwBuffer = std::unique_ptr<T[], FftwDeleter>;

template <class T>
FftwBuffer<T> fftw_buffer(std::size_t n) {
    auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * n));
    if (!p) throw std::bad_alloc();
    return FftwBuffer<T>(p);
}

}  // namespace

int fft_friendly_size(int target) {
    for (int n = std::max(target, 1);; ++n) {
        int r = n;
        for (int p : {2, 3, 5, 7})
            while (r % p == 0) r /= p;
        if (r == 1) return n;
    }
}

struct FastOperator::Impl {
    KernelTable table;
    int dim = 1;
    int m = 0;       // box half-width in nodes
    int reach = 0;   // stencil reach J
    int ext = 0;     // extended side 2(m+J)+1
    int P = 0;       // FFT length per dimension
    std::size_t nreal = 0, ncomplex = 0;
    FftwBuffer<double> real;
    FftwBuffer<fftw_complex> spec;
    FftwBuffer<fftw_complex> kernel;
    std::vector<double> inv_symbol;
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;

    ~Impl() {
        std::lock_guard lock(planner_mutex());
        if (forward) fftw_destroy_plan(forward);
        if (backward) fftw_destroy_plan(backward);
    }

    std::size_t ext_index(int a, int b) const {
        const auto ia = static_cast<std::size_t>(a + m + reach);
        if (dim == 1) return ia;
        return ia + static_cast<std::size_t>(b + m + reach) * static_cast<std::size_t>(ext);
    }
    std::size_t fft_index(std::size_t ea, std::size_t eb) const {
        return dim == 1 ? ea : ea + eb * static_cast<std::size_t>(P);
    }
};

FastOperator::FastOperator(const KernelTable& table) : impl_(std::make_unique<Impl>()) {
    auto& I = *impl_;
    I.table = table;
    I.dim = table.grid.dim;
    I.m = table.grid.half();
    I.reach = table.reach;
    I.ext = 2 * (I.m + I.reach) + 1;
    I.P = fft_friendly_size(I.ext);
    const auto P = static_cast<std::size_t>(I.P);
    I.nreal = I.dim == 1 ? P : P * P;
    I.ncomplex = I.dim == 1 ? P / 2 + 1 : P * (P / 2 + 1);
    I.real = fftw_buffer<double>(I.nreal);
    I.spec = fftw_buffer<fftw_complex>(I.ncomplex);
    I.kernel = fftw_buffer<fftw_complex>(I.ncomplex);
    {
        std::lock_guard lock(planner_mutex());
        if (I.dim == 1) {
            I.forward = fftw_plan_dft_r2c_1d(I.P, I.real.get(), I.spec.get(), FFTW_ESTIMATE);
            I.backward = fftw_plan_dft_c2r_1d(I.P, I.spec.get(), I.real.get(), FFTW_ESTIMATE);
        } else {
            I.forward = fftw_plan_dft_r2c_2d(I.P, I.P, I.real.get(), I.spec.get(), FFTW_ESTIMATE);
            I.backward = fftw_plan_dft_c2r_2d(I.P, I.P, I.spec.get(), I.real.get(), FFTW_ESTIMATE);
        }
    }
    if (!I.forward || !I.backward) throw std::runtime_error("FFTW planning failed");

    std::fill(I.real.get(), I.real.get() + I.nreal, 0.0);
    auto wrap = [&](int o) { return static_cast<std::size_t>((o % I.P + I.P) % I.P); };
    for (std::size_t q = 0; q < table.offsets.size(); ++q) {
        const auto& o = table.offsets[q];
        I.real[I.fft_index(wrap(o[0]), I.dim == 2 ? wrap(o[1]) : 0)] += table.weights[q];
    }
    fftw_execute_dft_r2c(I.forward, I.real.get(), I.kernel.get());
    const double scale = 1.0 / static_cast<double>(I.nreal);
    I.inv_symbol.resize(I.ncomplex);
    for (std::size_t i = 0; i < I.ncomplex; ++i) {
        I.inv_symbol[i] = scale / (table.diag_coeff - I.kernel[i][0]);
        I.kernel[i][0] *= scale;
        I.kernel[i][1] *= scale;
    }
}

FastOperator::~FastOperator() = default;
FastOperator::FastOperator(FastOperator&&) noexcept = default;
FastOperator& FastOperator::operator=(FastOperator&&) noexcept = default;

const KernelTable& FastOperator::table() const { return impl_->table; }

PreparedExterior FastOperator::prepare(const Exterior& exterior) const {
    const auto& I = *impl_;
    const GridSpec& g = I.table.grid;
    PreparedExterior p;
    const std::size_t n = I.dim == 1 ? I.ext : static_cast<std::size_t>(I.ext) * I.ext;
    p.padding.assign(n, 0.0);
    if (exterior.value) {
        const int lo = -I.m - I.reach, hi = I.m + I.reach;
        const int blo = I.dim == 2 ? lo : 0, bhi = I.dim == 2 ? hi : 0;
        for (int b = blo; b <= bhi; ++b)
            for (int a = lo; a <= hi; ++a) {
                const Lattice k{a, b};
                if (g.contains(k)) continue;
                p.padding[I.ext_index(a, b)] = exterior.value(g.coordinate(k));
            }
    }
    p.far.assign(g.size(), 0.0);
    if (exterior.far_field)
        for (std::size_t i = 0; i < g.size(); ++i) p.far[i] = exterior.far_field(i);
    return p;
}

namespace {

template <class Multiply>
void convolve(FastOperator::Impl& I, const GridSpec& g, std::span<const double> inside,
              std::span<double> out, const PreparedExterior* exterior, Multiply&& multiply) {
    if (inside.size() != g.size() || out.size() != g.size())
        throw StructuralError("fast apply: vector size does not match the grid");
    std::fill(I.real.get(), I.real.get() + I.nreal, 0.0);
    const auto ext = static_cast<std::size_t>(I.ext);
    const std::size_t rows = I.dim == 1 ? 1 : ext;
    if (exterior) {
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < ext; ++c) I.real[I.fft_index(c, r)] = exterior->padding[c + r * ext];
    }
    const int side = g.side();
    const int brow = I.dim == 1 ? 1 : side;
    auto ext_pos = [&](int c, int r) {
        const std::size_t e0 = static_cast<std::size_t>(c + I.reach);
        const std::size_t e1 = I.dim == 1 ? 0 : static_cast<std::size_t>(r + I.reach);
        return I.fft_index(e0, e1);
    };
    for (int r = 0; r < brow; ++r)
        for (int c = 0; c < side; ++c)
            I.real[ext_pos(c, r)] = inside[static_cast<std::size_t>(c) + static_cast<std::size_t>(r) * side];
    fftw_execute_dft_r2c(I.forward, I.real.get(), I.spec.get());
    for (std::size_t i = 0; i < I.ncomplex; ++i) multiply(i, I.spec[i]);
    fftw_execute_dft_c2r(I.backward, I.spec.get(), I.real.get());
    for (int r = 0; r < brow; ++r)
        for (int c = 0; c < side; ++c)
            out[static_cast<std::size_t>(c) + static_cast<std::size_t>(r) * side] = I.real[ext_pos(c, r)];
}

}  // namespace

void FastOperator::neighbour_sum(std::span<const double> inside, std::span<double> out,
                                 const PreparedExterior* exterior) {
    auto& I = *impl_;
    convolve(I, I.table.grid, inside, out, exterior, [&](std::size_t i, fftw_complex& z) {
        const double a = z[0], b = z[1];
        const double c = I.kernel[i][0], d = I.kernel[i][1];
        z[0] = a * c - b * d;
        z[1] = a * d + b * c;
    });
}

void FastOperator::precondition(std::span<const double> in, std::span<double> out) {
    auto& I = *impl_;
    convolve(I, I.table.grid, in, out, nullptr, [&](std::size_t i, fftw_complex& z) {
        z[0] *= I.inv_symbol[i];
        z[1] *= I.inv_symbol[i];
    });
}

void FastOperator::apply(std::span<const double> u, std::span<double> out,
                         const PreparedExterior* exterior) {
    neighbour_sum(u, out, exterior);
    const double diag = impl_->table.diag_coeff;
    for (std::size_t i = 0; i < u.size(); ++i) {
        out[i] -= diag * u[i];
        if (exterior) out[i] += exterior->far[i];
    }
}

std::vector<double> FastOperator::exterior_source(const PreparedExterior& exterior) {
    const std::size_t n = impl_->table.grid.size();
    std::vector<double> zero(n, 0.0), out(n);
    neighbour_sum(zero, out, &exterior);
    for (std::size_t i = 0; i < n; ++i) out[i] += exterior.far[i];
    return out;
}

}  // namespace nlobs

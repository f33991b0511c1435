#include "nlkdv/discrete.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "nlkdv/errors.hpp"

namespace nlkdv {

namespace {

// FFTW plan creation/destruction is not thread-safe; execution on private
// buffers is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

void check_finite(const GridFunction& v, const char* op) {
    for (int i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) {
            std::ostringstream msg;
            msg << op << ": non-finite value at node " << i << " (x = "
                << v.grid.node(i) << ")";
            throw divergence_error(msg.str(), i, v[i]);
        }
    }
}

size_t next_pow2(size_t n) {
    size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

}  // namespace

UniformGrid make_grid(double x_left, double x_right, double h) {
    if (!(h > 0)) throw std::invalid_argument("make_grid: h must be positive");
    if (!(x_right > x_left))
        throw std::invalid_argument("make_grid: empty domain");
    const double cells = (x_right - x_left) / h;
    const double rounded = std::round(cells);
    if (std::abs(cells - rounded) > 1e-9 * std::max(1.0, cells) || rounded < 2) {
        std::ostringstream msg;
        msg << "make_grid: h = " << h << " does not divide [" << x_left << ", "
            << x_right << "] into an integer cell count >= 2";
        throw std::invalid_argument(msg.str());
    }
    return UniformGrid{x_left, h, static_cast<int>(rounded) + 1};
}

UniformGrid make_symmetric_grid(int half_width_n, double h) {
    if (half_width_n < 1)
        throw std::invalid_argument("make_symmetric_grid: N must be >= 1");
    if (!(h > 0))
        throw std::invalid_argument("make_symmetric_grid: h must be positive");
    return UniformGrid{-half_width_n * h, h, 2 * half_width_n + 1};
}

GridFunction::GridFunction(UniformGrid g, std::vector<double> v)
    : grid(g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != grid.m)
        throw std::invalid_argument("GridFunction: length does not match grid");
}

GridFunction::GridFunction(UniformGrid g)
    : grid(g), values(static_cast<size_t>(g.m), 0.0) {}

GridFunction restrict_to_grid(const std::function<double(double)>& f,
                              const UniformGrid& grid) {
    GridFunction out(grid);
    for (int i = 0; i < grid.m; ++i) {
        const double y = f(grid.node(i));
        if (!std::isfinite(y)) {
            std::ostringstream msg;
            msg << "restrict_to_grid: non-finite sample at node " << i
                << " (x = " << grid.node(i) << ")";
            throw divergence_error(msg.str(), i, y);
        }
        out[i] = y;
    }
    return out;
}

double ConvolutionWeights::l1h() const {
    double s = 0;
    for (double w : values) s += std::abs(w);
    return s;
}

ConvolutionWeights build_weights(const Kernel& k, double h, int halfwidth,
                                 bool apply_d2) {
    if (!(h > 0)) throw std::invalid_argument("build_weights: h must be positive");
    if (halfwidth < 0)
        throw std::invalid_argument("build_weights: halfwidth must be >= 0");
    const int K = halfwidth;
    ConvolutionWeights w;
    w.grid_h = h;
    w.halfwidth = K;
    w.values.resize(static_cast<size_t>(2 * K + 1));
    if (apply_d2) {
        // sample two extra lags so the difference stencil never truncates
        std::vector<double> s(static_cast<size_t>(2 * K + 3));
        for (int j = -(K + 1); j <= K + 1; ++j)
            s[static_cast<size_t>(j + K + 1)] = h * k.alpha_prime(j * h);
        for (int j = -K; j <= K; ++j) {
            const size_t c = static_cast<size_t>(j + K + 1);
            w.values[static_cast<size_t>(j + K)] =
                (s[c + 1] - 2.0 * s[c] + s[c - 1]) / (h * h);
        }
    } else {
        for (int j = -K; j <= K; ++j)
            w.values[static_cast<size_t>(j + K)] = h * k.alpha_prime(j * h);
    }
    w.tail_ok = std::abs(k.alpha_prime(K * h)) <= 1e-14;
    return w;
}

GridFunction discrete_convolve(const ConvolutionWeights& w, const GridFunction& v) {
    if (w.grid_h != v.grid.h)
        throw std::invalid_argument("discrete_convolve: weight/grid mesh mismatch");
    check_finite(v, "discrete_convolve");
    const int m = v.size();
    const int K = w.halfwidth;
    GridFunction out(v.grid);
    for (int i = 0; i < m; ++i) {
        const int jlo = std::max(0, i - K);
        const int jhi = std::min(m - 1, i + K);
        double s = 0;
        for (int j = jlo; j <= jhi; ++j) s += w.at(i - j) * v[j];
        out[i] = s;
    }
    return out;
}

// ---------------------------------------------------------------------------
// FFT path: zero-padded circular embedding. With W[p] = w_{p-K} the linear
// convolution (W * V)_n has the wanted output at n = i + K, i = 0..m-1.

struct FastConvolver::Impl {
    size_t L = 0;
    int K = 0;
    double* real_buf = nullptr;
    fftw_complex* spec = nullptr;
    fftw_complex* wspec = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan inv = nullptr;

    ~Impl() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (fwd) fftw_destroy_plan(fwd);
        if (inv) fftw_destroy_plan(inv);
        if (real_buf) fftw_free(real_buf);
        if (spec) fftw_free(spec);
        if (wspec) fftw_free(wspec);
    }
};

FastConvolver::FastConvolver(const ConvolutionWeights& w, int m)
    : impl_(new Impl), m_(m) {
    const int K = w.halfwidth;
    impl_->K = K;
    impl_->L = next_pow2(static_cast<size_t>(m) + 2 * static_cast<size_t>(K) + 1);
    const size_t L = impl_->L;
    const size_t nc = L / 2 + 1;
    impl_->real_buf = fftw_alloc_real(L);
    impl_->spec = fftw_alloc_complex(nc);
    impl_->wspec = fftw_alloc_complex(nc);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        impl_->fwd = fftw_plan_dft_r2c_1d(static_cast<int>(L), impl_->real_buf,
                                          impl_->spec, FFTW_ESTIMATE);
        impl_->inv = fftw_plan_dft_c2r_1d(static_cast<int>(L), impl_->spec,
                                          impl_->real_buf, FFTW_ESTIMATE);
    }
    std::fill(impl_->real_buf, impl_->real_buf + L, 0.0);
    std::copy(w.values.begin(), w.values.end(), impl_->real_buf);
    fftw_execute(impl_->fwd);
    std::memcpy(impl_->wspec, impl_->spec, nc * sizeof(fftw_complex));
}

FastConvolver::~FastConvolver() = default;

void FastConvolver::apply(std::span<const double> v, std::span<double> out) {
    const size_t L = impl_->L;
    const size_t nc = L / 2 + 1;
    const int K = impl_->K;
    std::fill(impl_->real_buf, impl_->real_buf + L, 0.0);
    std::copy(v.begin(), v.end(), impl_->real_buf);
    fftw_execute(impl_->fwd);
    for (size_t q = 0; q < nc; ++q) {
        const double re = impl_->spec[q][0] * impl_->wspec[q][0] -
                          impl_->spec[q][1] * impl_->wspec[q][1];
        const double im = impl_->spec[q][0] * impl_->wspec[q][1] +
                          impl_->spec[q][1] * impl_->wspec[q][0];
        impl_->spec[q][0] = re;
        impl_->spec[q][1] = im;
    }
    fftw_execute(impl_->inv);
    const double scale = 1.0 / static_cast<double>(L);
    for (size_t i = 0; i < v.size(); ++i)
        out[i] = impl_->real_buf[static_cast<size_t>(K) + i] * scale;
}

GridFunction discrete_convolve_fast(const ConvolutionWeights& w,
                                    const GridFunction& v) {
    if (w.grid_h != v.grid.h)
        throw std::invalid_argument(
            "discrete_convolve_fast: weight/grid mesh mismatch");
    check_finite(v, "discrete_convolve_fast");
    FastConvolver conv(w, v.size());
    GridFunction out(v.grid);
    conv.apply(v.values, out.values);
    return out;
}

GridFunction second_difference(const GridFunction& v) {
    const int m = v.size();
    if (m < 3)
        throw std::invalid_argument("second_difference: need at least 3 nodes");
    check_finite(v, "second_difference");
    const double h2 = v.grid.h * v.grid.h;
    GridFunction out(v.grid);
    out[0] = 0.0;
    out[m - 1] = 0.0;
    for (int i = 1; i < m - 1; ++i)
        out[i] = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / h2;
    return out;
}

double l1h_norm(const GridFunction& v) {
    check_finite(v, "l1h_norm");
    double s = 0;
    for (int i = 0; i < v.size(); ++i) s += std::abs(v[i]);
    return v.grid.h * s;
}

double linf_norm(const GridFunction& v) {
    check_finite(v, "linf_norm");
    double s = 0;
    for (int i = 0; i < v.size(); ++i) s = std::max(s, std::abs(v[i]));
    return s;
}

}  // namespace nlkdv

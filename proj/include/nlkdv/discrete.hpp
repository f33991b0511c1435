#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "nlkdv/kernels.hpp"

namespace nlkdv {

/// Uniform mesh: node i sits at x_left + i*h, i = 0..m-1.
/// Nodes are always computed affinely in i, never by accumulation.
struct UniformGrid {
    double x_left = 0;
    double h = 1;
    int m = 0;

    double node(int i) const { return x_left + i * h; }
    double x_right() const { return node(m - 1); }
    bool operator==(const UniformGrid&) const = default;
};

/// Builds the grid covering [x_left, x_right]; h must divide the width into an
/// integer cell count (relative rounding tolerance 1e-9).
UniformGrid make_grid(double x_left, double x_right, double h);

/// Symmetric window [-N h, N h] with 2N+1 nodes.
UniformGrid make_symmetric_grid(int half_width_n, double h);

/// Real-valued sequence on a uniform grid.
struct GridFunction {
    UniformGrid grid;
    std::vector<double> values;

    GridFunction() = default;
    GridFunction(UniformGrid g, std::vector<double> v);
    explicit GridFunction(UniformGrid g);  // zero-filled

    int size() const { return grid.m; }
    double& operator[](int i) { return values[static_cast<size_t>(i)]; }
    double operator[](int i) const { return values[static_cast<size_t>(i)]; }
};

/// Samples f at the grid nodes (the restriction operator). A non-finite sample
/// raises a divergence_error identifying the node.
GridFunction restrict_to_grid(const std::function<double(double)>& f,
                              const UniformGrid& grid);

/// Convolution weight vector w_k, k = -K..K, stored with the mesh factor
/// folded in (w_k = h*alpha'(k h) or its second-difference image), so that
/// (w * v)_i = sum_j w_{i-j} v_j realizes the h-weighted discrete convolution.
struct ConvolutionWeights {
    double grid_h = 1;
    int halfwidth = 0;                // K
    std::vector<double> values;       // length 2K+1, index k+K
    bool tail_ok = true;              // |alpha'(K h)| below 1e-14 at build time

    double at(int lag) const { return values[static_cast<size_t>(lag + halfwidth)]; }
    /// l^1_h norm of the underlying sequence (= plain sum of |w_k| since the
    /// mesh factor is already folded into the stored values).
    double l1h() const;
};

/// Samples w_k = h*alpha'(k h); with apply_d2 the stored weights are the
/// three-point second difference in k, using two extra samples at +-(K+1) so
/// no boundary truncation error enters. Sets tail_ok=false (a warning, not a
/// failure) when |alpha'(K h)| exceeds 1e-14.
ConvolutionWeights build_weights(const Kernel& k, double h, int halfwidth,
                                 bool apply_d2);

/// Direct truncated convolution: out_i = sum_{j=0}^{m-1} w_{i-j} v_j with
/// w_k = 0 for |k| > K. Summation order over j is ascending.
GridFunction discrete_convolve(const ConvolutionWeights& w, const GridFunction& v);

/// FFT-accelerated path; agrees with discrete_convolve to 1e-12 relative l-inf.
GridFunction discrete_convolve_fast(const ConvolutionWeights& w, const GridFunction& v);

/// Reusable FFT convolution engine for one (weights, m) pair: the zero-padded
/// weight spectrum and plans are built once. apply() is cheap but uses the
/// instance's internal buffers, so use one instance per thread.
class FastConvolver {
public:
    FastConvolver(const ConvolutionWeights& w, int m);
    ~FastConvolver();
    FastConvolver(const FastConvolver&) = delete;
    FastConvolver& operator=(const FastConvolver&) = delete;

    void apply(std::span<const double> v, std::span<double> out);
    int input_size() const { return m_; }

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    int m_;
};

/// Three-point second difference (u_{i+1} - 2 u_i + u_{i-1}) / h^2 on interior
/// nodes; the two boundary nodes are set to 0. Requires m >= 3.
GridFunction second_difference(const GridFunction& v);

double l1h_norm(const GridFunction& v);   // sum_i h |v_i|
double linf_norm(const GridFunction& v);  // max_i |v_i|

}  // namespace nlkdv

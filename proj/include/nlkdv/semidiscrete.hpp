#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nlkdv/discrete.hpp"
#include "nlkdv/kernels.hpp"

namespace nlkdv {

/// Pointwise nonlinearity f with f(0) = 0 (checked to 1e-15 at construction).
struct Nonlinearity {
    enum class Kind { LinearPlusQuadratic, Polynomial, Custom };

    Kind kind = Kind::Polynomial;
    /// coefficients[p-1] multiplies u^p (no constant term by construction)
    std::vector<double> coefficients;
    std::function<double(double)> fn;  // Custom only
    std::string spec;                  // source string, kept for manifests

    double operator()(double u) const;
    /// g(u) = f(u) - u, the non-identity part used by the fused rhs form.
    double g(double u) const;
};

/// Parses "c*u^k" terms joined by '+', e.g. "u + u^2/2" or "0.5*u^3".
/// A constant term is rejected (f(0) = 0 is required).
Nonlinearity parse_nonlinearity(std::string_view spec);
Nonlinearity make_polynomial_nonlinearity(std::vector<double> coefficients_by_power);
Nonlinearity make_custom_nonlinearity(std::function<double(double)> fn);

enum class ConvolveMethod { Auto, Direct, Fft };

struct ProblemOptions {
    int halfwidth = -1;          // weight halfwidth K; -1 = full window (m-1)
    bool fused = false;          // rhs = -w_nl*g(v) - (w_nl+w_lin)*v instead of
                                 // the literal -w_nl*f(v) - w_lin*v
    ConvolveMethod method = ConvolveMethod::Auto;
    double blow_up_guard = 1e6;  // ||v||_inf above this raises divergence_error
};

/// The assembled truncated system dv/dt = -w_nl * f(v) - w_lin * v, where
/// w_nl samples alpha' and w_lin is the kappa-scaled second difference of it.
/// Immutable after assembly and safe to share across concurrent integrations.
struct Problem {
    Kernel kernel;
    Nonlinearity nonlinearity;
    double kappa = 1;
    UniformGrid grid;
    GridFunction initial;
    ConvolutionWeights weights_nl;    // h*alpha'(k h)
    ConvolutionWeights weights_lin;   // kappa * D^2_h image
    ConvolutionWeights weights_both;  // w_nl + w_lin (fused path only)
    ProblemOptions options;
    ConvolveMethod resolved_method = ConvolveMethod::Direct;
};

Problem assemble(Kernel kernel, Nonlinearity f, double kappa, UniformGrid grid,
                 GridFunction initial, ProblemOptions options = {});

/// One right-hand-side evaluation. Raises divergence_error when the state is
/// non-finite or exceeds the blow-up guard.
GridFunction rhs(const Problem& p, const GridFunction& v);

/// Stateful evaluator bound to one Problem: owns the FFT plans and scratch
/// buffers so repeated evaluations allocate nothing. One instance per
/// integration (not shared across threads).
class RhsEvaluator {
public:
    explicit RhsEvaluator(const Problem& p);
    ~RhsEvaluator();
    RhsEvaluator(const RhsEvaluator&) = delete;
    RhsEvaluator& operator=(const RhsEvaluator&) = delete;

    void operator()(std::span<const double> v, std::span<double> out);
    const Problem& problem() const { return p_; }

private:
    const Problem& p_;
    std::unique_ptr<FastConvolver> conv_a_;  // w_nl
    std::unique_ptr<FastConvolver> conv_b_;  // w_lin or w_both
    std::vector<double> fv_, tmp_;
};

}  // namespace nlkdv

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "nlkdv/semidiscrete.hpp"

namespace nlkdv {

struct ToleranceSettings {
    double rel_tol = 1e-10;
    double abs_tol = 1e-10;
    double initial_step = 0;  // 0 = automatic
    double max_step = 0;      // 0 = unbounded
    std::int64_t max_steps = 10'000'000;
};

struct IntegrationStats {
    std::int64_t steps_accepted = 0;
    std::int64_t steps_rejected = 0;
    std::int64_t rhs_evaluations = 0;
};

using SystemRhs =
    std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

struct SystemResult {
    std::vector<double> times;
    std::vector<std::vector<double>> states;
    IntegrationStats stats;
};

struct IntegrationResult {
    std::vector<double> times;
    std::vector<GridFunction> states;
    IntegrationStats stats;
};

/// Adaptive Dormand-Prince 5(4) integration of y' = rhs(t, y) from t = 0.
///
/// Error control is componentwise: the embedded estimate e must satisfy
/// |e_i| <= abs_tol + rel_tol*max(|y_i|, |y_i,new|) at every node (the step
/// error measure is the max over i). Step-size selection uses safety factor
/// 0.9 with PI stabilization; the accepted-step factor is clamped to [0.2, 5].
/// States at the requested output times come from the pair's quartic dense
/// interpolant, except at exactly t_end where the step endpoint is used.
/// When output_times is empty the final state alone is returned.
///
/// Errors: max_steps_error, step_underflow_error (step below 1e-14*t_end),
/// divergence_error propagated from the rhs with the current time attached.
SystemResult integrate_system(const SystemRhs& rhs, std::vector<double> y0,
                              double t_end, std::span<const double> output_times,
                              const ToleranceSettings& tol = {});

/// Same tableau with a constant step and no error control (the order-4(5)
/// pair's fifth-order propagation solution); used by convergence checks.
SystemResult integrate_fixed_step(const SystemRhs& rhs, std::vector<double> y0,
                                  double t_end, double dt);

/// Integrates an assembled Problem from its initial data.
IntegrationResult integrate(const Problem& p, double t_end,
                            std::span<const double> output_times = {},
                            const ToleranceSettings& tol = {});

}  // namespace nlkdv

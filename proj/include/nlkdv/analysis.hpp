#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nlkdv/discrete.hpp"
#include "nlkdv/integrator.hpp"
#include "nlkdv/semidiscrete.hpp"

namespace nlkdv {

/// max_i |exact(x_i, t) - v_i| over all grid nodes.
double linf_error(const GridFunction& numeric,
                  const std::function<double(double, double)>& exact, double t);

/// rho = log(e1/e2) / log(h1/h2). Errors must be positive, h1 != h2.
double rate_two_grid(double e1, double h1, double e2, double h2);

/// rho = log(||u_h - u_{h/2}|| / ||u_{h/2} - u_{h/4}||) / log 2 with both
/// differences measured in l-inf on the coarsest grid's nodes. The three
/// grids must be nested with mesh ratios 2.
double rate_richardson(const GridFunction& u_h, const GridFunction& u_h2,
                       const GridFunction& u_h4);

struct ConvergenceRow {
    double h = 0;
    int m = 0;
    std::optional<double> error;  // vs exact, or vs previous grid (Richardson)
    std::optional<double> rate;
};

struct ConvergenceReport {
    enum class Mode { AgainstExact, Richardson };
    Mode mode = Mode::AgainstExact;
    std::vector<ConvergenceRow> rows;  // h strictly decreasing
    IntegrationStats stats;            // totals across the sweep
};

struct LocalizationRow {
    int n = 0;           // window half-count N; grid is [-N h, N h]
    double halfwidth = 0;  // N h
    double error = 0;
};

struct LocalizationReport {
    double h = 0;
    std::vector<LocalizationRow> rows;  // N strictly increasing
    /// Index of the row where the next improvement first drops below the knee
    /// tolerance (descriptive; unset when the error never stagnates).
    std::optional<int> knee_index;
    IntegrationStats stats;  // totals across the sweep
};

/// One experiment family: kernel + nonlinearity + kappa + initial data, with
/// the exact solution when known. Studies integrate this family per mesh.
struct StudySetup {
    Kernel kernel;
    Nonlinearity nonlinearity;
    double kappa = 1;
    std::function<double(double)> initial;                // x -> u(x, 0)
    std::function<double(double, double)> exact;          // (x, t); may be null
    double t_end = 40;
    ToleranceSettings tol;
    ProblemOptions options;
};

/// Sweeps the grid over a fixed domain [x_left, x_right] for each h
/// (descending). AgainstExact compares each final state with setup.exact;
/// Richardson differences successive states on nested grids, attaching the
/// three-grid rate to the finest row of each triple.
ConvergenceReport convergence_study(const StudySetup& setup, double x_left,
                                    double x_right, std::span<const double> hs,
                                    ConvergenceReport::Mode mode);

/// Fixed h, growing window [-N h, N h] (N ascending); error vs setup.exact at
/// t_end per N. knee_tolerance is the relative-improvement threshold of the
/// descriptive knee detector.
LocalizationReport localization_study(const StudySetup& setup, double h,
                                      std::span<const int> ns,
                                      double knee_tolerance = 0.1);

/// max |v_i| over nodes farther than core_halfwidth indices from the center.
double tail_sup(const GridFunction& v, int core_halfwidth);

struct DecayFit {
    double rate = 0;      // fitted r in |v| ~ constant * e^{-r |x|}
    double constant = 0;
};

/// Least-squares fit of log|v_i| against |x_i| over nodes [lo, hi] (inclusive,
/// at least 5 nodes, all values nonzero).
DecayFit decay_fit(const GridFunction& v, int lo, int hi);

/// Default window: the outer 25% of nodes on the right, excluding the final
/// `exclude_last` nodes.
DecayFit decay_fit(const GridFunction& v, int exclude_last = 0);

void write_profile_csv(const std::string& path, const GridFunction& v,
                       const std::function<double(double, double)>& exact = nullptr,
                       double t = 0);
void write_convergence_csv(const std::string& path, const ConvergenceReport& r);
void write_localization_csv(const std::string& path, const LocalizationReport& r);

}  // namespace nlkdv

#include "nlkdv/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nlkdv {

namespace {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Problem assemble_for(const StudySetup& setup, const UniformGrid& grid) {
    GridFunction init = restrict_to_grid(setup.initial, grid);
    return assemble(setup.kernel, setup.nonlinearity, setup.kappa, grid,
                    std::move(init), setup.options);
}

GridFunction final_state(const StudySetup& setup, const UniformGrid& grid,
                         IntegrationStats& totals) {
    Problem p = assemble_for(setup, grid);
    IntegrationResult r = integrate(p, setup.t_end, {}, setup.tol);
    totals.steps_accepted += r.stats.steps_accepted;
    totals.steps_rejected += r.stats.steps_rejected;
    totals.rhs_evaluations += r.stats.rhs_evaluations;
    return std::move(r.states.back());
}

}  // namespace

double linf_error(const GridFunction& numeric,
                  const std::function<double(double, double)>& exact, double t) {
    double e = 0;
    for (int i = 0; i < numeric.size(); ++i) {
        const double ex = exact(numeric.grid.node(i), t);
        if (!std::isfinite(ex))
            throw std::invalid_argument("linf_error: exact solution non-finite");
        e = std::max(e, std::abs(numeric[i] - ex));
    }
    return e;
}

double rate_two_grid(double e1, double h1, double e2, double h2) {
    if (!(e1 > 0) || !(e2 > 0))
        throw std::invalid_argument("rate_two_grid: errors must be positive");
    if (!(h1 > 0) || !(h2 > 0) || h1 == h2)
        throw std::invalid_argument("rate_two_grid: need distinct positive mesh sizes");
    return std::log(e1 / e2) / std::log(h1 / h2);
}

namespace {

// stride of coarse nodes inside the fine grid; throws unless exactly nested
int nesting_stride(const UniformGrid& coarse, const UniformGrid& fine) {
    const double ratio = coarse.h / fine.h;
    const int stride = static_cast<int>(std::lround(ratio));
    const bool aligned =
        std::abs(coarse.x_left - fine.x_left) <= 1e-12 * std::max(1.0, std::abs(coarse.x_left));
    if (!aligned || stride < 1 || std::abs(ratio - stride) > 1e-12 ||
        (coarse.m - 1) * stride != fine.m - 1) {
        throw std::invalid_argument("rate_richardson: grids are not nested");
    }
    return stride;
}

double linf_diff_on_coarse(const GridFunction& coarse, const GridFunction& fine) {
    const int stride = nesting_stride(coarse.grid, fine.grid);
    double d = 0;
    for (int i = 0; i < coarse.size(); ++i)
        d = std::max(d, std::abs(coarse[i] - fine[i * stride]));
    return d;
}

}  // namespace

double rate_richardson(const GridFunction& u_h, const GridFunction& u_h2,
                       const GridFunction& u_h4) {
    // both differences are restricted to the coarsest grid's nodes
    const int s12 = nesting_stride(u_h.grid, u_h2.grid);
    const int s14 = nesting_stride(u_h.grid, u_h4.grid);
    double d1 = 0, d2 = 0;
    for (int i = 0; i < u_h.size(); ++i) {
        d1 = std::max(d1, std::abs(u_h[i] - u_h2[i * s12]));
        d2 = std::max(d2, std::abs(u_h2[i * s12] - u_h4[i * s14]));
    }
    if (d1 == 0 || d2 == 0)
        throw std::invalid_argument("rate_richardson: zero difference between grids");
    return std::log(d1 / d2) / std::log(2.0);
}

ConvergenceReport convergence_study(const StudySetup& setup, double x_left,
                                    double x_right, std::span<const double> hs,
                                    ConvergenceReport::Mode mode) {
    if (hs.empty())
        throw std::invalid_argument("convergence_study: empty h list");
    for (size_t i = 1; i < hs.size(); ++i)
        if (!(hs[i] < hs[i - 1]))
            throw std::invalid_argument("convergence_study: h list must be strictly descending");
    if (mode == ConvergenceReport::Mode::AgainstExact && !setup.exact)
        throw std::invalid_argument("convergence_study: exact solution required");

    ConvergenceReport report;
    report.mode = mode;
    std::vector<GridFunction> finals;
    finals.reserve(hs.size());
    for (size_t i = 0; i < hs.size(); ++i) {
        const UniformGrid grid = make_grid(x_left, x_right, hs[i]);
        finals.push_back(final_state(setup, grid, report.stats));
        ConvergenceRow row;
        row.h = hs[i];
        row.m = grid.m;
        if (mode == ConvergenceReport::Mode::AgainstExact) {
            row.error = linf_error(finals.back(), setup.exact, setup.t_end);
            if (i >= 1 && *report.rows[i - 1].error > 0 && *row.error > 0)
                row.rate = rate_two_grid(*report.rows[i - 1].error, hs[i - 1],
                                         *row.error, hs[i]);
        } else {
            if (i >= 1) row.error = linf_diff_on_coarse(finals[i - 1], finals[i]);
            if (i >= 2) row.rate = rate_richardson(finals[i - 2], finals[i - 1], finals[i]);
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

LocalizationReport localization_study(const StudySetup& setup, double h,
                                      std::span<const int> ns,
                                      double knee_tolerance) {
    if (ns.empty())
        throw std::invalid_argument("localization_study: empty N list");
    for (size_t i = 1; i < ns.size(); ++i)
        if (ns[i] <= ns[i - 1])
            throw std::invalid_argument("localization_study: N list must be strictly ascending");
    if (!setup.exact)
        throw std::invalid_argument("localization_study: exact solution required");

    LocalizationReport report;
    report.h = h;
    for (int n : ns) {
        const UniformGrid grid = make_symmetric_grid(n, h);
        const GridFunction v = final_state(setup, grid, report.stats);
        report.rows.push_back({n, n * h, linf_error(v, setup.exact, setup.t_end)});
    }
    for (size_t k = 0; k + 1 < report.rows.size(); ++k) {
        const double e0 = report.rows[k].error;
        const double e1 = report.rows[k + 1].error;
        if (e0 - e1 < knee_tolerance * e0) {
            report.knee_index = static_cast<int>(k);
            break;
        }
    }
    return report;
}

double tail_sup(const GridFunction& v, int core_halfwidth) {
    const int m = v.size();
    const int center = (m - 1) / 2;
    if (core_halfwidth < 0)
        throw std::invalid_argument("tail_sup: core halfwidth must be >= 0");
    if (core_halfwidth >= std::max(center, m - 1 - center))
        throw std::invalid_argument("tail_sup: core halfwidth covers the whole grid");
    double s = 0;
    for (int i = 0; i < m; ++i)
        if (std::abs(i - center) > core_halfwidth) s = std::max(s, std::abs(v[i]));
    return s;
}

DecayFit decay_fit(const GridFunction& v, int lo, int hi) {
    const int m = v.size();
    if (lo < 0 || hi >= m || hi - lo + 1 < 5)
        throw std::invalid_argument("decay_fit: window must contain at least 5 nodes");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = hi - lo + 1;
    for (int i = lo; i <= hi; ++i) {
        const double a = std::abs(v[i]);
        if (!(a > 0))
            throw std::invalid_argument("decay_fit: zero value in fit window");
        const double x = std::abs(v.grid.node(i));
        const double y = std::log(a);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0) throw std::invalid_argument("decay_fit: degenerate abscissae");
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / n;
    return {-slope, std::exp(intercept)};
}

DecayFit decay_fit(const GridFunction& v, int exclude_last) {
    const int m = v.size();
    const int hi = m - 1 - exclude_last;
    const int lo = m - std::max(5, m / 4);
    return decay_fit(v, std::max(0, lo), hi);
}

void write_profile_csv(const std::string& path, const GridFunction& v,
                       const std::function<double(double, double)>& exact,
                       double t) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << (exact ? "x,u,u_exact\n" : "x,u\n");
    for (int i = 0; i < v.size(); ++i) {
        const double x = v.grid.node(i);
        out << fmt17(x) << ',' << fmt17(v[i]);
        if (exact) out << ',' << fmt17(exact(x, t));
        out << '\n';
    }
}

void write_convergence_csv(const std::string& path, const ConvergenceReport& r) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "h,m,error,rate\n";
    for (const auto& row : r.rows) {
        out << fmt17(row.h) << ',' << row.m << ',';
        if (row.error) out << fmt17(*row.error);
        out << ',';
        if (row.rate) out << fmt17(*row.rate);
        out << '\n';
    }
}

void write_localization_csv(const std::string& path, const LocalizationReport& r) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "N,halfwidth,error\n";
    for (const auto& row : r.rows)
        out << row.n << ',' << fmt17(row.halfwidth) << ',' << fmt17(row.error) << '\n';
}

}  // namespace nlkdv

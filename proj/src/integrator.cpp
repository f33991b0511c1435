#include "nlkdv/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nlkdv/errors.hpp"

namespace nlkdv {

namespace {

// Dormand-Prince 5(4) tableau (7 stages, first-same-as-last).
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// embedded error coefficients (order-4 solution minus order-5 solution)
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// dense-output (quartic interpolant) coefficients
constexpr double d1 = -12715105075.0 / 11282082432.0,
                 d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0,
                 d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0,
                 d7 = 69997945.0 / 29380423.0;

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;  // accepted-step growth clamp [0.2, 5]
constexpr double kMaxFactor = 5.0;
constexpr double kBeta = 0.04;      // PI stabilization
constexpr double kAlpha = 0.2 - kBeta * 0.75;

struct StepWorkspace {
    std::vector<double> k1, k2, k3, k4, k5, k6, k7, ytmp, ynew;
    std::vector<double> rc1, rc2, rc3, rc4, rc5;
    explicit StepWorkspace(size_t n)
        : k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n),
          rc1(n), rc2(n), rc3(n), rc4(n), rc5(n) {}
};

void validate(const ToleranceSettings& tol, double t_end,
              std::span<const double> output_times) {
    if (!(t_end > 0)) throw std::invalid_argument("integrate: t_end must be positive");
    if (!(tol.rel_tol > 0 && tol.rel_tol < 1))
        throw std::invalid_argument("integrate: rel_tol must lie in (0, 1)");
    if (!(tol.abs_tol > 0 && tol.abs_tol < 1))
        throw std::invalid_argument("integrate: abs_tol must lie in (0, 1)");
    if (tol.max_steps < 1)
        throw std::invalid_argument("integrate: max_steps must be >= 1");
    double prev = -1;
    for (double t : output_times) {
        if (!(t >= 0) || t > t_end * (1 + 1e-12))
            throw std::invalid_argument("integrate: output times must lie in [0, t_end]");
        if (t <= prev)
            throw std::invalid_argument("integrate: output times must be strictly ascending");
        prev = t;
    }
}

// Step-size heuristic from the rhs magnitude at t = 0. With a degenerate
// scale (vanishing state or derivative) the whole interval is proposed and
// the error control is left to object.
template <typename Eval>
double initial_step_guess(const Eval& f, std::span<const double> y0,
                          std::span<const double> k1, double t_end,
                          const ToleranceSettings& tol,
                          std::vector<double>& ytmp, std::vector<double>& k2) {
    const size_t n = y0.size();
    const double hmax = tol.max_step > 0 ? std::min(tol.max_step, t_end) : t_end;
    double dnf = 0, dny = 0;
    for (size_t i = 0; i < n; ++i) {
        const double sc = tol.abs_tol + tol.rel_tol * std::abs(y0[i]);
        const double a = k1[i] / sc;
        const double b = y0[i] / sc;
        dnf += a * a;
        dny += b * b;
    }
    if (dnf <= 1e-10 || dny <= 1e-10) return hmax;
    double h0 = std::min(0.01 * std::sqrt(dny / dnf), hmax);
    for (size_t i = 0; i < n; ++i) ytmp[i] = y0[i] + h0 * k1[i];
    f(h0, ytmp, k2);
    double der2 = 0;
    for (size_t i = 0; i < n; ++i) {
        const double sc = tol.abs_tol + tol.rel_tol * std::abs(y0[i]);
        const double a = (k2[i] - k1[i]) / sc;
        der2 += a * a;
    }
    der2 = std::sqrt(der2) / h0;
    const double der12 = std::max(der2, std::sqrt(dnf));
    const double h1 = der12 <= 1e-15 ? std::max(1e-6, h0 * 1e-3)
                                     : std::pow(0.01 / der12, 0.2);
    return std::min({100.0 * h0, h1, hmax});
}

}  // namespace

SystemResult integrate_system(const SystemRhs& rhs, std::vector<double> y0,
                              double t_end, std::span<const double> output_times,
                              const ToleranceSettings& tol) {
    validate(tol, t_end, output_times);
    const size_t n = y0.size();
    SystemResult result;
    StepWorkspace w(n);

    // annotate divergence errors with the time of the failing evaluation
    auto eval = [&](double t, std::span<const double> y, std::span<double> dydt) {
        try {
            rhs(t, y, dydt);
        } catch (const divergence_error& e) {
            if (std::isnan(e.time()))
                throw divergence_error(std::string(e.what()), e.node(), e.value(), t);
            throw;
        }
        ++result.stats.rhs_evaluations;
    };

    std::vector<double> y = std::move(y0);
    double t = 0;
    size_t out_idx = 0;
    auto record = [&](double time, const std::vector<double>& state) {
        result.times.push_back(time);
        result.states.push_back(state);
    };
    while (out_idx < output_times.size() && output_times[out_idx] <= 0) {
        record(output_times[out_idx], y);
        ++out_idx;
    }

    eval(0.0, y, w.k1);
    double h = tol.initial_step > 0
                   ? std::min(tol.initial_step, t_end)
                   : initial_step_guess(eval, y, w.k1, t_end, tol, w.ytmp, w.k2);
    double facold = 1e-4;

    while (t < t_end) {
        if (result.stats.steps_accepted + result.stats.steps_rejected >= tol.max_steps) {
            std::ostringstream msg;
            msg << "integrate: exceeded max_steps = " << tol.max_steps << " at t = " << t;
            throw max_steps_error(msg.str());
        }
        if (!(h > 1e-14 * t_end)) {
            std::ostringstream msg;
            msg << "integrate: step size underflow (h = " << h << ") at t = " << t;
            throw step_underflow_error(msg.str());
        }
        bool last = false;
        if (t + 1.01 * h >= t_end) {
            h = t_end - t;
            last = true;
        }

        // stages (k1 carried over from the previous step: FSAL)
        for (size_t i = 0; i < n; ++i) w.ytmp[i] = y[i] + h * a21 * w.k1[i];
        eval(t + c2 * h, w.ytmp, w.k2);
        for (size_t i = 0; i < n; ++i)
            w.ytmp[i] = y[i] + h * (a31 * w.k1[i] + a32 * w.k2[i]);
        eval(t + c3 * h, w.ytmp, w.k3);
        for (size_t i = 0; i < n; ++i)
            w.ytmp[i] = y[i] + h * (a41 * w.k1[i] + a42 * w.k2[i] + a43 * w.k3[i]);
        eval(t + c4 * h, w.ytmp, w.k4);
        for (size_t i = 0; i < n; ++i)
            w.ytmp[i] = y[i] + h * (a51 * w.k1[i] + a52 * w.k2[i] + a53 * w.k3[i] +
                                    a54 * w.k4[i]);
        eval(t + c5 * h, w.ytmp, w.k5);
        for (size_t i = 0; i < n; ++i)
            w.ytmp[i] = y[i] + h * (a61 * w.k1[i] + a62 * w.k2[i] + a63 * w.k3[i] +
                                    a64 * w.k4[i] + a65 * w.k5[i]);
        eval(t + h, w.ytmp, w.k6);
        for (size_t i = 0; i < n; ++i)
            w.ynew[i] = y[i] + h * (b1 * w.k1[i] + b3 * w.k3[i] + b4 * w.k4[i] +
                                    b5 * w.k5[i] + b6 * w.k6[i]);
        eval(t + h, w.ynew, w.k7);

        // componentwise error measure: max_i |e_i| / (atol + rtol*max(|y|,|ynew|))
        double err = 0;
        for (size_t i = 0; i < n; ++i) {
            const double ee = h * (e1 * w.k1[i] + e3 * w.k3[i] + e4 * w.k4[i] +
                                   e5 * w.k5[i] + e6 * w.k6[i] + e7 * w.k7[i]);
            const double sc = tol.abs_tol +
                              tol.rel_tol * std::max(std::abs(y[i]), std::abs(w.ynew[i]));
            err = std::max(err, std::abs(ee) / sc);
        }

        if (!(err <= 1.0)) {
            // rejected (or non-finite estimate)
            ++result.stats.steps_rejected;
            if (!std::isfinite(err)) {
                h *= kMinFactor;
            } else {
                h /= std::min(1.0 / kMinFactor, std::pow(err, kAlpha) / kSafety);
            }
            continue;
        }

        // accepted: PI step-size update (Lund stabilization), clamp [0.2, 5]
        double fac = std::pow(err, kAlpha) / std::pow(facold, kBeta);
        fac = std::max(1.0 / kMaxFactor, std::min(1.0 / kMinFactor, fac / kSafety));
        double hnew = h / fac;
        facold = std::max(err, 1e-4);
        ++result.stats.steps_accepted;

        const double t_new = last ? t_end : t + h;
        if (out_idx < output_times.size() && output_times[out_idx] <= t_new * (1 + 1e-14)) {
            // dense interpolant for output times interior to this step
            bool have_cont = false;
            while (out_idx < output_times.size() &&
                   output_times[out_idx] <= t_new * (1 + 1e-14)) {
                const double tq = output_times[out_idx];
                if (std::abs(tq - t_new) <= 1e-12 * std::max(1.0, std::abs(t_new))) {
                    record(tq, w.ynew);
                } else {
                    if (!have_cont) {
                        for (size_t i = 0; i < n; ++i) {
                            const double ydiff = w.ynew[i] - y[i];
                            const double bspl = h * w.k1[i] - ydiff;
                            w.rc1[i] = y[i];
                            w.rc2[i] = ydiff;
                            w.rc3[i] = bspl;
                            w.rc4[i] = ydiff - h * w.k7[i] - bspl;
                            w.rc5[i] = h * (d1 * w.k1[i] + d3 * w.k3[i] + d4 * w.k4[i] +
                                            d5 * w.k5[i] + d6 * w.k6[i] + d7 * w.k7[i]);
                        }
                        have_cont = true;
                    }
                    const double theta = (tq - t) / h;
                    const double theta1 = 1.0 - theta;
                    std::vector<double> yq(n);
                    for (size_t i = 0; i < n; ++i)
                        yq[i] = w.rc1[i] +
                                theta * (w.rc2[i] +
                                         theta1 * (w.rc3[i] +
                                                   theta * (w.rc4[i] + theta1 * w.rc5[i])));
                    record(tq, yq);
                }
                ++out_idx;
            }
        }

        std::swap(y, w.ynew);
        std::swap(w.k1, w.k7);  // FSAL
        t = t_new;
        if (last) break;
        h = tol.max_step > 0 ? std::min(hnew, tol.max_step) : hnew;
    }

    if (output_times.empty()) record(t_end, y);
    return result;
}

SystemResult integrate_fixed_step(const SystemRhs& rhs, std::vector<double> y0,
                                  double t_end, double dt) {
    if (!(dt > 0)) throw std::invalid_argument("integrate_fixed_step: dt must be positive");
    if (!(t_end > 0)) throw std::invalid_argument("integrate_fixed_step: t_end must be positive");
    const size_t n = y0.size();
    const long nsteps = std::lround(t_end / dt);
    StepWorkspace w(n);
    SystemResult result;
    std::vector<double> y = std::move(y0);
    for (long s = 0; s < nsteps; ++s) {
        const double t = s * dt;
        const double h = (s == nsteps - 1) ? t_end - t : dt;
        rhs(t, y, w.k1);
        for (size_t i = 0; i < n; ++i) w.ytmp[i] = y[i] + h * a21 * w.k1[i];
        rhs(t + c2 * h, w.ytmp, w.k2);
        for (size_t i = 0; i < n; ++i)
            w.ytmp[i] = y[i] + h * (a31 * w.k1[i] + a32 * w.k2[i]);
        rhs(t + c3 * h, w.ytmp, w.k3);
        for (size_t i = 0; i < n; ++i)
            w.ytmp[i] = y[i] + h * (a41 * w.k1[i] + a42 * w.k2[i] + a43 * w.k3[i]);
        rhs(t + c4 * h, w.ytmp, w.k4);
        for (size_t i = 0; i < n; ++i)
            w.ytmp[i] = y[i] + h * (a51 * w.k1[i] + a52 * w.k2[i] + a53 * w.k3[i] +
                                    a54 * w.k4[i]);
        rhs(t + c5 * h, w.ytmp, w.k5);
        for (size_t i = 0; i < n; ++i)
            w.ytmp[i] = y[i] + h * (a61 * w.k1[i] + a62 * w.k2[i] + a63 * w.k3[i] +
                                    a64 * w.k4[i] + a65 * w.k5[i]);
        rhs(t + h, w.ytmp, w.k6);
        for (size_t i = 0; i < n; ++i)
            y[i] += h * (b1 * w.k1[i] + b3 * w.k3[i] + b4 * w.k4[i] + b5 * w.k5[i] +
                         b6 * w.k6[i]);
        result.stats.rhs_evaluations += 6;
        ++result.stats.steps_accepted;
    }
    result.times.push_back(t_end);
    result.states.push_back(std::move(y));
    return result;
}

IntegrationResult integrate(const Problem& p, double t_end,
                            std::span<const double> output_times,
                            const ToleranceSettings& tol) {
    RhsEvaluator eval(p);
    SystemRhs f = [&eval](double, std::span<const double> y, std::span<double> dydt) {
        eval(y, dydt);
    };
    SystemResult sys = integrate_system(f, p.initial.values, t_end, output_times, tol);
    IntegrationResult out;
    out.times = std::move(sys.times);
    out.stats = sys.stats;
    out.states.reserve(sys.states.size());
    for (auto& s : sys.states) out.states.emplace_back(p.grid, std::move(s));
    return out;
}

}  // namespace nlkdv

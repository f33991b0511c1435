#include "nlkdv/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace nlkdv {

namespace {

double sign_of(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

// Green's function of 1 + Dx^4.
double rosenau_kdv_alpha(double x) {
    static const double inv = 1.0 / (2.0 * std::sqrt(2.0));
    const double s = std::abs(x) / std::sqrt(2.0);
    return inv * std::exp(-s) * (std::cos(s) + std::sin(s));
}

double rosenau_kdv_alpha_prime(double x) {
    const double s = std::abs(x) / std::sqrt(2.0);
    return -sign_of(x) * 0.5 * std::exp(-s) * std::sin(s);
}

// Green's function of 1 - Dx^2 + Dx^4.
double rosenau_bbm_alpha(double x) {
    static const double inv = 1.0 / (2.0 * std::sqrt(3.0));
    const double s = std::abs(x);
    return inv * std::exp(-0.5 * std::sqrt(3.0) * s) *
           (std::cos(0.5 * s) + std::sqrt(3.0) * std::sin(0.5 * s));
}

double rosenau_bbm_alpha_prime(double x) {
    const double s = std::abs(x);
    return -sign_of(x) / std::sqrt(3.0) * std::exp(-0.5 * std::sqrt(3.0) * s) *
           std::sin(0.5 * s);
}

// Green's function of 1 - Dx^2. alpha' jumps at 0; the odd-symmetry value 0 is
// used there.
double exponential_alpha(double x) { return 0.5 * std::exp(-std::abs(x)); }

double exponential_alpha_prime(double x) {
    return -sign_of(x) * 0.5 * std::exp(-std::abs(x));
}

double gaussian_alpha(double x) {
    static const double inv = 1.0 / std::sqrt(2.0 * M_PI);
    return inv * std::exp(-0.5 * x * x);
}

double gaussian_alpha_prime(double x) { return -x * gaussian_alpha(x); }

// Central second difference of alpha' with a step that keeps the stencil on
// one side of the origin (alpha''' may jump there).
double fd_alpha_third(const Kernel& k, double x, double base_delta) {
    const double d = std::min(base_delta, std::abs(x) / 2.0);
    return (k.alpha_prime(x + d) - 2.0 * k.alpha_prime(x) + k.alpha_prime(x - d)) /
           (d * d);
}

double fd_alpha_second(const Kernel& k, double x, double base_delta) {
    const double d = std::min(base_delta, std::abs(x) / 2.0);
    return (k.alpha_prime(x + d) - k.alpha_prime(x - d)) / (2.0 * d);
}

// Trapezoidal sum of |f| over [0, L] doubled by evenness. The x = 0 value is
// linearly extrapolated from the first two interior nodes, which keeps the
// estimate one-sided when |f| has a jump or kink at the origin.
double half_line_l1(const std::function<double(double)>& f, double step, double L) {
    const int n = static_cast<int>(std::ceil(L / step));
    double sum = 0.0;
    double f1 = std::abs(f(step));
    double f2 = std::abs(f(2.0 * step));
    const double f0 = std::max(0.0, 2.0 * f1 - f2);
    sum += 0.5 * (f0 + f1);
    double prev = f1;
    for (int j = 2; j <= n; ++j) {
        const double cur = std::abs(f(j * step));
        sum += 0.5 * (prev + cur);
        prev = cur;
    }
    return 2.0 * step * sum;
}

ConditionReport conditions_at_step(const Kernel& k, double step, double halfwidth) {
    const double fd = std::min(1e-3, step / 2.0);
    ConditionReport r;
    r.satisfies_c2 = k.satisfies_c2;
    r.l1_alpha = half_line_l1([&](double x) { return k.alpha(x); }, step, halfwidth);
    r.l1_alpha_prime =
        half_line_l1([&](double x) { return k.alpha_prime(x); }, step, halfwidth);
    r.l1_alpha_second =
        half_line_l1([&](double x) { return fd_alpha_second(k, x, fd); }, step,
                     halfwidth);
    r.w21_norm = r.l1_alpha + r.l1_alpha_prime + r.l1_alpha_second;
    if (k.satisfies_c2) {
        r.mu_total_variation = half_line_l1(
            [&](double x) { return fd_alpha_third(k, x, fd); }, step, halfwidth);
    }
    return r;
}

}  // namespace

Kernel make_kernel(KernelKind kind) {
    Kernel k;
    k.kind = kind;
    switch (kind) {
        case KernelKind::RosenauKdV:
            k.alpha = rosenau_kdv_alpha;
            k.alpha_prime = rosenau_kdv_alpha_prime;
            k.decay_rate = 1.0 / std::sqrt(2.0);
            k.satisfies_c2 = true;
            break;
        case KernelKind::RosenauBBMKdV:
            k.alpha = rosenau_bbm_alpha;
            k.alpha_prime = rosenau_bbm_alpha_prime;
            k.decay_rate = std::sqrt(3.0) / 2.0;
            k.satisfies_c2 = true;
            break;
        case KernelKind::Exponential:
            k.alpha = exponential_alpha;
            k.alpha_prime = exponential_alpha_prime;
            k.decay_rate = 1.0;
            k.satisfies_c2 = false;  // alpha''' has a dipole at the origin
            break;
        case KernelKind::Gaussian:
            k.alpha = gaussian_alpha;
            k.alpha_prime = gaussian_alpha_prime;
            k.decay_rate = 1.0 / std::sqrt(2.0);
            k.satisfies_c2 = true;
            break;
        case KernelKind::Custom:
            throw std::invalid_argument(
                "make_kernel: Custom requires make_custom_kernel");
    }
    if (k.satisfies_c2) {
        k.mu_total_variation =
            conditions_at_step(k, 0.005, 60.0).mu_total_variation;
    }
    return k;
}

Kernel make_custom_kernel(std::function<double(double)> alpha,
                          std::function<double(double)> alpha_prime,
                          std::optional<double> decay_rate, bool satisfies_c2) {
    Kernel k;
    k.kind = KernelKind::Custom;
    k.alpha = std::move(alpha);
    k.alpha_prime = std::move(alpha_prime);
    k.decay_rate = decay_rate;
    k.satisfies_c2 = satisfies_c2;
    if (satisfies_c2) {
        k.mu_total_variation =
            conditions_at_step(k, 0.005, 60.0).mu_total_variation;
    }
    return k;
}

double eval_alpha(const Kernel& k, double x) { return k.alpha(x); }

double eval_alpha_prime(const Kernel& k, double x) { return k.alpha_prime(x); }

ConditionReport verify_conditions(const Kernel& k, double quad_step,
                                  double quad_halfwidth) {
    if (!(quad_step > 0) || !(quad_halfwidth > 0)) {
        throw std::invalid_argument("verify_conditions: quadrature parameters "
                                    "must be positive");
    }
    ConditionReport coarse = conditions_at_step(k, quad_step, quad_halfwidth);
    ConditionReport fine = conditions_at_step(k, quad_step / 2.0, quad_halfwidth);

    auto close = [](double a, double b) {
        return std::abs(a - b) <= 0.01 * std::max(std::abs(a), std::abs(b));
    };
    ConditionReport r = coarse;
    r.w21_norm_halved = fine.w21_norm;
    r.mu_total_variation_halved = fine.mu_total_variation;
    r.converged = close(coarse.w21_norm, fine.w21_norm);
    if (coarse.mu_total_variation && fine.mu_total_variation) {
        r.converged =
            r.converged && close(*coarse.mu_total_variation, *fine.mu_total_variation);
    }
    return r;
}

std::optional<KernelKind> kernel_kind_from_name(std::string_view name) {
    if (name == "rosenau-kdv") return KernelKind::RosenauKdV;
    if (name == "rosenau-bbm-kdv") return KernelKind::RosenauBBMKdV;
    if (name == "exponential") return KernelKind::Exponential;
    if (name == "gaussian") return KernelKind::Gaussian;
    return std::nullopt;
}

std::string kernel_name(KernelKind kind) {
    switch (kind) {
        case KernelKind::RosenauKdV: return "rosenau-kdv";
        case KernelKind::RosenauBBMKdV: return "rosenau-bbm-kdv";
        case KernelKind::Exponential: return "exponential";
        case KernelKind::Gaussian: return "gaussian";
        case KernelKind::Custom: return "custom";
    }
    return "custom";
}

}  // namespace nlkdv

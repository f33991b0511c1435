#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace nlkdv {

enum class KernelKind { RosenauKdV, RosenauBBMKdV, Exponential, Gaussian, Custom };

/// Convolution kernel alpha together with its analytic first derivative and
/// the metadata the scheme's error theory needs.
///
/// The catalog kernels are the Green's functions of 1+Dx^4 (Rosenau-KdV),
/// 1-Dx^2+Dx^4 (Rosenau-BBM-KdV) and 1-Dx^2 (exponential), plus the Gaussian.
/// All catalog kernels are even with odd first derivative; alpha_prime(0) is 0
/// by odd symmetry (the Rosenau kernels are C^1 at the origin, the exponential
/// kernel's jump there is resolved by the same convention).
struct Kernel {
    KernelKind kind = KernelKind::Custom;
    std::function<double(double)> alpha;
    std::function<double(double)> alpha_prime;

    /// Exponential decay rate a with |alpha^(j)(x)| <= C e^{-a|x|}, j = 1, 3,
    /// where such a bound is available.
    std::optional<double> decay_rate;

    /// Numeric estimate of |mu|(R), the total variation of alpha''' as a
    /// measure. Unset when the kernel does not satisfy condition C2.
    std::optional<double> mu_total_variation;

    /// True when alpha''' is a finite Borel measure (condition C2).
    bool satisfies_c2 = false;
};

/// Quadrature estimates of the kernel's smoothness norms.
///
/// All integrals are trapezoidal sums on a uniform grid of spacing quad_step
/// over [0, quad_halfwidth], doubled by symmetry. alpha'' and alpha''' are
/// formed by central differences of alpha_prime; the origin is avoided (the
/// Rosenau kernels have a jump in alpha''' there) and the x=0 value is filled
/// by one-sided linear extrapolation. Each estimate is recomputed at half the
/// step; `converged` reports whether the two agree to 1%.
struct ConditionReport {
    double l1_alpha = 0;
    double l1_alpha_prime = 0;
    double l1_alpha_second = 0;
    double w21_norm = 0;  // sum of the three L1 norms
    std::optional<double> mu_total_variation;
    bool satisfies_c2 = false;
    bool converged = false;
    double w21_norm_halved = 0;  // refined-step estimates backing `converged`
    std::optional<double> mu_total_variation_halved;
};

/// Builds a catalog kernel. `kind` must not be Custom.
Kernel make_kernel(KernelKind kind);

/// Wraps a user-supplied (alpha, alpha') pair. No symbolic differentiation is
/// performed; the derivative's correctness is the caller's responsibility and
/// is checkable with the same finite-difference oracle used for the catalog.
/// When `satisfies_c2` is set, |mu|(R) is estimated by the default quadrature.
Kernel make_custom_kernel(std::function<double(double)> alpha,
                          std::function<double(double)> alpha_prime,
                          std::optional<double> decay_rate = std::nullopt,
                          bool satisfies_c2 = true);

double eval_alpha(const Kernel& k, double x);
double eval_alpha_prime(const Kernel& k, double x);

ConditionReport verify_conditions(const Kernel& k, double quad_step,
                                  double quad_halfwidth);

/// Config/CLI names: "rosenau-kdv", "rosenau-bbm-kdv", "exponential", "gaussian".
std::optional<KernelKind> kernel_kind_from_name(std::string_view name);
std::string kernel_name(KernelKind kind);

}  // namespace nlkdv

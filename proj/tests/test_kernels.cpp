#include <doctest.h>

#include <cmath>
#include <random>

#include "nlkdv/errors.hpp"
#include "nlkdv/kernels.hpp"
#include "reference_values.hpp"

using namespace nlkdv;

namespace {

Kernel sech2_kernel() {
    return make_custom_kernel(refvals::sech2_alpha, refvals::sech2_alpha_prime,
                              2.0, true);
}

const KernelKind kCatalog[] = {KernelKind::RosenauKdV, KernelKind::RosenauBBMKdV,
                               KernelKind::Exponential, KernelKind::Gaussian};

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("catalog point values") {
    const Kernel rk = make_kernel(KernelKind::RosenauKdV);
    const Kernel rb = make_kernel(KernelKind::RosenauBBMKdV);
    const Kernel ex = make_kernel(KernelKind::Exponential);
    const Kernel ga = make_kernel(KernelKind::Gaussian);

    CHECK(eval_alpha(rk, 0.0) == doctest::Approx(refvals::kRosenauKdVAlpha0).epsilon(1e-15));
    CHECK(eval_alpha(rb, 0.0) == doctest::Approx(refvals::kRosenauBBMAlpha0).epsilon(1e-15));
    CHECK(eval_alpha(ex, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(eval_alpha(ga, 0.0) == doctest::Approx(refvals::kGaussianAlpha0).epsilon(1e-15));

    // odd symmetry pins alpha'(0) = 0 for every kind
    for (KernelKind kind : kCatalog)
        CHECK(eval_alpha_prime(make_kernel(kind), 0.0) == 0.0);

    CHECK(eval_alpha_prime(rk, 1.0) ==
          doctest::Approx(refvals::kRosenauKdVAlphaPrime1).epsilon(1e-14));
    CHECK(eval_alpha_prime(rk, -1.0) ==
          doctest::Approx(-refvals::kRosenauKdVAlphaPrime1).epsilon(1e-14));
    CHECK(eval_alpha_prime(ga, 1.0) ==
          doctest::Approx(refvals::kGaussianAlphaPrime1).epsilon(1e-14));

    // Gaussian tail decays monotonically beyond |x| = 1
    double prev = eval_alpha(ga, 1.0);
    for (double x = 1.5; x <= 12.0; x += 0.5) {
        const double cur = eval_alpha(ga, x);
        CHECK(cur < prev);
        prev = cur;
    }
    CHECK(eval_alpha(ga, 40.0) == 0.0);  // underflows cleanly
}

TEST_CASE("evenness and oddness at random points") {
    std::mt19937 rng(20240517);
    std::uniform_real_distribution<double> dist(-20.0, 20.0);
    for (KernelKind kind : kCatalog) {
        const Kernel k = make_kernel(kind);
        for (int i = 0; i < 1000; ++i) {
            const double x = dist(rng);
            CHECK(std::abs(k.alpha(x) - k.alpha(-x)) <= 1e-14);
            CHECK(std::abs(k.alpha_prime(x) + k.alpha_prime(-x)) <= 1e-14);
        }
    }
}

TEST_CASE("derivative matches central finite difference of alpha") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> mag(0.1, 10.0);
    std::bernoulli_distribution flip;
    const double delta = 1e-6;
    auto check_kernel = [&](const Kernel& k) {
        for (int i = 0; i < 200; ++i) {
            const double x = (flip(rng) ? 1.0 : -1.0) * mag(rng);
            const double fd = (k.alpha(x + delta) - k.alpha(x - delta)) / (2.0 * delta);
            CHECK(std::abs(k.alpha_prime(x) - fd) <= 1e-6);
        }
    };
    for (KernelKind kind : kCatalog) check_kernel(make_kernel(kind));
    check_kernel(sech2_kernel());
}

TEST_CASE("exponential decay envelopes") {
    const Kernel rk = make_kernel(KernelKind::RosenauKdV);
    const Kernel rb = make_kernel(KernelKind::RosenauBBMKdV);
    for (double x = 1.0; x <= 40.0; x += 0.25) {
        CHECK(std::abs(rk.alpha_prime(x)) <= std::exp(-x / std::sqrt(2.0)));
        CHECK(std::abs(rb.alpha_prime(x)) <= std::exp(-std::sqrt(3.0) / 2.0 * x));
    }
    CHECK(rk.decay_rate.has_value());
    CHECK(*rk.decay_rate == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(*rb.decay_rate == doctest::Approx(std::sqrt(3.0) / 2.0));
}

TEST_CASE("frozen mu values agree with closed-form trapezoid oracle") {
    // re-derive the frozen constants from the symbolic third derivatives
    const double mu_rk = 2.0 * refvals::trapezoid_abs(refvals::rkdv_alpha_third,
                                                      0.0, 60.0, 240000);
    const double mu_rb = 2.0 * refvals::trapezoid_abs(refvals::rbbm_alpha_third,
                                                      0.0, 60.0, 240000);
    const double mu_ga = 2.0 * refvals::trapezoid_abs(refvals::gaussian_alpha_third,
                                                      0.0, 30.0, 120000);
    const double mu_s2 = 2.0 * refvals::trapezoid_abs(refvals::sech2_alpha_third,
                                                      0.0, 30.0, 120000);
    CHECK(mu_rk == doctest::Approx(refvals::kMuRosenauKdV).epsilon(1e-6));
    CHECK(mu_rb == doctest::Approx(refvals::kMuRosenauBBM).epsilon(1e-6));
    CHECK(mu_ga == doctest::Approx(refvals::kMuGaussian).epsilon(1e-6));
    CHECK(mu_s2 == doctest::Approx(refvals::kMuSech2).epsilon(1e-6));
}

TEST_CASE("verify_conditions estimates") {
    const Kernel ga = make_kernel(KernelKind::Gaussian);
    const ConditionReport ra = verify_conditions(ga, 0.01, 60.0);
    CHECK(ra.satisfies_c2);
    CHECK(ra.converged);
    REQUIRE(ra.mu_total_variation.has_value());
    CHECK(*ra.mu_total_variation ==
          doctest::Approx(refvals::kMuGaussian).epsilon(0.005));
    CHECK(ra.l1_alpha_prime ==
          doctest::Approx(refvals::kL1PrimeGaussian).epsilon(0.005));
    CHECK(ra.l1_alpha_prime ==
          doctest::Approx(2.0 * refvals::kGaussianAlpha0).epsilon(0.005));
    CHECK(ra.w21_norm == doctest::Approx(refvals::kW21Gaussian).epsilon(0.005));

    const Kernel rk = make_kernel(KernelKind::RosenauKdV);
    const ConditionReport rr = verify_conditions(rk, 0.01, 60.0);
    CHECK(rr.converged);
    CHECK(*rr.mu_total_variation ==
          doctest::Approx(refvals::kMuRosenauKdV).epsilon(0.005));
    CHECK(rr.w21_norm == doctest::Approx(refvals::kW21RosenauKdV).epsilon(0.005));

    const Kernel rb = make_kernel(KernelKind::RosenauBBMKdV);
    const ConditionReport rbr = verify_conditions(rb, 0.01, 60.0);
    CHECK(*rbr.mu_total_variation ==
          doctest::Approx(refvals::kMuRosenauBBM).epsilon(0.005));
    CHECK(rbr.w21_norm == doctest::Approx(refvals::kW21RosenauBBM).epsilon(0.005));

    const ConditionReport rs = verify_conditions(sech2_kernel(), 0.01, 40.0);
    CHECK(*rs.mu_total_variation == doctest::Approx(refvals::kMuSech2).epsilon(0.005));
    CHECK(rs.w21_norm == doctest::Approx(refvals::kW21Sech2).epsilon(0.005));
}

TEST_CASE("exponential kernel fails C2") {
    const Kernel ex = make_kernel(KernelKind::Exponential);
    CHECK_FALSE(ex.satisfies_c2);
    CHECK_FALSE(ex.mu_total_variation.has_value());
    const ConditionReport r = verify_conditions(ex, 0.01, 60.0);
    CHECK_FALSE(r.satisfies_c2);
    CHECK_FALSE(r.mu_total_variation.has_value());
}

TEST_CASE("make_kernel caches a mu estimate for C2 kinds") {
    CHECK(*make_kernel(KernelKind::Gaussian).mu_total_variation ==
          doctest::Approx(refvals::kMuGaussian).epsilon(0.005));
    CHECK(*make_kernel(KernelKind::RosenauKdV).mu_total_variation ==
          doctest::Approx(refvals::kMuRosenauKdV).epsilon(0.005));
    CHECK(*sech2_kernel().mu_total_variation ==
          doctest::Approx(refvals::kMuSech2).epsilon(0.005));
}

TEST_CASE("non-convergence is reported for an absurd quadrature step") {
    const Kernel ga = make_kernel(KernelKind::Gaussian);
    const ConditionReport r = verify_conditions(ga, 8.0, 60.0);
    CHECK_FALSE(r.converged);
}

TEST_CASE("kind names") {
    CHECK(kernel_kind_from_name("rosenau-kdv") == KernelKind::RosenauKdV);
    CHECK(kernel_kind_from_name("rosenau-bbm-kdv") == KernelKind::RosenauBBMKdV);
    CHECK(kernel_kind_from_name("exponential") == KernelKind::Exponential);
    CHECK(kernel_kind_from_name("gaussian") == KernelKind::Gaussian);
    CHECK_FALSE(kernel_kind_from_name("sinc").has_value());
    for (KernelKind kind : kCatalog)
        CHECK(kernel_kind_from_name(kernel_name(kind)) == kind);
    CHECK_THROWS_AS(make_kernel(KernelKind::Custom), std::invalid_argument);
}

}  // TEST_SUITE

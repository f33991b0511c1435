#include <doctest.h>

#include <cmath>
#include <random>

#include "nlkdv/errors.hpp"
#include "nlkdv/semidiscrete.hpp"
#include "nlkdv/solutions.hpp"
#include "reference_values.hpp"

using namespace nlkdv;

namespace {

Problem figure1_problem(ProblemOptions opts = {}) {
    const UniformGrid grid = make_grid(-40.0, 80.0, 0.5);
    const SolitaryWave w = solitary_params(SolitaryFamily::RosenauKdV);
    return assemble(make_kernel(KernelKind::RosenauKdV),
                    parse_nonlinearity("u + u^2/2"), 1.0, grid,
                    initial_data(w, grid), opts);
}

}  // namespace

TEST_SUITE("semidiscrete") {

TEST_CASE("nonlinearity parsing") {
    const Nonlinearity f = parse_nonlinearity("u + u^2/2");
    CHECK(f.kind == Nonlinearity::Kind::LinearPlusQuadratic);
    CHECK(f(0.0) == 0.0);
    CHECK(f(1.0) == doctest::Approx(1.5));
    CHECK(f(2.0) == doctest::Approx(4.0));
    CHECK(f.g(2.0) == doctest::Approx(2.0));

    CHECK(parse_nonlinearity("0.5*u^2")(3.0) == doctest::Approx(4.5));
    CHECK(parse_nonlinearity("u^3/6 + u")(2.0) == doctest::Approx(2.0 + 8.0 / 6.0));
    CHECK(parse_nonlinearity("-u^2")(3.0) == doctest::Approx(-9.0));
    CHECK(parse_nonlinearity("2*u")(3.0) == doctest::Approx(6.0));
    CHECK(parse_nonlinearity(" u + 0.25 * u^4 ")(1.0) == doctest::Approx(1.25));

    CHECK_THROWS_AS(parse_nonlinearity("1 + u"), config_error);
    CHECK_THROWS_AS(parse_nonlinearity("u + 3"), config_error);
    CHECK_THROWS_AS(parse_nonlinearity("u^0"), config_error);
    CHECK_THROWS_AS(parse_nonlinearity("x^2"), config_error);
    CHECK_THROWS_AS(parse_nonlinearity(""), config_error);
    CHECK_THROWS_AS(parse_nonlinearity("u^2/0"), config_error);
}

TEST_CASE("custom nonlinearity must vanish at zero") {
    const Nonlinearity s = make_custom_nonlinearity([](double u) { return std::sin(u); });
    CHECK(s(0.5) == doctest::Approx(std::sin(0.5)));
    CHECK_THROWS_AS(make_custom_nonlinearity([](double u) { return u + 1.0; }),
                    std::invalid_argument);
}

TEST_CASE("assembly of the figure-1 setup") {
    const Problem p = figure1_problem();
    CHECK(p.grid.m == 241);
    CHECK(p.weights_nl.halfwidth == 240);
    CHECK(p.weights_lin.l1h() <=
          2.0 * p.kappa * refvals::kMuRosenauKdV * (1.0 + 1e-12));
}

TEST_CASE("assembly rejects bad inputs") {
    const UniformGrid grid = make_grid(-10.0, 10.0, 0.5);
    const SolitaryWave w = solitary_params(SolitaryFamily::RosenauKdV);
    const GridFunction init = initial_data(w, grid);
    const Kernel k = make_kernel(KernelKind::RosenauKdV);
    const Nonlinearity f = parse_nonlinearity("u + u^2/2");
    CHECK_THROWS_AS(assemble(k, f, 0.0, grid, init), std::invalid_argument);
    CHECK_THROWS_AS(assemble(k, f, -1.0, grid, init), std::invalid_argument);
    const UniformGrid other = make_grid(-10.0, 10.0, 0.25);
    CHECK_THROWS_AS(assemble(k, f, 1.0, other, init), std::invalid_argument);
}

TEST_CASE("zero data gives zero rhs") {
    const UniformGrid grid = make_grid(-10.0, 10.0, 0.5);
    const Kernel k = make_kernel(KernelKind::RosenauKdV);
    for (bool fused : {false, true}) {
        for (ConvolveMethod method : {ConvolveMethod::Direct, ConvolveMethod::Fft}) {
            ProblemOptions o;
            o.fused = fused;
            o.method = method;
            const Problem p = assemble(k, parse_nonlinearity("u + u^2/2"), 1.0, grid,
                                       GridFunction(grid), o);
            CHECK(linf_norm(rhs(p, GridFunction(grid))) == 0.0);
        }
    }
}

TEST_CASE("impulse response reproduces reflected weights for linear f") {
    const UniformGrid grid = make_grid(-16.0, 16.0, 0.5);
    const Kernel k = make_kernel(KernelKind::Gaussian);
    ProblemOptions o;
    o.method = ConvolveMethod::Direct;
    GridFunction imp(grid);
    const int j0 = 32;
    imp[j0] = 1.0;
    const Problem p = assemble(k, parse_nonlinearity("u"), 1e-12, grid, imp, o);
    const GridFunction r = rhs(p, imp);
    for (int i = 0; i < grid.m; ++i)
        CHECK(r[i] == doctest::Approx(-p.weights_nl.at(i - j0)).epsilon(1e-9).scale(1.0));
}

TEST_CASE("rhs norm bound from the operator norms") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    const Problem p = figure1_problem();
    const double lip = 3.0;  // max |1 + u| on [-2, 2]
    for (int rep = 0; rep < 10; ++rep) {
        GridFunction v(p.grid);
        for (int i = 0; i < v.size(); ++i) v[i] = dist(rng);
        const double bound =
            (lip * p.weights_nl.l1h() + p.weights_lin.l1h()) * linf_norm(v);
        CHECK(linf_norm(rhs(p, v)) <= bound * (1.0 + 1e-12));
    }
}

TEST_CASE("rhs is linear when f is the identity") {
    std::mt19937 rng(23);
    std::normal_distribution<double> nd;
    const UniformGrid grid = make_grid(-20.0, 20.0, 0.25);
    const Problem p = assemble(make_kernel(KernelKind::RosenauKdV),
                               parse_nonlinearity("u"), 1.0, grid,
                               GridFunction(grid));
    GridFunction v1(grid), v2(grid), lin(grid);
    for (int i = 0; i < grid.m; ++i) {
        v1[i] = nd(rng);
        v2[i] = nd(rng);
        lin[i] = 0.6 * v1[i] - 1.7 * v2[i];
    }
    const GridFunction r = rhs(p, lin);
    const GridFunction r1 = rhs(p, v1);
    const GridFunction r2 = rhs(p, v2);
    double scale = linf_norm(r);
    for (int i = 0; i < grid.m; ++i)
        CHECK(std::abs(r[i] - (0.6 * r1[i] - 1.7 * r2[i])) <= 1e-13 * scale);
}

TEST_CASE("even state maps to odd rhs on a symmetric grid") {
    const UniformGrid grid = make_symmetric_grid(40, 0.25);
    const SolitaryWave w = solitary_params(SolitaryFamily::RosenauKdV);
    const Problem p = assemble(make_kernel(KernelKind::RosenauKdV),
                               parse_nonlinearity("u + u^2/2"), 1.0, grid,
                               initial_data(w, grid));
    const GridFunction r = rhs(p, p.initial);
    const double scale = linf_norm(r);
    for (int i = 0; i < grid.m; ++i)
        CHECK(std::abs(r[i] + r[grid.m - 1 - i]) <= 1e-13 * scale);
}

TEST_CASE("fused and unfused forms agree") {
    std::mt19937 rng(5);
    std::normal_distribution<double> nd;
    ProblemOptions fused;
    fused.fused = true;
    const Problem pu = figure1_problem();
    const Problem pf = figure1_problem(fused);
    for (int rep = 0; rep < 5; ++rep) {
        GridFunction v(pu.grid);
        for (int i = 0; i < v.size(); ++i) v[i] = nd(rng);
        const GridFunction a = rhs(pu, v);
        const GridFunction b = rhs(pf, v);
        const double scale = linf_norm(a);
        for (int i = 0; i < v.size(); ++i)
            CHECK(std::abs(a[i] - b[i]) <= 1e-13 * scale);
    }
}

TEST_CASE("direct and fft rhs agree") {
    std::mt19937 rng(31);
    std::normal_distribution<double> nd;
    ProblemOptions od, of;
    od.method = ConvolveMethod::Direct;
    of.method = ConvolveMethod::Fft;
    const Problem pd = figure1_problem(od);
    const Problem pf = figure1_problem(of);
    GridFunction v(pd.grid);
    for (int i = 0; i < v.size(); ++i) v[i] = nd(rng);
    const GridFunction a = rhs(pd, v);
    const GridFunction b = rhs(pf, v);
    const double scale = linf_norm(a);
    for (int i = 0; i < v.size(); ++i)
        CHECK(std::abs(a[i] - b[i]) <= 1e-12 * scale);
}

TEST_CASE("blow-up guard raises divergence errors") {
    const Problem p = figure1_problem();
    GridFunction big(p.grid);
    big[17] = 1e7;
    try {
        rhs(p, big);
        FAIL("expected divergence_error");
    } catch (const divergence_error& e) {
        CHECK(e.node() == 17);
        CHECK(e.value() == 1e7);
    }
    GridFunction bad(p.grid);
    bad[3] = std::nan("");
    CHECK_THROWS_AS(rhs(p, bad), divergence_error);

    GridFunction mismatched(make_grid(-40.0, 80.0, 0.25));
    CHECK_THROWS_AS(rhs(p, mismatched), std::invalid_argument);
}

}  // TEST_SUITE

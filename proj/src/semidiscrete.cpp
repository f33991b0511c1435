#include "nlkdv/semidiscrete.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nlkdv/errors.hpp"

namespace nlkdv {

namespace {

double horner_no_constant(const std::vector<double>& coeffs, double u) {
    // f(u) = u*(c1 + u*(c2 + u*(...)))
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = *it + u * acc;
    return u * acc;
}

std::string strip_spaces(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    return out;
}

double parse_number(std::string_view s, const std::string& context) {
    if (s.empty()) throw config_error("nonlinearity: missing number in '" + context + "'",
                                      "nonlinearity");
    size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(std::string(s), &pos);
    } catch (const std::exception&) {
        throw config_error("nonlinearity: cannot parse number '" + std::string(s) +
                           "' in term '" + context + "'", "nonlinearity");
    }
    if (pos != s.size())
        throw config_error("nonlinearity: trailing characters in number '" +
                           std::string(s) + "'", "nonlinearity");
    return v;
}

}  // namespace

double Nonlinearity::operator()(double u) const {
    if (kind == Kind::Custom) return fn(u);
    return horner_no_constant(coefficients, u);
}

double Nonlinearity::g(double u) const { return (*this)(u)-u; }

Nonlinearity make_polynomial_nonlinearity(std::vector<double> coefficients_by_power) {
    Nonlinearity f;
    f.coefficients = std::move(coefficients_by_power);
    const bool lpq = f.coefficients.size() == 2 && f.coefficients[0] == 1.0;
    f.kind = lpq ? Nonlinearity::Kind::LinearPlusQuadratic
                 : Nonlinearity::Kind::Polynomial;
    std::ostringstream spec;
    for (size_t p = 0; p < f.coefficients.size(); ++p) {
        if (f.coefficients[p] == 0.0) continue;
        if (spec.tellp() > 0) spec << " + ";
        if (f.coefficients[p] != 1.0) spec << f.coefficients[p] << "*";
        spec << "u";
        if (p > 0) spec << "^" << p + 1;
    }
    f.spec = spec.str().empty() ? "0*u" : spec.str();
    return f;
}

Nonlinearity make_custom_nonlinearity(std::function<double(double)> fn) {
    if (std::abs(fn(0.0)) > 1e-15)
        throw std::invalid_argument("nonlinearity: f(0) must vanish");
    Nonlinearity f;
    f.kind = Nonlinearity::Kind::Custom;
    f.fn = std::move(fn);
    f.spec = "custom";
    return f;
}

// Terms "c*u^k" (optionally "/d") joined by '+'. A constant term is
// rejected so that f(0) = 0 holds by construction.
Nonlinearity parse_nonlinearity(std::string_view spec) {
    const std::string s = strip_spaces(spec);
    if (s.empty()) throw config_error("nonlinearity: empty spec", "nonlinearity");

    std::vector<double> coeffs;
    size_t start = 0;
    while (start <= s.size()) {
        size_t plus = s.find('+', start);
        if (plus == std::string::npos) plus = s.size();
        const std::string term = s.substr(start, plus - start);
        start = plus + 1;
        if (term.empty())
            throw config_error("nonlinearity: empty term", "nonlinearity");

        const size_t u_pos = term.find('u');
        if (u_pos == std::string::npos)
            throw config_error("nonlinearity: constant term '" + term +
                               "' not allowed (f(0) = 0)", "nonlinearity");

        double coeff = 1.0;
        if (u_pos > 0) {
            std::string prefix = term.substr(0, u_pos);
            if (prefix == "-") {
                coeff = -1.0;
            } else {
                if (prefix.back() == '*') prefix.pop_back();
                coeff = parse_number(prefix, term);
            }
        }

        size_t rest = u_pos + 1;
        long power = 1;
        if (rest < term.size() && term[rest] == '^') {
            size_t end = rest + 1;
            while (end < term.size() && (std::isdigit(static_cast<unsigned char>(term[end]))))
                ++end;
            power = static_cast<long>(parse_number(term.substr(rest + 1, end - rest - 1), term));
            rest = end;
        }
        if (power < 1)
            throw config_error("nonlinearity: power must be >= 1 in '" + term + "'",
                               "nonlinearity");
        if (rest < term.size() && term[rest] == '/') {
            const double d = parse_number(term.substr(rest + 1), term);
            if (d == 0.0)
                throw config_error("nonlinearity: division by zero in '" + term + "'",
                                   "nonlinearity");
            coeff /= d;
            rest = term.size();
        }
        if (rest != term.size())
            throw config_error("nonlinearity: cannot parse term '" + term + "'",
                               "nonlinearity");

        if (coeffs.size() < static_cast<size_t>(power)) coeffs.resize(power, 0.0);
        coeffs[power - 1] += coeff;
    }

    Nonlinearity f = make_polynomial_nonlinearity(std::move(coeffs));
    f.spec = std::string(spec);
    return f;
}

namespace {

void guard_state(const Problem& p, std::span<const double> v) {
    const double guard = p.options.blow_up_guard;
    for (size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i]) || std::abs(v[i]) > guard) {
            std::ostringstream msg;
            msg << "state diverged at node " << i << " (x = "
                << p.grid.node(static_cast<int>(i)) << ", value = " << v[i]
                << ", guard = " << guard << ")";
            throw divergence_error(msg.str(), static_cast<long>(i), v[i]);
        }
    }
}

void direct_convolve_span(const ConvolutionWeights& w, std::span<const double> v,
                          std::span<double> out) {
    const int m = static_cast<int>(v.size());
    const int K = w.halfwidth;
    for (int i = 0; i < m; ++i) {
        const int jlo = std::max(0, i - K);
        const int jhi = std::min(m - 1, i + K);
        double s = 0;
        for (int j = jlo; j <= jhi; ++j) s += w.at(i - j) * v[static_cast<size_t>(j)];
        out[static_cast<size_t>(i)] = s;
    }
}

}  // namespace

Problem assemble(Kernel kernel, Nonlinearity f, double kappa, UniformGrid grid,
                 GridFunction initial, ProblemOptions options) {
    if (!(kappa > 0))
        throw std::invalid_argument("assemble: kappa must be positive");
    if (initial.grid != grid)
        throw std::invalid_argument("assemble: initial data grid mismatch");
    if (std::abs(f(0.0)) > 1e-15)
        throw std::invalid_argument("assemble: nonlinearity must have f(0) = 0");
    for (int i = 0; i < initial.size(); ++i)
        if (!std::isfinite(initial[i]))
            throw divergence_error("assemble: non-finite initial data", i, initial[i]);

    Problem p;
    p.kernel = std::move(kernel);
    p.nonlinearity = std::move(f);
    p.kappa = kappa;
    p.grid = grid;
    p.initial = std::move(initial);
    p.options = options;

    const int K = options.halfwidth < 0 ? grid.m - 1 : options.halfwidth;
    p.weights_nl = build_weights(p.kernel, grid.h, K, false);
    p.weights_lin = build_weights(p.kernel, grid.h, K, true);
    for (double& w : p.weights_lin.values) w *= kappa;
    if (options.fused) {
        p.weights_both = p.weights_nl;
        for (size_t i = 0; i < p.weights_both.values.size(); ++i)
            p.weights_both.values[i] += p.weights_lin.values[i];
    }
    p.resolved_method = options.method;
    if (p.resolved_method == ConvolveMethod::Auto)
        p.resolved_method = grid.m >= 128 ? ConvolveMethod::Fft : ConvolveMethod::Direct;
    return p;
}

RhsEvaluator::RhsEvaluator(const Problem& p)
    : p_(p),
      fv_(static_cast<size_t>(p.grid.m)),
      tmp_(static_cast<size_t>(p.grid.m)) {
    if (p_.resolved_method == ConvolveMethod::Fft) {
        conv_a_ = std::make_unique<FastConvolver>(p_.weights_nl, p_.grid.m);
        conv_b_ = std::make_unique<FastConvolver>(
            p_.options.fused ? p_.weights_both : p_.weights_lin, p_.grid.m);
    }
}

RhsEvaluator::~RhsEvaluator() = default;

void RhsEvaluator::operator()(std::span<const double> v, std::span<double> out) {
    guard_state(p_, v);
    const size_t m = v.size();
    const Nonlinearity& f = p_.nonlinearity;
    if (p_.options.fused) {
        for (size_t i = 0; i < m; ++i) fv_[i] = f.g(v[i]);
    } else {
        for (size_t i = 0; i < m; ++i) fv_[i] = f(v[i]);
    }
    const ConvolutionWeights& wb =
        p_.options.fused ? p_.weights_both : p_.weights_lin;
    if (p_.resolved_method == ConvolveMethod::Fft) {
        conv_a_->apply(fv_, tmp_);
        conv_b_->apply(v, out);
    } else {
        direct_convolve_span(p_.weights_nl, fv_, tmp_);
        direct_convolve_span(wb, v, out);
    }
    for (size_t i = 0; i < m; ++i) out[i] = -(tmp_[i] + out[i]);
}

GridFunction rhs(const Problem& p, const GridFunction& v) {
    if (v.grid != p.grid)
        throw std::invalid_argument("rhs: state grid does not match problem grid");
    RhsEvaluator eval(p);
    GridFunction out(p.grid);
    eval(v.values, out.values);
    return out;
}

}  // namespace nlkdv

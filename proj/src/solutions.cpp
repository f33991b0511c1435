#include "nlkdv/solutions.hpp"

#include <cmath>

namespace nlkdv {

double sech_guarded(double z) {
    if (std::abs(z) > 350.0) return 0.0;
    return 2.0 / (std::exp(z) + std::exp(-z));
}

double SolitaryWave::operator()(double x, double t) const {
    return solitary_profile(*this, x, t);
}

SolitaryWave solitary_params(SolitaryFamily family) {
    SolitaryWave w;
    w.family = family;
    if (family == SolitaryFamily::RosenauKdV) {
        const double s = std::sqrt(313.0);
        w.amplitude = -35.0 / 24.0 + 35.0 / 312.0 * s;
        w.width = std::sqrt(-26.0 + 2.0 * s) / 24.0;
        w.speed = 0.5 + s / 26.0;
    } else {
        const double s = std::sqrt(457.0);
        w.amplitude = 5.0 / 456.0 * (-25.0 + 13.0 * s);
        w.width = std::sqrt(-13.0 + s) / std::sqrt(288.0);
        w.speed = (241.0 + 13.0 * s) / 266.0;
    }
    return w;
}

double solitary_profile(const SolitaryWave& w, double x, double t) {
    const double s = sech_guarded(w.width * (x - w.speed * t));
    const double s2 = s * s;
    return w.amplitude * s2 * s2;
}

GridFunction initial_data(const SolitaryWave& w, const UniformGrid& grid) {
    return restrict_to_grid([&w](double x) { return solitary_profile(w, x, 0.0); },
                            grid);
}

}  // namespace nlkdv

#pragma once

#include "nlkdv/discrete.hpp"

namespace nlkdv {

enum class SolitaryFamily { RosenauKdV, RosenauBBMKdV };

/// Exact solitary wave u(x,t) = A sech^4(B(x - c t)) for f(u) = u + u^2/2,
/// kappa = 1. Both families have c > 1 (right-moving).
struct SolitaryWave {
    double amplitude = 0;  // A
    double width = 0;      // B
    double speed = 0;      // c
    SolitaryFamily family = SolitaryFamily::RosenauKdV;

    double operator()(double x, double t) const;
};

/// Closed-form parameters:
///   Rosenau-KdV:     A = -35/24 + (35/312) sqrt(313)
///                    B = sqrt(-26 + 2 sqrt(313)) / 24
///                    c = 1/2 + sqrt(313)/26
///   Rosenau-BBM-KdV: A = (5/456)(-25 + 13 sqrt(457))
///                    B = sqrt(-13 + sqrt(457)) / sqrt(288)
///                    c = (241 + 13 sqrt(457)) / 266
SolitaryWave solitary_params(SolitaryFamily family);

double solitary_profile(const SolitaryWave& w, double x, double t);

/// Restriction of the t = 0 profile to the grid.
GridFunction initial_data(const SolitaryWave& w, const UniformGrid& grid);

/// sech computed as 2/(e^z + e^{-z}) with an overflow guard (0 for |z| > 350).
double sech_guarded(double z);

}  // namespace nlkdv

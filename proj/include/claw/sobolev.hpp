#pragma once

// Fractional Sobolev seminorm, cosine-kernel mollification and a Hoelder
// seminorm estimator for piecewise-linear data.

#include "claw/pwl.hpp"

namespace claw {

// eta(s) = (1 + cos(pi s)) / 2 on [-1, 1]; eta_h(s) = eta(s / h) / h.
// Symmetric, unit mass, values in [0, 1], |eta'| <= pi / 2.
struct Mollifier {
    double h = 1.0;
    static double shape(double s);
    static double shape_derivative(double s);
    double operator()(double s) const { return shape(s / h) / h; }
};

// Double integral of |u(x) - u(y)| / |x - y|^{1 + alpha}. Written as
// 2 int_0^inf s^{-1-alpha} ||u(. + s) - u||_1 ds with the inner L^1 norm exact
// and the outer integral by adaptive Gauss-Kronrod after the substitution
// r = s^{1 - alpha}, which removes the singularity at s = 0. Returns +inf if
// the value exceeds 1e12. Throws std::domain_error unless 0 < alpha < 1.
double w_alpha1_seminorm(const PLFunction& u, double alpha, double tol = 1e-6);

// ||u||_1 + seminorm.
double w_alpha1_norm(const PLFunction& u, double alpha, double tol = 1e-6);

// u * eta_h sampled exactly on a grid of step h / 64 over the support widened
// by h, then interpolated. Throws std::domain_error for h <= 0 and
// ResourceError when the grid would exceed 2e7 points.
PLFunction mollify(const PLFunction& u, double h);

// Exact value of (u * eta_h)(x).
double mollify_at(const PLFunction& u, double h, double x);

// Lower estimate of sup |u(x) - u(y)| / |x - y|^sigma: node pairs plus the
// closed form |slope| len^{1 - sigma} on each segment. Exact for a single
// symmetric triangle. +inf if u has a jump. Pairs are exhaustive up to 4096
// nodes and limited to 256 neighbours beyond that.
double holder_seminorm_estimate(const PLFunction& u, double sigma);

}  // namespace claw

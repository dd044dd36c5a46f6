#pragma once

// Entropy solutions of Burgers' equation u_t + (u^2/2)_x = 0 for
// piecewise-linear data, computed from the Lax-Oleinik formula
//   u(t,x) = (x - y*(x)) / t,  y* = argmin_y U(y) + (x-y)^2 / (2t),
// where U is the primitive of the datum.

#include <functional>
#include <span>
#include <vector>

#include "claw/pwl.hpp"

namespace claw {

struct Shock {
    double x = 0.0;
    double left = 0.0;   // u(t, x-)
    double right = 0.0;  // u(t, x+)
    double jump() const { return right - left; }
};

// On [x_lo, x_hi] the minimizer is affine: y*(x_lo) = y_lo, y*(x_hi) = y_hi.
struct MinimizerPiece {
    double x_lo = 0.0, x_hi = 0.0;
    double y_lo = 0.0, y_hi = 0.0;
};

struct SolveResult {
    double t = 0.0;
    PLFunction solution;
    std::vector<Shock> shocks;
    std::vector<MinimizerPiece> minimizer_map;  // bounded pieces only, left to right
};

// Throws std::domain_error for t <= 0.
SolveResult solve_burgers(const PLFunction& u0, double t);

// True iff the characteristic leaving x0 with speed v is still a backward
// characteristic at time t, i.e. x0 minimizes the Lax functional at x0 + v t.
bool survives(const PLFunction& u0, double x0, double v, double t);

// Minimum over y of U(y) - U(x0) - v (y - x0) + (y - x0)^2 / (2t).
// survives() compares this against a scale-aware tolerance.
double survival_margin(const PLFunction& u0, double x0, double v, double t);

struct TracebackReport {
    double tv = 0.0;             // variation of the surviving couples in minimizer-map order
    std::size_t couples = 0;
    std::size_t rejected = 0;    // couples from the minimizer map that failed survives()
};

TracebackReport traceback_tv(const PLFunction& u0, const SolveResult& sol);

struct DecaySample {
    double t = 0.0;
    double tv = 0.0;
    double scaled = 0.0;  // t^{1-alpha} tv
};

struct DecayCurve {
    double alpha = 0.0;
    std::vector<DecaySample> samples;
    double fitted_exponent = 0.0;  // NaN if fewer than two positive samples
};

// Times must lie in (0, 1]; throws std::domain_error otherwise or when empty.
DecayCurve tv_decay_curve(const PLFunction& u0, std::span<const double> times, double alpha);

// Least-squares slope of log y against log x over pairs with y > 0.
double loglog_slope(std::span<const double> xs, std::span<const double> ys);

std::vector<double> dyadic_times(double tmin, double tmax);
std::vector<double> geometric_times(double tmin, double tmax, int count);

struct ConvexFlux {
    std::function<double(double)> value;
    std::function<double(double)> derivative;
    double convexity = 0.0;  // lower bound for f'' on the range, informational
    double lo = -1.0, hi = 1.0;

    static ConvexFlux burgers();
    static ConvexFlux quartic();  // f(u) = u^4
};

// Hopf-Lax solution with a tabulated Legendre transform. Approximate: the L1
// error is O(1/grid_n). Throws std::domain_error if the sampled f' is not
// strictly increasing on the data range, or grid_n < 2.
PLFunction solve_convex_flux(const PLFunction& u0, const ConvexFlux& flux, double t, int grid_n);

// (f*)' via the tabulated inverse of f' on [lo, hi]; exposed for testing.
class LegendreTable {
public:
    LegendreTable(const ConvexFlux& flux, double lo, double hi, int n);
    double conj(double p) const;        // f*(p)
    double conj_prime(double p) const;  // (f*)'(p)

private:
    std::vector<double> v_, fp_, f_;
};

}  // namespace claw

#pragma once

// Upper bounds for the interpolation distance d^lambda(u, 0) and the P_alpha
// "norm" sup_{0 < lambda <= 1} d^lambda(u, 0).
//
// A witness at scale lambda is a bad set V (finite union of intervals) and the
// function f~ obtained from u by affine bridging across V. Its cost is the
// smallest C with TV{f~} <= C lambda^{alpha-1} and meas(V) <= C lambda^alpha.
// Every number produced here is an upper bound; the search family is greedy.

#include <span>
#include <utility>
#include <vector>

#include "claw/pwl.hpp"

namespace claw {

struct PAlphaWitness {
    double lambda = 1.0;
    double alpha = 0.5;
    std::vector<Interval> bad_set;
    PLFunction modified;
    double tv_outside = 0.0;   // TV of the modified function
    double bad_measure = 0.0;
    double cost = 0.0;
};

struct PAlphaEstimate {
    double alpha = 0.5;
    int Q = 0;
    std::vector<PAlphaWitness> witnesses;  // lambda = 2^{-q}, q = 0..Q
    double norm_upper = 0.0;               // max cost over the grid
    // Bound valid for every lambda in (0, 1]: the dyadic grid inflated by
    // 2^{max(alpha, 1-alpha)}, and the range below 2^{-Q} covered by
    // TV{u} lambda^{1-alpha} <= TV{u} 2^{-Q(1-alpha)} using the empty bad set.
    double certified = 0.0;
};

double witness_cost(double tv, double meas, double lambda, double alpha);

// Bridges u across the given intervals and measures the result.
PAlphaWitness make_witness(const PLFunction& u, std::vector<Interval> bad_set, double lambda,
                           double alpha);

// Independent re-check: modified equals u off the bad set (at all nodes of
// both functions and at segment midpoints) and both inequalities hold for the
// stored cost, each with relative slack tol.
bool verify_witness(const PLFunction& u, const PAlphaWitness& w, double tol = 1e-12);

// Requires 0 < lambda <= 1 and 0 < alpha < 1; throws std::domain_error otherwise.
PAlphaWitness dlambda_upper(const PLFunction& u, double lambda, double alpha);

// Smallest prefix of the same density order whose exact cost is <= budget;
// falls back to dlambda_upper when no prefix fits.
PAlphaWitness dlambda_within(const PLFunction& u, double lambda, double alpha, double budget);

// Re-selects every witness of est with dlambda_within(..., est.norm_upper):
// same norm bound, bad sets as small as the bound allows.
PAlphaEstimate lean_estimate(const PLFunction& u, const PAlphaEstimate& est);

// Witness for the best subset among all 2^n subsets of the nonzero
// components; n must not exceed 20. Used to validate the greedy search.
PAlphaWitness dlambda_exhaustive(const PLFunction& u, double lambda, double alpha);

PAlphaEstimate palpha_norm_upper(const PLFunction& u, double alpha, int Q);

// True iff every dyadic lambda = 2^{-q}, q <= Q, has a witness with cost <= C.
bool check_Palpha(const PLFunction& u, double alpha, double C, int Q);

// Lower bound on d^lambda(u, 0): a set of measure m can remove at most
// S m of continuous variation (S = max |slope|) plus all jump variation, so
// C >= (TV - jumps) / (lambda^{alpha-1} + S lambda^alpha).
double dlambda_lower_bound(const PLFunction& u, double lambda, double alpha);
// max over lambda = 2^{-q}, q = 0..Q, of the bound above.
double palpha_lower_bound(const PLFunction& u, double alpha, int Q);

// Witness for f - g built from witnesses of f and g: bad set = union,
// modified = f~ - g~ re-bridged on the union. Its cost never exceeds
// cost(wf) + cost(wg) (up to rounding).
PAlphaWitness combine_witnesses(const PLFunction& f, const PAlphaWitness& wf,
                                const PLFunction& g, const PAlphaWitness& wg);

struct MembershipSeries {
    double sup = 0.0;
    std::vector<std::pair<double, double>> series;  // (t, value)
};

// t^{-alpha} ||S_t u - u||_1 for Burgers' flux.
MembershipSeries dalpha_membership(const PLFunction& u, double alpha, std::span<const double> t_grid);
// t^{1-alpha} TV{S_t u}.
MembershipSeries dalpha_tilde_membership(const PLFunction& u, double alpha,
                                         std::span<const double> t_grid);

// --- symbolic estimates for data made of many identical bumps --------------

// count copies of a bump of the given support length and variation; removing
// one copy by bridging lowers the total variation by gain.
struct BumpClass {
    double count = 0.0;
    double length = 0.0;
    double tv = 0.0;
    double gain = 0.0;
};

struct SymbolicWitness {
    double lambda = 1.0;
    double removed = 0.0;  // number of bumps in the bad set
    double tv_outside = 0.0;
    double bad_measure = 0.0;
    double cost = 0.0;
};

struct SymbolicEstimate {
    double alpha = 0.5;
    int Q = 0;
    std::vector<SymbolicWitness> witnesses;
    double norm_upper = 0.0;
    double certified = 0.0;
};

// Same greedy family as dlambda_upper, with whole bumps removed in order of
// decreasing gain per length. base_tv is variation that cannot be removed.
SymbolicWitness dlambda_symbolic(std::span<const BumpClass> classes, double lambda, double alpha,
                                 double base_tv = 0.0);
// The lower bound above for classes of symmetric triangles (slope tv / length).
double palpha_symbolic_lower_bound(std::span<const BumpClass> classes, double alpha, int Q);

SymbolicEstimate palpha_symbolic(std::span<const BumpClass> classes, double alpha, int Q,
                                 double base_tv = 0.0);

}  // namespace claw

#pragma once

// Multi-level decomposition of a P_alpha datum u = sum_k v_k where level k has
// TV <= C 2^{(1-alpha)k}, support measure <= C 2^{-alpha k}, is one-sided
// 2^k-Lipschitz, and splits into bumps of height <= 2^k times their width.
//
// Pipeline: witness differencing (weak), envelope peeling with diagonal
// regrouping (strong), and splitting into connected components (bumps).

#include <vector>

#include "claw/palpha.hpp"
#include "claw/pwl.hpp"

namespace claw {

struct WeakDecomposition {
    std::vector<PLFunction> levels;          // v_0 .. v_K, summing to u_K
    std::vector<std::vector<Interval>> bad;  // nested bad sets of u_0 .. u_K
    double residual_l1 = 0.0;                // ||u - u_K||_1
};

// u_k bridges u across the union of the witness bad sets at scales 2^{-j},
// k <= j <= K, so the sets shrink with k. Needs est to cover q = 0..K.
WeakDecomposition weak_decompose(const PAlphaEstimate& est, const PLFunction& u, int K);

// p_k^i = (6 / pi^2) 2^{k+i} / (i+2)^2
double peel_rate(int k, int i);

struct StrongDecomposition {
    std::vector<PLFunction> levels;  // regrouped, index q
    double residual_l1 = 0.0;        // mass left in the truncated envelope chains
    // largest TV+ of a chain residual divided by TV+ of the function it came from
    double chain_growth = 0.0;
};

// Peels the positive and negative parts of every v_k with envelopes of rate
// p_k^0, p_k^1, ..., p_k^{i_max} and regroups terms with i + k = q.
StrongDecomposition strong_decompose(const std::vector<PLFunction>& levels, double alpha, int i_max);

struct Bump {
    PLFunction v;
    Interval support;
    double ell = 0.0;
    double h = 0.0;  // 2^k ell
};

// Throws std::domain_error if v is not one-sided 2^k-Lipschitz.
std::vector<Bump> bump_split(const PLFunction& v, int k);

struct DecompositionLevel {
    int k = 0;
    PLFunction v;
    std::vector<Bump> bumps;
};

struct Decomposition {
    double alpha = 0.5;
    double C = 0.0;  // smallest constant for which the level bounds hold
    std::vector<DecompositionLevel> levels;
    double residual_l1 = 0.0;
};

struct DecompositionParams {
    int K = 12;
    int i_max = 24;
    int Q = 12;  // dyadic depth of the P_alpha estimate; raised to K if smaller
};

struct DecompositionRun {
    PAlphaEstimate estimate;
    WeakDecomposition weak;
    StrongDecomposition strong;
    Decomposition result;
};

DecompositionRun decompose(const PLFunction& u, double alpha, const DecompositionParams& params);

struct LevelCheck {
    int k = 0;
    double tv = 0.0;
    double measure = 0.0;
    double bump_length = 0.0;
    double lipschitz_excess = 0.0;  // one_sided_excess(v_k, 2^k)
    double bump_height_excess = 0.0;  // max over bumps of |v| - h, clipped at 0
    bool bumps_disjoint = true;
    double needed_C = 0.0;          // smallest C for this level's size bounds
    bool ok = true;                 // all checks pass with the decomposition's C
};

struct DecompositionReport {
    std::vector<LevelCheck> levels;
    std::vector<int> flagged;     // levels failing with the stored C
    double smallest_C = 0.0;
    double reconstruction_l1 = 0.0;  // ||u - sum of levels||_1
    bool reconstruction_ok = true;   // reconstruction_l1 <= residual_l1 + slack
    bool ok = true;
};

// Re-derives every level bound from the stored functions; tol is the
// absolute slack for the Lipschitz and height checks, relative for sizes.
DecompositionReport verify_theorem_dec(const PLFunction& u, const Decomposition& d,
                                       double tol = 1e-9);

// Bound on norm_upper / C for data given by a valid decomposition:
// 8 / (1 - 2^{-min(alpha, 1-alpha)}).
double converse_factor(double alpha);

}  // namespace claw

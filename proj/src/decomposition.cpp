#include "claw/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "claw/envelopes.hpp"
#include "claw/parallel.hpp"

namespace claw {

WeakDecomposition weak_decompose(const PAlphaEstimate& est, const PLFunction& u, int K) {
    if (K < 0) throw std::domain_error("weak_decompose: K must be >= 0");
    if (static_cast<int>(est.witnesses.size()) < K + 1)
        throw std::domain_error("weak_decompose: estimate must cover q = 0.." + std::to_string(K));
    WeakDecomposition out;
    out.bad.resize(K + 1);
    std::vector<Interval> acc;
    for (int k = K; k >= 0; --k) {
        const auto& b = est.witnesses[k].bad_set;
        acc.insert(acc.end(), b.begin(), b.end());
        acc = merge_intervals(std::move(acc));
        out.bad[k] = acc;
    }
    PLFunction prev;
    for (int k = 0; k <= K; ++k) {
        PLFunction uk = out.bad[k].empty() ? u : bridge(u, out.bad[k]);
        out.levels.push_back(k == 0 ? uk : subtract(uk, prev));
        prev = std::move(uk);
    }
    out.residual_l1 = l1_norm(subtract(u, prev));
    return out;
}

double peel_rate(int k, int i) {
    return 6.0 / (std::numbers::pi * std::numbers::pi) * std::ldexp(1.0, k + i) /
           ((i + 2.0) * (i + 2.0));
}

namespace {

struct Chain {
    std::vector<PLFunction> terms;  // index i
    double residual_l1 = 0.0;
    double growth = 0.0;
};

// Peels f >= 0 with envelopes of increasing rate; lower envelopes for the
// negative part.
Chain peel(const PLFunction& f, int k, int i_max, bool lower) {
    Chain c;
    const double tv_plus = positive_variation(f);
    PLFunction psi = f;
    for (int i = 0; i <= i_max && !psi.is_zero(); ++i) {
        const double p = peel_rate(k, i);
        EnvelopeResult e = lower ? lower_rate_envelope(psi, p) : upper_rate_envelope(psi, p);
        c.terms.resize(i + 1);
        c.terms[i] = std::move(e.envelope);
        psi = std::move(e.residual);
        if (tv_plus > 0.0) c.growth = std::max(c.growth, positive_variation(psi) / tv_plus);
    }
    c.residual_l1 = l1_norm(psi);
    return c;
}

}  // namespace

StrongDecomposition strong_decompose(const std::vector<PLFunction>& levels, double alpha,
                                     int i_max) {
    if (i_max < 1) throw std::domain_error("strong_decompose: i_max must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("strong_decompose: alpha in (0, 1)");
    const int K = static_cast<int>(levels.size()) - 1;
    struct Peeled {
        Chain pos, neg;
    };
    const auto peeled = parallel_map(levels.size(), [&](std::size_t k) {
        const int kk = static_cast<int>(k);
        return Peeled{peel(positive_part(levels[k]), kk, i_max, false),
                      peel(negative_part(levels[k]), kk, i_max, true)};
    });

    StrongDecomposition out;
    const int q_max = std::max(K + i_max, 0);
    std::vector<std::vector<PLFunction>> groups(q_max + 1);
    for (int k = 0; k <= K; ++k) {
        const Peeled& p = peeled[k];
        for (std::size_t i = 0; i < p.pos.terms.size(); ++i) groups[k + i].push_back(p.pos.terms[i]);
        for (std::size_t i = 0; i < p.neg.terms.size(); ++i)
            groups[k + i].push_back(negate(p.neg.terms[i]));
        out.residual_l1 += p.pos.residual_l1 + p.neg.residual_l1;
        out.chain_growth = std::max({out.chain_growth, p.pos.growth, p.neg.growth});
    }
    // drop empty trailing levels
    while (!groups.empty() && groups.back().empty()) groups.pop_back();
    for (const auto& g : groups) out.levels.push_back(g.empty() ? PLFunction{} : sum(g));
    return out;
}

std::vector<Bump> bump_split(const PLFunction& v, int k) {
    const double rate = std::ldexp(1.0, k);
    if (one_sided_excess(v, rate) > 1e-9 * (1.0 + linf_norm(v)))
        throw std::domain_error("bump_split: level " + std::to_string(k) +
                                " is not one-sided 2^k-Lipschitz");
    std::vector<Bump> out;
    for (const Interval& c : nonzero_components(v)) {
        Bump b;
        b.v = restrict_to(v, c);
        b.support = c;
        b.ell = c.length();
        b.h = rate * b.ell;
        out.push_back(std::move(b));
    }
    return out;
}

DecompositionRun decompose(const PLFunction& u, double alpha, const DecompositionParams& params) {
    DecompositionRun run;
    run.estimate = palpha_norm_upper(u, alpha, std::max(params.Q, params.K));
    run.weak = weak_decompose(lean_estimate(u, run.estimate), u, params.K);
    run.strong = strong_decompose(run.weak.levels, alpha, params.i_max);
    Decomposition& d = run.result;
    d.alpha = alpha;
    d.residual_l1 = run.weak.residual_l1 + run.strong.residual_l1;
    for (std::size_t q = 0; q < run.strong.levels.size(); ++q) {
        const int k = static_cast<int>(q);
        DecompositionLevel lv{k, run.strong.levels[q], {}};
        lv.bumps = bump_split(lv.v, k);
        d.levels.push_back(std::move(lv));
    }
    d.C = verify_theorem_dec(u, d).smallest_C;
    return run;
}

DecompositionReport verify_theorem_dec(const PLFunction& u, const Decomposition& d, double tol) {
    DecompositionReport rep;
    const double a = d.alpha;
    std::vector<PLFunction> parts;
    for (const DecompositionLevel& lv : d.levels) {
        LevelCheck c;
        c.k = lv.k;
        c.tv = total_variation(lv.v);
        c.measure = support_measure(lv.v);
        const double rate = std::ldexp(1.0, lv.k);
        c.lipschitz_excess = one_sided_excess(lv.v, rate);
        const double vtol = tol * (1.0 + linf_norm(lv.v));
        double prev_hi = -INFINITY;
        std::vector<Bump> sorted = lv.bumps;
        std::sort(sorted.begin(), sorted.end(),
                  [](const Bump& x, const Bump& y) { return x.support.lo < y.support.lo; });
        for (const Bump& b : sorted) {
            c.bump_length += b.ell;
            if (b.support.lo < prev_hi) c.bumps_disjoint = false;
            prev_hi = b.support.hi;
            c.bump_height_excess = std::max(c.bump_height_excess, linf_norm(b.v) - rate * b.ell);
            if (std::abs(b.h - rate * b.ell) > vtol) c.bump_height_excess = INFINITY;
        }
        if (lv.k == 0) {
            c.needed_C = c.tv;
        } else {
            c.needed_C = std::max({c.tv * std::pow(2.0, -(1.0 - a) * lv.k),
                                   c.measure * std::pow(2.0, a * lv.k),
                                   c.bump_length * std::pow(2.0, a * lv.k)});
        }
        const bool shape_ok = c.lipschitz_excess <= vtol && c.bump_height_excess <= vtol &&
                              c.bumps_disjoint;
        c.ok = shape_ok && c.needed_C <= d.C * (1.0 + tol) + tol;
        if (!c.ok) rep.flagged.push_back(lv.k);
        rep.smallest_C = std::max(rep.smallest_C, shape_ok ? c.needed_C : INFINITY);
        rep.levels.push_back(c);
        parts.push_back(lv.v);
    }
    rep.reconstruction_l1 = l1_norm(subtract(u, sum(parts)));
    rep.reconstruction_ok =
        rep.reconstruction_l1 <= d.residual_l1 * (1.0 + 1e-6) + tol * (1.0 + l1_norm(u));
    rep.ok = rep.flagged.empty() && rep.reconstruction_ok;
    return rep;
}

double converse_factor(double alpha) {
    return 8.0 / (1.0 - std::pow(2.0, -std::min(alpha, 1.0 - alpha)));
}

}  // namespace claw

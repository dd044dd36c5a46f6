#include "claw/palpha.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "claw/lax_oleinik.hpp"
#include "claw/parallel.hpp"

namespace claw {

namespace {

void check_args(double lambda, double alpha) {
    if (!(lambda > 0.0 && lambda <= 1.0)) throw std::domain_error("lambda must lie in (0, 1]");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha must lie in (0, 1)");
}

struct Candidate {
    Interval iv;
    double gain = 0.0;
};

// Variation of u on (-inf, x) and (-inf, x], answered in O(log n).
class CumulativeVariation {
public:
    explicit CumulativeVariation(const PLFunction& u) : u_(u) {
        const auto& n = u.nodes();
        before_.resize(n.size());
        double acc = 0.0;
        for (std::size_t i = 0; i < n.size(); ++i) {
            if (i > 0) acc += std::abs(n[i].left - n[i - 1].right);
            before_[i] = acc;
            acc += std::abs(n[i].jump());
        }
    }

    double open(double x) const { return at(x, false); }
    double closed(double x) const { return at(x, true); }

private:
    double at(double x, bool include_jump) const {
        const auto& n = u_.nodes();
        if (n.empty() || x < n.front().x) return 0.0;
        const auto it = std::upper_bound(n.begin(), n.end(), x,
                                         [](double v, const Node& nd) { return v < nd.x; });
        const std::size_t i = static_cast<std::size_t>(it - n.begin()) - 1;  // n[i].x <= x
        const double after_i = before_[i] + std::abs(n[i].jump());
        if (n[i].x == x) return include_jump ? after_i : before_[i];
        return after_i + std::abs(u_.eval(x) - n[i].right);
    }

    const PLFunction& u_;
    std::vector<double> before_;
};

// Components of {u != 0}, each scored by the variation that bridging it alone
// would remove. Scores of adjacent components need not add up; the search
// re-measures its final candidates exactly.
std::vector<Candidate> candidates(const PLFunction& u) {
    const CumulativeVariation cv(u);
    std::vector<Candidate> out;
    for (const Interval& c : nonzero_components(u)) {
        const double ua = u.eval(c.lo, Side::left), ub = u.eval(c.hi, Side::right);
        const double closed = cv.closed(c.hi) - cv.open(c.lo);
        out.push_back({c, std::max(closed - std::abs(ub - ua), 0.0)});
    }
    return out;
}

double dyadic_inflation(double alpha) { return std::pow(2.0, std::max(alpha, 1.0 - alpha)); }

}  // namespace

double witness_cost(double tv, double meas, double lambda, double alpha) {
    return std::max(tv * std::pow(lambda, 1.0 - alpha), meas * std::pow(lambda, -alpha));
}

PAlphaWitness make_witness(const PLFunction& u, std::vector<Interval> bad_set, double lambda,
                           double alpha) {
    PAlphaWitness w;
    w.lambda = lambda;
    w.alpha = alpha;
    w.bad_set = merge_intervals(std::move(bad_set));
    w.modified = w.bad_set.empty() ? u : bridge(u, w.bad_set);
    w.tv_outside = total_variation(w.modified);
    w.bad_measure = measure(w.bad_set);
    w.cost = witness_cost(w.tv_outside, w.bad_measure, lambda, alpha);
    return w;
}

bool verify_witness(const PLFunction& u, const PAlphaWitness& w, double tol) {
    std::vector<double> xs;
    for (const Node& n : u.nodes()) xs.push_back(n.x);
    for (const Node& n : w.modified.nodes()) xs.push_back(n.x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    const std::size_t n = xs.size();
    for (std::size_t i = 0; i + 1 < n; ++i) xs.push_back(0.5 * (xs[i] + xs[i + 1]));

    auto inside = [&](double x) {
        return std::any_of(w.bad_set.begin(), w.bad_set.end(),
                           [x](const Interval& iv) { return iv.lo < x && x < iv.hi; });
    };
    auto touches_left = [&](double x) {  // x is the right end of a bad interval
        return std::any_of(w.bad_set.begin(), w.bad_set.end(),
                           [x](const Interval& iv) { return iv.hi == x; });
    };
    auto touches_right = [&](double x) {
        return std::any_of(w.bad_set.begin(), w.bad_set.end(),
                           [x](const Interval& iv) { return iv.lo == x; });
    };
    const double vtol = tol * (1.0 + linf_norm(u));
    for (double x : xs) {
        if (inside(x)) continue;
        if (!touches_left(x) &&
            std::abs(u.eval(x, Side::left) - w.modified.eval(x, Side::left)) > vtol)
            return false;
        if (!touches_right(x) &&
            std::abs(u.eval(x, Side::right) - w.modified.eval(x, Side::right)) > vtol)
            return false;
    }
    const double tv = total_variation(w.modified);
    const double meas = measure(w.bad_set);
    const double slack = tol * (1.0 + w.cost);
    return tv * std::pow(w.lambda, 1.0 - w.alpha) <= w.cost + slack &&
           meas * std::pow(w.lambda, -w.alpha) <= w.cost + slack;
}

namespace {

std::vector<Candidate> density_order(const PLFunction& u) {
    std::vector<Candidate> cs = candidates(u);
    std::stable_sort(cs.begin(), cs.end(), [](const Candidate& a, const Candidate& b) {
        return a.gain / a.iv.length() > b.gain / b.iv.length();
    });
    return cs;
}

PAlphaWitness prefix_witness(const PLFunction& u, const std::vector<Candidate>& cs, std::size_t m,
                             double lambda, double alpha) {
    std::vector<Interval> bad;
    for (std::size_t i = 0; i < m; ++i) bad.push_back(cs[i].iv);
    return make_witness(u, std::move(bad), lambda, alpha);
}

}  // namespace

PAlphaWitness dlambda_upper(const PLFunction& u, double lambda, double alpha) {
    check_args(lambda, alpha);
    const std::vector<Candidate> cs = density_order(u);
    const double total = total_variation(u);
    const double a1 = std::pow(lambda, 1.0 - alpha), a0 = std::pow(lambda, -alpha);

    // Prefix scan of the density order.
    std::size_t best_m = 0;
    double best = total * a1;
    double gained = 0.0, meas = 0.0;
    for (std::size_t m = 1; m <= cs.size(); ++m) {
        gained += cs[m - 1].gain;
        meas += cs[m - 1].iv.length();
        const double est = std::max(std::max(total - gained, 0.0) * a1, meas * a0);
        if (est < best) best = est, best_m = m;
    }

    PAlphaWitness w = prefix_witness(u, cs, best_m, lambda, alpha);
    for (std::size_t m : {best_m == 0 ? best_m : best_m - 1, best_m + 1, std::size_t{0}}) {
        if (m > cs.size() || m == best_m) continue;
        PAlphaWitness alt = prefix_witness(u, cs, m, lambda, alpha);
        if (alt.cost < w.cost) w = std::move(alt);
    }
    return w;
}

PAlphaWitness dlambda_within(const PLFunction& u, double lambda, double alpha, double budget) {
    check_args(lambda, alpha);
    const std::vector<Candidate> cs = density_order(u);
    const double total = total_variation(u);
    const double a1 = std::pow(lambda, 1.0 - alpha), a0 = std::pow(lambda, -alpha);
    double gained = 0.0, meas = 0.0;
    for (std::size_t m = 0; m <= cs.size(); ++m) {
        if (m > 0) gained += cs[m - 1].gain, meas += cs[m - 1].iv.length();
        if (meas * a0 > budget * (1.0 + 1e-9)) break;  // only grows from here
        if (std::max(total - gained, 0.0) * a1 > budget * (1.0 + 1e-9)) continue;
        PAlphaWitness w = prefix_witness(u, cs, m, lambda, alpha);
        if (w.cost <= budget) return w;
    }
    return dlambda_upper(u, lambda, alpha);
}

PAlphaEstimate lean_estimate(const PLFunction& u, const PAlphaEstimate& est) {
    PAlphaEstimate out = est;
    out.witnesses = parallel_map(est.witnesses.size(), [&](std::size_t q) {
        const PAlphaWitness& w = est.witnesses[q];
        return dlambda_within(u, w.lambda, est.alpha, est.norm_upper);
    });
    return out;
}

PAlphaWitness dlambda_exhaustive(const PLFunction& u, double lambda, double alpha) {
    check_args(lambda, alpha);
    const std::vector<Candidate> cs = candidates(u);
    if (cs.size() > 20) throw std::invalid_argument("dlambda_exhaustive: too many components");
    PAlphaWitness best = make_witness(u, {}, lambda, alpha);
    for (unsigned mask = 1; mask < (1u << cs.size()); ++mask) {
        std::vector<Interval> bad;
        for (std::size_t i = 0; i < cs.size(); ++i)
            if (mask & (1u << i)) bad.push_back(cs[i].iv);
        PAlphaWitness w = make_witness(u, std::move(bad), lambda, alpha);
        if (w.cost < best.cost) best = std::move(w);
    }
    return best;
}

PAlphaEstimate palpha_norm_upper(const PLFunction& u, double alpha, int Q) {
    if (Q < 0) throw std::domain_error("palpha_norm_upper: Q must be >= 0");
    PAlphaEstimate est;
    est.alpha = alpha;
    est.Q = Q;
    est.witnesses = parallel_map(static_cast<std::size_t>(Q) + 1, [&](std::size_t q) {
        return dlambda_upper(u, std::ldexp(1.0, -static_cast<int>(q)), alpha);
    });
    for (const auto& w : est.witnesses) est.norm_upper = std::max(est.norm_upper, w.cost);
    est.certified = std::max(dyadic_inflation(alpha) * est.norm_upper,
                             total_variation(u) * std::pow(2.0, -Q * (1.0 - alpha)));
    return est;
}

bool check_Palpha(const PLFunction& u, double alpha, double C, int Q) {
    if (!(C > 0.0)) throw std::domain_error("check_Palpha: C must be positive");
    const PAlphaEstimate est = palpha_norm_upper(u, alpha, Q);
    return std::all_of(est.witnesses.begin(), est.witnesses.end(),
                       [C](const PAlphaWitness& w) { return w.cost <= C * (1.0 + 1e-12); });
}

namespace {

double lower_bound_from(double tv, double slope, double lambda, double alpha) {
    return tv / (std::pow(lambda, alpha - 1.0) + slope * std::pow(lambda, alpha));
}

}  // namespace

double dlambda_lower_bound(const PLFunction& u, double lambda, double alpha) {
    check_args(lambda, alpha);
    double jumps = 0.0;
    for (const Node& n : u.nodes()) jumps += std::abs(n.jump());
    const double smooth = std::max(total_variation(u) - jumps, 0.0);
    return lower_bound_from(smooth, max_abs_slope(u), lambda, alpha);
}

double palpha_lower_bound(const PLFunction& u, double alpha, int Q) {
    double best = 0.0;
    for (int q = 0; q <= Q; ++q)
        best = std::max(best, dlambda_lower_bound(u, std::ldexp(1.0, -q), alpha));
    return best;
}

PAlphaWitness combine_witnesses(const PLFunction& f, const PAlphaWitness& wf,
                                const PLFunction& g, const PAlphaWitness& wg) {
    if (wf.lambda != wg.lambda || wf.alpha != wg.alpha)
        throw std::invalid_argument("combine_witnesses: witnesses at different scales");
    std::vector<Interval> bad = wf.bad_set;
    bad.insert(bad.end(), wg.bad_set.begin(), wg.bad_set.end());
    return make_witness(subtract(f, g), std::move(bad), wf.lambda, wf.alpha);
}

MembershipSeries dalpha_membership(const PLFunction& u, double alpha,
                                   std::span<const double> t_grid) {
    MembershipSeries out;
    const auto vals = parallel_map(t_grid.size(), [&](std::size_t i) {
        const double t = t_grid[i];
        if (!(t > 0.0 && t <= 1.0)) throw std::domain_error("t_grid must lie in (0, 1]");
        const PLFunction s = solve_burgers(u, t).solution;
        return std::pow(t, -alpha) * l1_norm(subtract(s, u));
    });
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        out.series.emplace_back(t_grid[i], vals[i]);
        out.sup = std::max(out.sup, vals[i]);
    }
    return out;
}

MembershipSeries dalpha_tilde_membership(const PLFunction& u, double alpha,
                                         std::span<const double> t_grid) {
    MembershipSeries out;
    const auto vals = parallel_map(t_grid.size(), [&](std::size_t i) {
        const double t = t_grid[i];
        if (!(t > 0.0 && t <= 1.0)) throw std::domain_error("t_grid must lie in (0, 1]");
        return std::pow(t, 1.0 - alpha) * total_variation(solve_burgers(u, t).solution);
    });
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        out.series.emplace_back(t_grid[i], vals[i]);
        out.sup = std::max(out.sup, vals[i]);
    }
    return out;
}

SymbolicWitness dlambda_symbolic(std::span<const BumpClass> classes, double lambda, double alpha,
                                 double base_tv) {
    check_args(lambda, alpha);
    std::vector<BumpClass> cs;
    for (const BumpClass& c : classes)
        if (c.count > 0.0 && c.gain > 0.0 && c.length > 0.0) cs.push_back(c);
    std::stable_sort(cs.begin(), cs.end(), [](const BumpClass& a, const BumpClass& b) {
        return a.gain / a.length > b.gain / b.length;
    });
    double total = base_tv;
    for (const BumpClass& c : classes) total += c.count * c.tv;
    const double a1 = std::pow(lambda, 1.0 - alpha), a0 = std::pow(lambda, -alpha);

    SymbolicWitness best{lambda, 0.0, total, 0.0, total * a1};
    double removed = 0.0, gained = 0.0, meas = 0.0;
    auto consider = [&](const BumpClass& c, double m) {
        const double tv = std::max(total - gained - m * c.gain, 0.0);
        const double ms = meas + m * c.length;
        const double cost = std::max(tv * a1, ms * a0);
        if (cost < best.cost) best = {lambda, removed + m, tv, ms, cost};
    };
    for (const BumpClass& c : cs) {
        // within a class the two terms cross at m*; whole bumps only
        const double A = (total - gained) * a1, B = meas * a0;
        const double m_star = (A - B) / (c.gain * a1 + c.length * a0);
        const double lo = std::clamp(std::floor(m_star), 0.0, c.count);
        const double hi = std::clamp(std::ceil(m_star), 0.0, c.count);
        consider(c, lo);
        consider(c, hi);
        consider(c, c.count);
        removed += c.count;
        gained += c.count * c.gain;
        meas += c.count * c.length;
    }
    return best;
}

double palpha_symbolic_lower_bound(std::span<const BumpClass> classes, double alpha, int Q) {
    double tv = 0.0, slope = 0.0;
    for (const BumpClass& c : classes) {
        tv += c.count * c.tv;
        if (c.count > 0.0 && c.length > 0.0) slope = std::max(slope, c.tv / c.length);
    }
    double best = 0.0;
    for (int q = 0; q <= Q; ++q)
        best = std::max(best, lower_bound_from(tv, slope, std::ldexp(1.0, -q), alpha));
    return best;
}

SymbolicEstimate palpha_symbolic(std::span<const BumpClass> classes, double alpha, int Q,
                                 double base_tv) {
    if (Q < 0) throw std::domain_error("palpha_symbolic: Q must be >= 0");
    SymbolicEstimate est;
    est.alpha = alpha;
    est.Q = Q;
    double total = base_tv;
    for (const BumpClass& c : classes) total += c.count * c.tv;
    for (int q = 0; q <= Q; ++q) {
        est.witnesses.push_back(dlambda_symbolic(classes, std::ldexp(1.0, -q), alpha, base_tv));
        est.norm_upper = std::max(est.norm_upper, est.witnesses.back().cost);
    }
    est.certified = std::max(dyadic_inflation(alpha) * est.norm_upper,
                             total * std::pow(2.0, -Q * (1.0 - alpha)));
    return est;
}

}  // namespace claw

#include "claw/lax_oleinik.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "claw/parallel.hpp"

namespace claw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// A quadratic candidate for the Lax functional's minimum, valid on [lo, hi]:
//   value(x) = c0 + c1 w + c2 w^2,  w = x - xr,
//   foot(x)  = y0 + ys w.
struct Candidate {
    double xr = 0.0, c0 = 0.0, c1 = 0.0, c2 = 0.0;
    double y0 = 0.0, ys = 0.0;
    double lo = -kInf, hi = kInf;

    double value(double x) const {
        const double w = x - xr;
        return c0 + w * (c1 + w * c2);
    }
    double slope(double x) const { return c1 + 2.0 * c2 * (x - xr); }
    double foot(double x) const { return y0 + ys * (x - xr); }
};

struct EnvPiece {
    double lo, hi;
    int cand;
};
using Envelope = std::vector<EnvPiece>;

void push_piece(Envelope& env, double lo, double hi, int cand) {
    if (!env.empty() && env.back().cand == cand && env.back().hi == lo) {
        env.back().hi = hi;
        return;
    }
    env.push_back({lo, hi, cand});
}

// Real roots of A + B z + C z^2, where A carries an absolute error of about
// noise. Nearly tangential contacts collapse to a double root.
int quadratic_roots(double A, double B, double C, double noise, double r[2]) {
    if (C == 0.0) {
        if (B == 0.0) return 0;
        r[0] = -A / B;
        return 1;
    }
    const double disc = B * B - 4.0 * A * C;
    const double guard = 4.0 * std::abs(C) * noise + 64.0 * std::numeric_limits<double>::epsilon() * B * B;
    if (disc < -guard) return 0;
    if (disc <= guard) {
        r[0] = -B / (2.0 * C);
        return 1;
    }
    const double q = -0.5 * (B + std::copysign(std::sqrt(disc), B));
    if (q == 0.0) {
        r[0] = 0.0;
        return 1;
    }
    r[0] = q / C;
    r[1] = A / q;
    return 2;
}

double sample_point(double lo, double hi) {
    if (std::isfinite(lo) && std::isfinite(hi)) return 0.5 * (lo + hi);
    if (std::isfinite(hi)) return hi - std::max(1.0, std::abs(hi));
    if (std::isfinite(lo)) return lo + std::max(1.0, std::abs(lo));
    return 0.0;
}

// Lower of two candidates on [lo, hi], split at their crossings.
void resolve(const std::vector<Candidate>& cs, double lo, double hi, int ia, int ib,
             Envelope& out) {
    const Candidate& a = cs[static_cast<std::size_t>(ia)];
    const Candidate& b = cs[static_cast<std::size_t>(ib)];
    double m = 0.0;
    if (std::isfinite(lo) && std::isfinite(hi))
        m = 0.5 * (lo + hi);
    else if (std::isfinite(lo))
        m = lo;
    else if (std::isfinite(hi))
        m = hi;
    const double va = a.value(m), vb = b.value(m);
    const double A = va - vb;
    const double noise = 16.0 * std::numeric_limits<double>::epsilon() * (std::abs(va) + std::abs(vb));
    const double B = a.slope(m) - b.slope(m);
    const double C = a.c2 - b.c2;

    double cuts[4];
    int nc = 0;
    cuts[nc++] = lo;
    double r[2];
    const int nr = quadratic_roots(A, B, C, noise, r);
    double xs[2];
    int nx = 0;
    for (int i = 0; i < nr; ++i) {
        const double x = m + r[i];
        if (x > lo && x < hi) xs[nx++] = x;
    }
    if (nx == 2 && xs[0] > xs[1]) std::swap(xs[0], xs[1]);
    for (int i = 0; i < nx; ++i)
        if (xs[i] > cuts[nc - 1]) cuts[nc++] = xs[i];
    if (hi > cuts[nc - 1]) cuts[nc++] = hi;

    for (int i = 0; i + 1 < nc; ++i) {
        const double z = sample_point(cuts[i], cuts[i + 1]) - m;
        const double d = A + z * (B + z * C);
        push_piece(out, cuts[i], cuts[i + 1], d <= 0.0 ? ia : ib);
    }
}

Envelope merge(const std::vector<Candidate>& cs, const Envelope& ea, const Envelope& eb) {
    if (ea.empty()) return eb;
    if (eb.empty()) return ea;
    std::vector<double> cuts;
    cuts.reserve(2 * (ea.size() + eb.size()));
    for (const auto& p : ea) {
        cuts.push_back(p.lo);
        cuts.push_back(p.hi);
    }
    for (const auto& p : eb) {
        cuts.push_back(p.lo);
        cuts.push_back(p.hi);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    Envelope out;
    out.reserve(ea.size() + eb.size());
    std::size_t ia = 0, ib = 0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double lo = cuts[k], hi = cuts[k + 1];
        while (ia < ea.size() && ea[ia].hi <= lo) ++ia;
        while (ib < eb.size() && eb[ib].hi <= lo) ++ib;
        const int ca = (ia < ea.size() && ea[ia].lo <= lo) ? ea[ia].cand : -1;
        const int cb = (ib < eb.size() && eb[ib].lo <= lo) ? eb[ib].cand : -1;
        if (ca < 0 && cb < 0) continue;
        if (ca < 0)
            push_piece(out, lo, hi, cb);
        else if (cb < 0)
            push_piece(out, lo, hi, ca);
        else
            resolve(cs, lo, hi, ca, cb, out);
    }
    return out;
}

Envelope lower_envelope(const std::vector<Candidate>& cs, std::size_t first, std::size_t last) {
    if (last - first == 1) {
        const Candidate& c = cs[first];
        if (!(c.hi > c.lo)) return {};
        return {{c.lo, c.hi, static_cast<int>(first)}};
    }
    const std::size_t mid = first + (last - first) / 2;
    return merge(cs, lower_envelope(cs, first, mid), lower_envelope(cs, mid, last));
}

std::vector<Candidate> candidates(const PLFunction& u0, double t) {
    const auto& n = u0.nodes();
    std::vector<Candidate> cs;
    cs.reserve(2 * n.size() + 1);

    Candidate tail;
    tail.ys = 1.0;
    tail.hi = n.front().x;
    cs.push_back(tail);

    double U = 0.0;
    for (std::size_t i = 0; i < n.size(); ++i) {
        Candidate p;
        p.xr = n[i].x;
        p.c0 = U;
        p.c2 = 0.5 / t;
        p.y0 = n[i].x;
        cs.push_back(p);
        if (i + 1 == n.size()) break;

        const double len = n[i + 1].x - n[i].x;
        const double a = n[i].right;
        const double b = (n[i + 1].left - a) / len;
        const double D = 1.0 + t * b;
        if (D > 0.0) {
            Candidate s;
            s.xr = n[i].x + t * a;
            s.c0 = U + 0.5 * t * a * a;
            s.c1 = a;
            s.c2 = 0.5 * b / D;
            s.y0 = n[i].x;
            s.ys = 1.0 / D;
            s.lo = s.xr;
            s.hi = n[i + 1].x + t * n[i + 1].left;
            cs.push_back(s);
        }
        U += 0.5 * len * (a + n[i + 1].left);
    }

    tail.c0 = U;
    tail.lo = n.back().x;
    tail.hi = kInf;
    cs.push_back(tail);
    return cs;
}

}  // namespace

SolveResult solve_burgers(const PLFunction& u0, double t) {
    if (!(t > 0.0)) throw std::domain_error("solve_burgers: t must be > 0");
    SolveResult res;
    res.t = t;
    if (u0.size() < 2 || u0.is_zero()) return res;

    const std::vector<Candidate> cs = candidates(u0, t);
    const Envelope raw = lower_envelope(cs, 0, cs.size());
    const double shock_tol = 1e-10 * u0.width();

    // Rounding leaves slivers where three candidates cross almost at one
    // point; absorb them into their neighbours.
    double vmax = 0.0;
    for (const Node& n : u0.nodes()) vmax = std::max({vmax, std::abs(n.left), std::abs(n.right)});
    const double sliver = 1e-12 * (u0.width() + t * vmax);
    Envelope env;
    std::vector<double> cuts;  // cuts[k] separates env[k] and env[k+1]
    double run_lo = kInf, run_hi = kInf;  // current run of dropped slivers
    for (const EnvPiece& p : raw) {
        if (!env.empty() && p.hi - p.lo <= sliver) {
            if (run_lo == kInf) run_lo = p.lo;
            run_hi = p.hi;
            continue;
        }
        if (!env.empty() && env.back().cand != p.cand) {
            cuts.push_back(run_lo == kInf ? p.lo : 0.5 * (run_lo + run_hi));
            env.push_back(p);
        } else if (env.empty()) {
            env.push_back(p);
        }
        run_lo = run_hi = kInf;
    }
    env.back().hi = raw.back().hi;
    for (std::size_t k = 0; k + 1 < env.size(); ++k) {
        env[k].hi = cuts[k];
        env[k + 1].lo = cuts[k];
    }

    std::vector<Node> nodes;
    nodes.reserve(env.size());
    for (std::size_t k = 0; k + 1 < env.size(); ++k) {
        const double X = cuts[k];
        const Candidate& L = cs[static_cast<std::size_t>(env[k].cand)];
        const Candidate& R = cs[static_cast<std::size_t>(env[k + 1].cand)];
        const double uL = L.slope(X), uR = R.slope(X);
        if (R.foot(X) - L.foot(X) > shock_tol) {
            nodes.push_back({X, uL, uR});
        } else {
            const double v = (k == 0 || k + 2 == env.size()) ? 0.0 : 0.5 * (uL + uR);
            nodes.push_back({X, v, v});
        }
    }
    for (const EnvPiece& p : env) {
        const Candidate& c = cs[static_cast<std::size_t>(p.cand)];
        const double lo = std::isfinite(p.lo) ? p.lo : p.hi;
        const double hi = std::isfinite(p.hi) ? p.hi : p.lo;
        res.minimizer_map.push_back({lo, hi, c.foot(lo), c.foot(hi)});
    }
    if (!nodes.empty()) {
        nodes.front().left = 0.0;
        nodes.back().right = 0.0;
    }
    // values are (x - y) / t, so rounding leaves residues of order eps |x| / t
    double reach = 0.0;
    for (const Node& n : nodes) reach = std::max(reach, std::abs(n.x));
    const double zero_tol =
        16.0 * std::numeric_limits<double>::epsilon() * (reach / t + linf_norm(u0));
    res.solution = normalize(PLFunction(std::move(nodes)), -1.0, zero_tol);
    for (const Node& n : res.solution.nodes())
        if (n.left != n.right) res.shocks.push_back({n.x, n.left, n.right});
    return res;
}

double survival_margin(const PLFunction& u0, double x0, double v, double t) {
    if (!(t > 0.0)) throw std::domain_error("survival_margin: t must be > 0");
    const PWQuadratic U = potential(u0);
    const double Ux0 = U(x0);
    const double k2 = 0.5 / t;

    // min over z in [z0, z1] of the margin written around base point p, where U
    // is locally c0 + c1 z + c2 z^2.
    auto piece_min = [&](double p, double c0, double c1, double c2, double z0, double z1) {
        const double d = p - x0;
        const double A = c0 - Ux0 - v * d + k2 * d * d;
        const double B = c1 - v + d / t;
        const double C = c2 + k2;
        auto g = [&](double z) { return A + z * (B + z * C); };
        double m = kInf;
        if (std::isfinite(z0)) m = std::min(m, g(z0));
        if (std::isfinite(z1)) m = std::min(m, g(z1));
        if (C > 0.0) {
            const double zv = -B / (2.0 * C);
            if (zv > z0 && zv < z1) m = std::min(m, g(zv));
        }
        return m;
    };

    if (u0.size() < 2) return piece_min(0.0, 0.0, 0.0, 0.0, -kInf, kInf);
    const auto& xs = U.breakpoints();
    const auto& ps = U.pieces();
    double m = piece_min(xs.front(), 0.0, 0.0, 0.0, -kInf, 0.0);
    for (std::size_t i = 0; i < ps.size(); ++i)
        m = std::min(m, piece_min(xs[i], ps[i].c0, ps[i].c1, ps[i].c2, 0.0, xs[i + 1] - xs[i]));
    m = std::min(m, piece_min(xs.back(), U.right_tail(), 0.0, 0.0, 0.0, kInf));
    return m;
}

bool survives(const PLFunction& u0, double x0, double v, double t) {
    const double W = u0.width() + std::abs(v) * t;
    double scale_u = 0.0;
    double acc = 0.0;
    const auto& n = u0.nodes();
    for (std::size_t i = 0; i + 1 < n.size(); ++i) {
        acc += 0.5 * (n[i + 1].x - n[i].x) * (n[i].right + n[i + 1].left);
        scale_u = std::max(scale_u, std::abs(acc));
    }
    const double tol = 1e-11 * (1.0 + scale_u + std::abs(v) * W + W * W / (2.0 * t));
    return survival_margin(u0, x0, v, t) >= -tol;
}

TracebackReport traceback_tv(const PLFunction& u0, const SolveResult& sol) {
    struct Couple {
        double foot, v;
    };
    std::vector<Couple> couples;
    TracebackReport rep;
    for (const MinimizerPiece& p : sol.minimizer_map) {
        for (const auto& [x, y] : {std::pair{p.x_lo, p.y_lo}, std::pair{p.x_hi, p.y_hi}}) {
            const double v = (x - y) / sol.t;
            if (survives(u0, y, v, sol.t))
                couples.push_back({y, v});
            else
                ++rep.rejected;
        }
    }
    // The map is monotone in x, so its order is the (foot, value) order;
    // re-sorting by foot would let rounding in coincident feet reorder a fan.
    rep.couples = couples.size();
    if (couples.empty()) return rep;
    rep.tv = std::abs(couples.front().v) + std::abs(couples.back().v);
    for (std::size_t i = 1; i < couples.size(); ++i) rep.tv += std::abs(couples[i].v - couples[i - 1].v);
    return rep;
}

double loglog_slope(std::span<const double> xs, std::span<const double> ys) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
        if (!(xs[i] > 0.0 && ys[i] > 0.0)) continue;
        const double lx = std::log(xs[i]), ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 2) return std::numeric_limits<double>::quiet_NaN();
    const double den = n * sxx - sx * sx;
    if (den == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return (n * sxy - sx * sy) / den;
}

std::vector<double> dyadic_times(double tmin, double tmax) {
    if (!(tmin > 0.0 && tmin <= tmax)) throw std::domain_error("dyadic_times: need 0 < tmin <= tmax");
    const int qlo = static_cast<int>(std::ceil(-std::log2(tmax) - 1e-9));
    const int qhi = static_cast<int>(std::floor(-std::log2(tmin) + 1e-9));
    std::vector<double> ts;
    for (int q = qhi; q >= qlo; --q) ts.push_back(std::ldexp(1.0, -q));
    return ts;
}

std::vector<double> geometric_times(double tmin, double tmax, int count) {
    if (!(tmin > 0.0 && tmin <= tmax) || count < 1)
        throw std::domain_error("geometric_times: need 0 < tmin <= tmax and count >= 1");
    std::vector<double> ts;
    if (count == 1) return {tmax};
    const double r = std::log(tmax / tmin) / (count - 1);
    for (int i = 0; i < count; ++i) ts.push_back(tmin * std::exp(r * i));
    ts.back() = tmax;
    return ts;
}

DecayCurve tv_decay_curve(const PLFunction& u0, std::span<const double> times, double alpha) {
    if (times.empty()) throw std::domain_error("tv_decay_curve: empty time list");
    for (double t : times)
        if (!(t > 0.0 && t <= 1.0)) throw std::domain_error("tv_decay_curve: times must lie in (0,1]");
    DecayCurve curve;
    curve.alpha = alpha;
    const auto tvs = parallel_map(times.size(), [&](std::size_t i) {
        return total_variation(solve_burgers(u0, times[i]).solution);
    });
    std::vector<double> ts(times.begin(), times.end());
    for (std::size_t i = 0; i < times.size(); ++i)
        curve.samples.push_back({times[i], tvs[i], std::pow(times[i], 1.0 - alpha) * tvs[i]});
    curve.fitted_exponent = loglog_slope(ts, tvs);
    return curve;
}

// --- general convex flux --------------------------------------------------

ConvexFlux ConvexFlux::burgers() {
    return {[](double u) { return 0.5 * u * u; }, [](double u) { return u; }, 1.0, -1e300, 1e300};
}

ConvexFlux ConvexFlux::quartic() {
    return {[](double u) { return u * u * u * u; }, [](double u) { return 4.0 * u * u * u; }, 0.0,
            -1e300, 1e300};
}

LegendreTable::LegendreTable(const ConvexFlux& flux, double lo, double hi, int n) {
    if (n < 2 || !(hi > lo)) throw std::domain_error("LegendreTable: empty range");
    v_.resize(static_cast<std::size_t>(n) + 1);
    fp_.resize(v_.size());
    f_.resize(v_.size());
    for (std::size_t i = 0; i < v_.size(); ++i) {
        v_[i] = lo + (hi - lo) * static_cast<double>(i) / n;
        fp_[i] = flux.derivative(v_[i]);
        f_[i] = flux.value(v_[i]);
        if (i > 0 && !(fp_[i] > fp_[i - 1]))
            throw std::domain_error("solve_convex_flux: flux is not strictly convex on the data range");
    }
}

double LegendreTable::conj_prime(double p) const {
    if (p <= fp_.front()) return v_.front();
    if (p >= fp_.back()) return v_.back();
    const auto it = std::upper_bound(fp_.begin(), fp_.end(), p);
    const std::size_t i = static_cast<std::size_t>(it - fp_.begin()) - 1;
    const double s = (p - fp_[i]) / (fp_[i + 1] - fp_[i]);
    return v_[i] + s * (v_[i + 1] - v_[i]);
}

double LegendreTable::conj(double p) const {
    if (p <= fp_.front()) return p * v_.front() - f_.front();
    if (p >= fp_.back()) return p * v_.back() - f_.back();
    const auto it = std::upper_bound(fp_.begin(), fp_.end(), p);
    const std::size_t i = static_cast<std::size_t>(it - fp_.begin()) - 1;
    const double s = (p - fp_[i]) / (fp_[i + 1] - fp_[i]);
    const double v = v_[i] + s * (v_[i + 1] - v_[i]);
    const double f = f_[i] + s * (f_[i + 1] - f_[i]);
    return p * v - f;
}

PLFunction solve_convex_flux(const PLFunction& u0, const ConvexFlux& flux, double t, int grid_n) {
    if (!(t > 0.0)) throw std::domain_error("solve_convex_flux: t must be > 0");
    if (grid_n < 2) throw std::domain_error("solve_convex_flux: grid_n must be >= 2");
    if (u0.size() < 2 || u0.is_zero()) return {};

    double umin = 0.0, umax = 0.0;
    for (const Node& n : u0.nodes()) umin = std::min({umin, n.left, n.right}), umax = std::max({umax, n.left, n.right});
    const LegendreTable table(flux, umin, umax, 1 << 16);
    const double f0 = flux.derivative(0.0);

    const Interval hull = u0.support_hull();
    const double xlo = hull.lo + t * flux.derivative(umin);
    const double xhi = hull.hi + t * flux.derivative(umax);
    const PWQuadratic U = potential(u0);
    const double mass = U.right_tail();

    const int n = grid_n;
    std::vector<double> ys(static_cast<std::size_t>(n) + 1), Us(ys.size());
    for (std::size_t i = 0; i < ys.size(); ++i) {
        ys[i] = hull.lo + hull.length() * static_cast<double>(i) / n;
        Us[i] = U(ys[i]);
    }
    auto phi = [&](double x, double y) { return U(y) + t * table.conj((x - y) / t); };

    std::vector<double> xs(static_cast<std::size_t>(n) + 1);
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = xlo + (xhi - xlo) * static_cast<double>(i) / n;

    const auto us = parallel_map(xs.size(), [&](std::size_t k) {
        const double x = xs[k];
        double best = kInf;
        std::size_t arg = 0;
        for (std::size_t i = 0; i < ys.size(); ++i) {
            const double val = Us[i] + t * table.conj((x - ys[i]) / t);
            if (val < best) best = val, arg = i;
        }
        const double ytail = x - t * f0;
        if (ytail <= hull.lo || ytail >= hull.hi) {
            const double val = (ytail <= hull.lo ? 0.0 : mass) + t * table.conj(f0);
            if (val <= best) return 0.0;
        }
        // golden-section refinement in the neighbouring grid cells
        double a = ys[arg == 0 ? 0 : arg - 1];
        double b = ys[std::min(arg + 1, ys.size() - 1)];
        const double g = 0.5 * (std::sqrt(5.0) - 1.0);
        double c = b - g * (b - a), d = a + g * (b - a);
        double fc = phi(x, c), fd = phi(x, d);
        for (int it = 0; it < 60 && b - a > 1e-14 * (1.0 + std::abs(a)); ++it) {
            if (fc < fd) {
                b = d, d = c, fd = fc;
                c = b - g * (b - a), fc = phi(x, c);
            } else {
                a = c, c = d, fc = fd;
                d = a + g * (b - a), fd = phi(x, d);
            }
        }
        double ystar = 0.5 * (a + b);
        if (phi(x, ystar) > best) ystar = ys[arg];
        return table.conj_prime((x - ystar) / t);
    });

    std::vector<double> vals(us.begin(), us.end());
    vals.front() = 0.0;
    vals.back() = 0.0;
    return normalize(PLFunction::from_samples(xs, vals));
}

}  // namespace claw

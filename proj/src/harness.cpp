#include "claw/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "claw/constructions.hpp"
#include "claw/decomposition.hpp"
#include "claw/json_io.hpp"
#include "claw/lax_oleinik.hpp"
#include "claw/palpha.hpp"
#include "claw/sobolev.hpp"

namespace claw {

namespace {

constexpr const char* kVersion = "1.0.0";

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string short_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

// Fills defaults and rejects unknown keys or values of the wrong type.
class Params {
public:
    Params(const nlohmann::json& given, const std::string& exp) : given_(given), exp_(exp) {
        if (!given_.is_null() && !given_.is_object())
            throw UsageError(exp_ + ": parameters must be a JSON object");
    }

    double num(const std::string& key, double def) {
        const nlohmann::json v = take(key, def);
        if (!v.is_number()) throw UsageError(exp_ + ": '" + key + "' must be a number");
        return v.get<double>();
    }
    int integer(const std::string& key, int def) {
        const nlohmann::json v = take(key, def);
        if (!v.is_number_integer()) throw UsageError(exp_ + ": '" + key + "' must be an integer");
        return v.get<int>();
    }
    std::string str(const std::string& key, const std::string& def) {
        const nlohmann::json v = take(key, def);
        if (!v.is_string()) throw UsageError(exp_ + ": '" + key + "' must be a string");
        return v.get<std::string>();
    }
    std::vector<double> nums(const std::string& key, std::vector<double> def) {
        const nlohmann::json v = take(key, def);
        if (!v.is_array() || v.empty()) throw UsageError(exp_ + ": '" + key + "' must be a non-empty array");
        std::vector<double> out;
        for (const auto& e : v) {
            if (!e.is_number()) throw UsageError(exp_ + ": '" + key + "' must hold numbers");
            out.push_back(e.get<double>());
        }
        return out;
    }
    void require(bool ok, const std::string& what) const {
        if (!ok) throw UsageError(exp_ + ": " + what);
    }
    // Call after every key was read.
    nlohmann::json finish() const {
        if (given_.is_object())
            for (const auto& [k, v] : given_.items())
                if (!used_.contains(k)) throw UsageError(exp_ + ": unknown parameter '" + k + "'");
        return used_;
    }

private:
    nlohmann::json take(const std::string& key, const nlohmann::json& def) {
        nlohmann::json v = given_.is_object() && given_.contains(key) ? given_.at(key) : def;
        used_[key] = v;
        return v;
    }

    nlohmann::json given_;
    std::string exp_;
    nlohmann::json used_ = nlohmann::json::object();
};

std::vector<double> time_grid(Params& p, double tmin_def, double tmax_def) {
    const double tmin = p.num("tmin", tmin_def), tmax = p.num("tmax", tmax_def);
    const std::string grid = p.str("grid", "dyadic");
    const int points = p.integer("points", 12);
    p.require(tmin > 0.0 && tmin <= tmax && tmax <= 1.0, "need 0 < tmin <= tmax <= 1");
    if (grid == "dyadic") return dyadic_times(tmin, tmax);
    p.require(grid == "geometric", "grid must be 'dyadic' or 'geometric'");
    p.require(points >= 2, "points must be >= 2");
    return geometric_times(tmin, tmax, points);
}

// Baseline lookup: NaN when absent.
double base(const nlohmann::json* b, const std::string& key) {
    if (!b || !b->is_object() || !b->contains(key) || !b->at(key).is_number()) return NAN;
    return b->at(key).get<double>();
}

// measured <= factor * frozen value; skipped (pass) without a baseline.
Verdict against_baseline(const std::string& id, double measured, double frozen, double factor) {
    Verdict v{id, true, measured, frozen, factor, ""};
    if (std::isnan(frozen)) {
        v.note = "skipped: no baseline";
        return v;
    }
    v.pass = measured <= factor * frozen;
    v.note = "measured <= " + short_num(factor) + " x baseline";
    return v;
}

Verdict at_most(const std::string& id, double measured, double bound, std::string note = "") {
    return {id, measured <= bound, measured, bound, 0.0, std::move(note)};
}

// Random PL datum on [0, 1] with jumps, for the Sobolev pipelines.
PLFunction random_datum(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::vector<double> xs(n);
    for (double& x : xs) x = U(rng);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<Node> nodes;
    for (double x : xs) {
        const double v = 2.0 * U(rng) - 1.0;
        nodes.push_back({x, v, U(rng) < 0.3 ? 2.0 * U(rng) - 1.0 : v});
    }
    nodes.front().left = 0.0;
    nodes.back().right = 0.0;
    return PLFunction(std::move(nodes));
}

// --- e1: sawtooth decay -----------------------------------------------------

void e1_sawtooth(Params& p, ExperimentReport& r, std::uint64_t) {
    const std::vector<double> betas = p.nums("betas", {0.5, 1.0, 2.0});
    const int n_max = p.integer("n_max", 4000);
    const double tol = p.num("tolerance", 0.1);
    const std::vector<double> ts = time_grid(p, std::ldexp(1.0, -14), std::ldexp(1.0, -4));
    p.require(n_max >= 2, "n_max must be >= 2");
    for (double b : betas) p.require(b > 0.0, "betas must be positive");

    Table summary{"slopes", {"beta", "slope", "target", "teeth_count_rate"}, {}};
    for (double b : betas) {
        const double alpha = b / (2.0 * b + 1.0);
        const DecayCurve c = tv_decay_curve(sawtooth(b, n_max), ts, alpha);
        Table t{"sawtooth_beta_" + short_num(b), {"t", "tv", "scaled"}, {}};
        for (const DecaySample& s : c.samples) t.rows.push_back({s.t, s.tv, s.scaled});
        r.tables.push_back(std::move(t));
        const double target = -(b + 1.0) / (2.0 * b + 1.0);
        // teeth narrower than t merge into a slope-1/t profile: TV ~ t^{-1/(beta+1)}
        summary.rows.push_back({b, c.fitted_exponent, target, -1.0 / (b + 1.0)});
        Verdict v{"e1.slope.beta=" + short_num(b), std::abs(c.fitted_exponent - target) <= tol,
                  c.fitted_exponent, target, tol, "fitted log-log slope of TV"};
        r.verdicts.push_back(v);
    }
    r.tables.push_back(std::move(summary));
}

// --- e2: multi-scale counterexample ---------------------------------------

double multiscale_half_norm(const MultiScaleDatum& d, int Q) {
    const std::vector<BumpClass> cl = d.bump_classes();
    return palpha_symbolic(cl, 0.5, Q).norm_upper;
}

void e2_counterexample(Params& p, ExperimentReport& r, std::uint64_t, const nlohmann::json* b) {
    const int J = p.integer("J", 3);
    const std::vector<double> betas = p.nums("betas", {0.25, 0.5, 0.75});
    const double growth = p.num("growth", 2.0);
    const int Q = p.integer("Q", 40);
    p.require(J >= 1 && J <= 3, "J must be in 1..3 (level 3 overflows the packet counts)");
    p.require(Q >= 1, "Q must be >= 1");
    for (double x : betas) p.require(x > 0.0 && x < 1.0, "betas must lie in (0, 1)");

    const MultiScaleDatum d = multiscale_datum(J, default_multiscale_schedule(J));
    Table t{"blowup", {"j", "t", "tv"}, {}};
    for (double x : betas) t.columns.push_back("beta_" + short_num(x));
    std::vector<std::vector<double>> series;
    for (double x : betas) series.push_back(d.blowup_series(x));
    for (std::size_t j = 0; j < d.levels.size(); ++j) {
        std::vector<double> row{static_cast<double>(j), d.levels[j].t, d.levels[j].tv_at_design()};
        for (const auto& s : series) row.push_back(s[j]);
        t.rows.push_back(std::move(row));
    }
    r.tables.push_back(std::move(t));
    for (std::size_t i = 0; i < betas.size(); ++i) {
        double worst = INFINITY;
        for (std::size_t j = 1; j < series[i].size(); ++j) worst = std::min(worst, series[i][j] / series[i][j - 1]);
        r.verdicts.push_back({"e2.growth.beta=" + short_num(betas[i]), worst >= growth, worst, growth, 0.0,
                              "smallest level-to-level ratio of t_j^beta TV"});
    }
    const double norm = multiscale_half_norm(d, Q);
    r.calibration["palpha_half_norm"] = norm;
    r.verdicts.push_back(against_baseline("e2.norm_half", norm, base(b, "palpha_half_norm"), 2.0));
}

// --- e3: decay of P_alpha data ----------------------------------------------

void e3_theorem61(Params& p, ExperimentReport& r, std::uint64_t seed, const nlohmann::json* b) {
    const double alpha = p.num("alpha", 0.75);
    const int count = p.integer("seeds", 10);
    const int K = p.integer("K", 8);
    const int Q = p.integer("Q", 12);
    const std::vector<double> ts = time_grid(p, std::ldexp(1.0, -12), 0.5);
    p.require(alpha > 0.5 && alpha < 1.0, "alpha must lie in (1/2, 1)");
    p.require(count >= 1 && K >= 0 && Q >= 1, "seeds >= 1, K >= 0, Q >= 1");

    Table summary{"summary", {"seed", "sup_scaled", "norm_upper", "c0"}, {}};
    std::vector<double> c0s;
    for (int i = 0; i < count; ++i) {
        const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
        const PLFunction u = random_palpha_datum(alpha, K, s);
        const DecayCurve c = tv_decay_curve(u, ts, alpha);
        Table t{"decay_seed_" + std::to_string(s), {"t", "tv", "scaled"}, {}};
        double sup = 0.0;
        for (const DecaySample& x : c.samples) {
            t.rows.push_back({x.t, x.tv, x.scaled});
            sup = std::max(sup, x.scaled);
        }
        r.tables.push_back(std::move(t));
        const double norm = palpha_norm_upper(u, alpha, Q).norm_upper;
        const double c0 = sup * (2.0 * alpha - 1.0) / norm;
        c0s.push_back(c0);
        summary.rows.push_back({static_cast<double>(s), sup, norm, c0});
        const double frozen = base(b, "c0_decay");
        Verdict v = against_baseline("e3.bound.seed=" + std::to_string(s), c0, frozen, 2.0);
        v.pass = v.pass && std::isfinite(sup);
        v.note = "C0 = sup t^{1-alpha} TV (2 alpha - 1) / norm_upper; " + v.note;
        r.verdicts.push_back(v);
    }
    r.tables.push_back(std::move(summary));
    const double lo = *std::min_element(c0s.begin(), c0s.end());
    const double hi = *std::max_element(c0s.begin(), c0s.end());
    r.calibration["c0_decay"] = hi;
    r.verdicts.push_back(at_most("e3.c0_stability", hi / lo, 2.0, "max / min of C0 across seeds"));

    // contrast: the critical datum keeps growing at beta = 1/2
    const MultiScaleDatum d = multiscale_datum(3, default_multiscale_schedule(3));
    const std::vector<double> s = d.blowup_series(0.5);
    double worst = INFINITY;
    for (std::size_t j = 1; j < s.size(); ++j) worst = std::min(worst, s[j] / s[j - 1]);
    Table ct{"contrast", {"j", "t", "scaled_half"}, {}};
    for (std::size_t j = 0; j < s.size(); ++j) ct.rows.push_back({static_cast<double>(j), d.levels[j].t, s[j]});
    r.tables.push_back(std::move(ct));
    r.verdicts.push_back({"e3.contrast", worst >= 2.0, worst, 2.0, 0.0,
                          "critical datum: smallest level-to-level growth of t_j^{1/2} TV"});
}

// --- e4: decomposition round trip -------------------------------------------

void decomposition_case(const std::string& label, const PLFunction& u, double alpha,
                        const DecompositionParams& dp, ExperimentReport& r) {
    const DecompositionRun run = decompose(u, alpha, dp);
    const DecompositionReport rep = verify_theorem_dec(u, run.result);
    Table t{"levels_" + label, {"k", "tv", "measure", "bumps", "needed_C"}, {}};
    for (std::size_t q = 0; q < rep.levels.size(); ++q) {
        const LevelCheck& c = rep.levels[q];
        t.rows.push_back({static_cast<double>(c.k), c.tv, c.measure,
                          static_cast<double>(run.result.levels[q].bumps.size()), c.needed_C});
    }
    r.tables.push_back(std::move(t));
    std::vector<PLFunction> parts;
    for (const auto& lv : run.result.levels) parts.push_back(lv.v);
    const double back = palpha_norm_upper(sum(parts), alpha, std::max(dp.Q, dp.K) + 4).norm_upper;
    const double ratio = rep.smallest_C / run.estimate.norm_upper;
    r.verdicts.push_back({"e4." + label + ".verified", rep.ok, static_cast<double>(rep.flagged.size()), 0.0, 0.0,
                          "flagged levels"});
    r.verdicts.push_back(at_most("e4." + label + ".ratio", ratio, 10.0, "smallest C / norm_upper"));
    r.verdicts.push_back(at_most("e4." + label + ".converse", back / rep.smallest_C, converse_factor(alpha),
                                 "norm_upper of the reassembled levels / C"));
    r.verdicts.push_back(at_most("e4." + label + ".residual", run.result.residual_l1, 1e-6, "residual_l1"));
}

void e4_decomposition(Params& p, ExperimentReport& r, std::uint64_t seed) {
    const double t_hat = p.num("t_hat", 0.125);
    const double alpha = p.num("alpha", 0.75);
    const int levels = p.integer("levels", 8);
    DecompositionParams dp;
    dp.K = p.integer("K", 12);
    dp.i_max = p.integer("i_max", 24);
    dp.Q = p.integer("Q", 12);
    p.require(t_hat > 0.0 && t_hat < 1.0, "t_hat must lie in (0, 1)");
    p.require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1)");
    p.require(dp.K >= 0 && dp.i_max >= 1 && levels >= 0, "K >= 0, i_max >= 1, levels >= 0");
    const HatU hu = hat_u(t_hat);
    p.require(hu.materializable(), "t_hat too small to materialize");
    decomposition_case("hat_u", hu.materialize(), 0.5, dp, r);
    decomposition_case("random", random_palpha_datum(alpha, levels, seed), alpha, dp, r);
}

// --- e5: Sobolev regularity -------------------------------------------------

void e5_sobolev(Params& p, ExperimentReport& r, std::uint64_t seed, const nlohmann::json* b) {
    const std::vector<double> alphas = p.nums("alphas", {0.25, 0.5, 0.75});
    const int m_max = p.integer("m_max", 10);
    const int count = p.integer("random_count", 20);
    p.require(m_max >= 1 && m_max <= 14, "m_max must be in 1..14");
    p.require(count >= 0, "random_count must be >= 0");
    for (double a : alphas) p.require(a > 0.0 && a < 1.0, "alphas must lie in (0, 1)");

    const PLFunction ind({{0.0, 0.0, 1.0}, {1.0, 1.0, 0.0}});
    Table semi{"indicator", {"alpha", "seminorm", "exact", "rel_err"}, {}};
    double worst = 0.0;
    for (double a : alphas) {
        const double s = w_alpha1_seminorm(ind, a, 1e-9);
        const double exact = 4.0 / (a * (1.0 - a));
        const double e = std::abs(s - exact) / exact;
        worst = std::max(worst, e);
        semi.rows.push_back({a, s, exact, e});
    }
    r.tables.push_back(std::move(semi));
    r.verdicts.push_back(at_most("e5.indicator", worst, 1e-5, "relative error of the seminorm"));

    // mollification bounds on the indicator and one random datum
    std::mt19937_64 rng(seed);
    const std::vector<PLFunction> moll_data{ind, random_datum(rng, 10)};
    Table lem{"mollifier", {"datum", "alpha", "h", "l1_error", "l1_bound", "kernel_ratio"}, {}};
    double excess = -INFINITY, kernel = 0.0;
    for (std::size_t di = 0; di < moll_data.size(); ++di) {
        const PLFunction& u = moll_data[di];
        for (double a : alphas) {
            const double norm = w_alpha1_norm(u, a);
            for (int m = 1; m <= m_max; ++m) {
                const double h = std::ldexp(1.0, -m);
                const PLFunction uh = mollify(u, h);
                const double err = l1_norm(subtract(u, uh));
                const double bound = norm * std::pow(h, a);
                const double ratio = total_variation(uh) * std::pow(h, 1.0 - a) / norm;
                excess = std::max(excess, err / bound);
                kernel = std::max(kernel, ratio);
                lem.rows.push_back({static_cast<double>(di), a, h, err, bound, ratio});
            }
        }
    }
    r.tables.push_back(std::move(lem));
    r.verdicts.push_back(at_most("e5.mollifier.l1", excess, 1.0, "max ||u - u_h||_1 / (||u||_W h^alpha)"));
    r.calibration["kernel_constant"] = kernel;
    r.verdicts.push_back(against_baseline("e5.mollifier.kernel", kernel, base(b, "kernel_constant"), 2.0));

    // D_alpha membership through mollification and through P_alpha
    const std::vector<double> ts = dyadic_times(std::ldexp(1.0, -10), 1.0);
    Table pipe{"pipelines", {"datum", "alpha", "sobolev_ratio", "palpha_ratio"}, {}};
    double worst42 = 0.0, worst43 = 0.0;
    for (int i = 0; i < count; ++i) {
        const PLFunction u = random_datum(rng, 4 + i % 12);
        const double a = alphas[static_cast<std::size_t>(i) % alphas.size()];
        // kernel constant from |eta'| <= pi/2, valid for every datum
        const double c = std::numbers::pi * std::pow(2.0, a - 2.0);
        const double bound42 = (2.0 + c * linf_norm(u)) * w_alpha1_norm(u, a);
        const double r42 = dalpha_membership(u, a, ts).sup / bound42;

        const double ap = 0.5 + 0.45 * (static_cast<double>(i % 5) + 1.0) / 5.0;
        const PLFunction v = random_palpha_datum(ap, 6, seed + static_cast<std::uint64_t>(i));
        const double C = palpha_norm_upper(v, ap, 10).norm_upper;
        double r43 = 0.0;
        for (double t : ts) {
            const double d = l1_norm(subtract(solve_burgers(v, t).solution, v));
            r43 = std::max(r43, d / (5.0 * linf_norm(v) * C * std::pow(t, ap)));
        }
        worst42 = std::max(worst42, r42);
        worst43 = std::max(worst43, r43);
        pipe.rows.push_back({static_cast<double>(i), a, r42, r43});
    }
    r.tables.push_back(std::move(pipe));
    r.verdicts.push_back(at_most("e5.sobolev_pipeline", worst42, 1.0,
                                 "sup t^{-alpha}||S_t u - u|| / ((2 + C ||u||_inf) ||u||_W), C = pi 2^{alpha-2}"));
    r.verdicts.push_back(at_most("e5.palpha_pipeline", worst43, 1.0,
                                 "||S_t u - u|| / (5 ||u||_inf C t^alpha)"));
}

std::string canonical(const std::string& name) {
    static const std::map<std::string, std::string> alias{{"e1", "e1_sawtooth"},
                                                          {"e2", "e2_counterexample"},
                                                          {"e3", "e3_theorem61"},
                                                          {"e4", "e4_decomposition"},
                                                          {"e5", "e5_sobolev"}};
    if (auto it = alias.find(name); it != alias.end()) return it->second;
    for (const auto& [k, v] : alias)
        if (v == name) return v;
    throw UsageError("unknown experiment '" + name + "'");
}

}  // namespace

std::string Table::to_csv() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << fmt(row[i]);
        os << '\n';
    }
    return os.str();
}

std::vector<double> Table::column(const std::string& col) const {
    const auto it = std::find(columns.begin(), columns.end(), col);
    if (it == columns.end()) throw UsageError("table " + name + " has no column " + col);
    const std::size_t k = static_cast<std::size_t>(it - columns.begin());
    std::vector<double> out;
    for (const auto& row : rows) out.push_back(row.at(k));
    return out;
}

bool ExperimentReport::passed() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

const Table& ExperimentReport::table(const std::string& n) const {
    for (const Table& t : tables)
        if (t.name == n) return t;
    throw UsageError("report has no table " + n);
}

std::vector<std::string> experiment_names() {
    return {"e1_sawtooth", "e2_counterexample", "e3_theorem61", "e4_decomposition", "e5_sobolev"};
}

ExperimentReport run_experiment(const std::string& name, const nlohmann::json& params, std::uint64_t seed,
                                const nlohmann::json* baseline) {
    const auto start = std::chrono::steady_clock::now();
    ExperimentReport r;
    r.name = canonical(name);
    Params p(params, r.name);
    if (r.name == "e1_sawtooth") e1_sawtooth(p, r, seed);
    if (r.name == "e2_counterexample") e2_counterexample(p, r, seed, baseline);
    if (r.name == "e3_theorem61") e3_theorem61(p, r, seed, baseline);
    if (r.name == "e4_decomposition") e4_decomposition(p, r, seed);
    if (r.name == "e5_sobolev") e5_sobolev(p, r, seed, baseline);
    r.inputs = p.finish();
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.manifest = {{"version", kVersion}, {"experiment", r.name}, {"seed", seed}, {"elapsed_s", elapsed}};
    return r;
}

std::string svg_loglog(const Table& t, const std::string& xcol, const std::string& ycol) {
    const std::vector<double> xs = t.column(xcol), ys = t.column(ycol);
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (xs[i] > 0.0 && ys[i] > 0.0) pts.emplace_back(std::log10(xs[i]), std::log10(ys[i]));
    const double slope = loglog_slope(xs, ys);
    const std::string label = std::isnan(slope) ? "undefined" : short_num(slope);

    const double W = 640, H = 400, M = 60;
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (!pts.empty()) {
        x0 = x1 = pts[0].first;
        y0 = y1 = pts[0].second;
        for (auto [x, y] : pts) x0 = std::min(x0, x), x1 = std::max(x1, x), y0 = std::min(y0, y), y1 = std::max(y1, y);
    }
    if (x1 - x0 < 1e-12) x0 -= 0.5, x1 += 0.5;
    if (y1 - y0 < 1e-12) y0 -= 0.5, y1 += 0.5;
    auto px = [&](double x) { return M + (x - x0) / (x1 - x0) * (W - 2 * M); };
    auto py = [&](double y) { return H - M - (y - y0) / (y1 - y0) * (H - 2 * M); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
       << t.name << ": log " << ycol << " vs log " << xcol << ", slope " << label << "</text>\n";
    os << "<line x1=\"" << M << "\" y1=\"" << H - M << "\" x2=\"" << W - M << "\" y2=\"" << H - M
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << M << "\" y1=\"" << M << "\" x2=\"" << M << "\" y2=\"" << H - M << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = x0 + (x1 - x0) * i / 4, yv = y0 + (y1 - y0) * i / 4;
        os << "<text x=\"" << px(xv) << "\" y=\"" << H - M + 18
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">1e" << short_num(xv)
           << "</text>\n";
        os << "<text x=\"" << M - 6 << "\" y=\"" << py(yv) + 3
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">1e" << short_num(yv) << "</text>\n";
    }
    if (!pts.empty()) {
        os << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i)
            os << (i ? " " : "") << short_num(px(pts[i].first)) << "," << short_num(py(pts[i].second));
        os << "\"/>\n";
        for (auto [x, y] : pts)
            os << "<circle cx=\"" << short_num(px(x)) << "\" cy=\"" << short_num(py(y))
               << "\" r=\"3\" fill=\"steelblue\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

nlohmann::json to_json(const ExperimentReport& r) {
    nlohmann::json verdicts = nlohmann::json::array();
    for (const Verdict& v : r.verdicts)
        verdicts.push_back({{"id", v.id},
                            {"pass", v.pass},
                            {"measured", number(v.measured)},
                            {"expected", number(v.expected)},
                            {"tolerance", number(v.tolerance)},
                            {"note", v.note}});
    nlohmann::json tables = nlohmann::json::array();
    for (const Table& t : r.tables) tables.push_back(t.name);
    return {{"experiment", r.name},   {"inputs", r.inputs},
            {"tables", tables},       {"verdicts", verdicts},
            {"passed", r.passed()},   {"calibration", r.calibration},
            {"manifest", r.manifest}};
}

std::vector<std::string> write_report(const ExperimentReport& r, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::string> warnings;
    for (const Table& t : r.tables) {
        std::ofstream(dir / (t.name + ".csv")) << t.to_csv();
        const bool has_t = std::find(t.columns.begin(), t.columns.end(), "t") != t.columns.end();
        if (!has_t) continue;
        if (t.rows.empty()) {
            warnings.push_back("table " + t.name + " is empty; no plot");
            continue;
        }
        const std::string y = std::find(t.columns.begin(), t.columns.end(), "tv") != t.columns.end()
                                  ? "tv"
                                  : t.columns.back();
        std::ofstream(dir / (t.name + ".svg")) << svg_loglog(t, "t", y);
    }
    std::ofstream(dir / "report.json") << to_json(r).dump(2) << '\n';
    return warnings;
}

nlohmann::json load_baseline(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) return nlohmann::json::object();
    return nlohmann::json::parse(in);
}

}  // namespace claw

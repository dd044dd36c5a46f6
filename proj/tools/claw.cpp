// Command-line front end. Exit codes: 0 pass, 1 verdict failure, 2 usage
// error, 3 resource guard.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "claw/decomposition.hpp"
#include "claw/errors.hpp"
#include "claw/harness.hpp"
#include "claw/json_io.hpp"
#include "claw/lax_oleinik.hpp"
#include "claw/palpha.hpp"

namespace {

using nlohmann::json;

constexpr int kPass = 0, kVerdictFailure = 1, kUsage = 2, kResource = 3;

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw claw::UsageError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw claw::UsageError(path + ": " + e.what());
    }
}

claw::PLFunction read_datum(const std::string& path) {
    try {
        return read_json(path).get<claw::PLFunction>();
    } catch (const json::exception& e) {
        throw claw::UsageError(path + ": not a PL function (" + e.what() + ")");
    }
}

void emit(const std::string& out, const std::string& text) {
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) throw claw::UsageError("cannot write " + out);
    f << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Intermediate domains for Burgers' equation: solver, certificates, experiments"};
    app.require_subcommand(1);

    std::string input, out;
    double t = 0.0, alpha = 0.5, tmin = 1e-4, tmax = 1.0;
    std::string grid = "dyadic";
    int points = 12, K = 12, imax = 24, Q = 12;

    auto* solve = app.add_subcommand("solve", "Entropy solution at time t");
    solve->add_option("--input", input, "PL datum (JSON)")->required();
    solve->add_option("--t", t, "time")->required();
    solve->add_option("--out", out, "output JSON (stdout if omitted)");

    auto* decay = app.add_subcommand("decay", "TV decay curve as CSV");
    decay->add_option("--input", input, "PL datum (JSON)")->required();
    decay->add_option("--alpha", alpha, "exponent for the scaled column")->required();
    decay->add_option("--tmin", tmin, "smallest time");
    decay->add_option("--tmax", tmax, "largest time");
    decay->add_option("--grid", grid, "dyadic or geometric")->check(CLI::IsMember({"dyadic", "geometric"}));
    decay->add_option("--points", points, "points of a geometric grid");
    decay->add_option("--out", out, "output CSV (stdout if omitted)");

    auto* dec = app.add_subcommand("decompose", "Multi-level decomposition (JSON)");
    dec->add_option("--input", input, "PL datum (JSON)")->required();
    dec->add_option("--alpha", alpha, "exponent in (0, 1)")->required();
    dec->add_option("--K", K, "number of levels");
    dec->add_option("--imax", imax, "envelope chain length");
    dec->add_option("--Q", Q, "dyadic depth of the norm estimate");
    dec->add_option("--out", out, "output JSON (stdout if omitted)");

    auto* pal = app.add_subcommand("palpha", "Upper estimate of the P_alpha norm (JSON)");
    pal->add_option("--input", input, "PL datum (JSON)")->required();
    pal->add_option("--alpha", alpha, "exponent in (0, 1]")->required();
    pal->add_option("--Q", Q, "dyadic depth");
    pal->add_option("--out", out, "output JSON (stdout if omitted)");

    std::string name, params_path, baseline_path;
    std::uint64_t seed = 42;
    auto* exp = app.add_subcommand("experiment", "Run a named experiment");
    exp->add_option("--name", name, "e1..e5 or the full experiment name")->required();
    exp->add_option("--params", params_path, "parameter overrides (JSON object)");
    exp->add_option("--seed", seed, "seed for randomized data");
    exp->add_option("--out", out, "output directory")->required();
    exp->add_option("--baseline", baseline_path, "frozen constants (JSON)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    try {
        if (*solve) {
            const claw::SolveResult r = claw::solve_burgers(read_datum(input), t);
            emit(out, json(r).dump(2) + "\n");
        } else if (*decay) {
            const std::vector<double> ts =
                grid == "dyadic" ? claw::dyadic_times(tmin, tmax) : claw::geometric_times(tmin, tmax, points);
            const claw::DecayCurve c = claw::tv_decay_curve(read_datum(input), ts, alpha);
            claw::Table tab{"decay", {"t", "tv", "scaled"}, {}};
            for (const auto& s : c.samples) tab.rows.push_back({s.t, s.tv, s.scaled});
            emit(out, tab.to_csv());
            std::fprintf(stderr, "fitted exponent %.6g\n", c.fitted_exponent);
        } else if (*dec) {
            const claw::PLFunction u = read_datum(input);
            const claw::DecompositionRun run = claw::decompose(u, alpha, {K, imax, Q});
            const claw::DecompositionReport rep = claw::verify_theorem_dec(u, run.result);
            const json j = {{"decomposition", run.result},
                            {"norm_upper", claw::number(run.estimate.norm_upper)},
                            {"weak_residual_l1", run.weak.residual_l1},
                            {"strong_residual_l1", run.strong.residual_l1},
                            {"report", rep}};
            emit(out, j.dump(2) + "\n");
            return rep.ok ? kPass : kVerdictFailure;
        } else if (*pal) {
            const claw::PAlphaEstimate e = claw::palpha_norm_upper(read_datum(input), alpha, Q);
            emit(out, json(e).dump(2) + "\n");
        } else if (*exp) {
            const json params = params_path.empty() ? json::object() : read_json(params_path);
            const json baseline = baseline_path.empty() ? json::object() : read_json(baseline_path);
            const claw::ExperimentReport r =
                claw::run_experiment(name, params, seed, baseline_path.empty() ? nullptr : &baseline);
            for (const std::string& w : claw::write_report(r, out)) std::fprintf(stderr, "warning: %s\n", w.c_str());
            for (const claw::Verdict& v : r.verdicts)
                std::printf("%-28s %s  measured=%.6g expected=%.6g  %s\n", v.id.c_str(), v.pass ? "PASS" : "FAIL",
                            v.measured, v.expected, v.note.c_str());
            return r.passed() ? kPass : kVerdictFailure;
        }
    } catch (const claw::ResourceError& e) {
        std::fprintf(stderr, "resource guard: %s\n", e.what());
        return kResource;
    } catch (const std::invalid_argument& e) {  // includes UsageError
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kUsage;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kUsage;
    }
    return kPass;
}

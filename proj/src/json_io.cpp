#include "claw/json_io.hpp"

#include <cmath>

namespace claw {

void to_json(nlohmann::json& j, const Node& n) {
    j = {{"x", n.x}, {"left", n.left}, {"right", n.right}};
}

void from_json(const nlohmann::json& j, Node& n) {
    n.x = j.at("x").get<double>();
    n.left = j.at("left").get<double>();
    n.right = j.at("right").get<double>();
}

void to_json(nlohmann::json& j, const Interval& iv) { j = {{"lo", iv.lo}, {"hi", iv.hi}}; }

void from_json(const nlohmann::json& j, Interval& iv) {
    iv.lo = j.at("lo").get<double>();
    iv.hi = j.at("hi").get<double>();
}

void to_json(nlohmann::json& j, const PLFunction& f) { j = {{"nodes", f.nodes()}}; }

void from_json(const nlohmann::json& j, PLFunction& f) {
    f = PLFunction(j.at("nodes").get<std::vector<Node>>());
}

}  // namespace claw

namespace claw {

nlohmann::json number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

void to_json(nlohmann::json& j, const Shock& s) {
    j = {{"x", s.x}, {"left", s.left}, {"right", s.right}};
}

void to_json(nlohmann::json& j, const SolveResult& r) {
    j = {{"t", r.t},
         {"solution", r.solution},
         {"shocks", r.shocks},
         {"tv", total_variation(r.solution)}};
}

void to_json(nlohmann::json& j, const PAlphaWitness& w) {
    j = {{"lambda", w.lambda},           {"alpha", w.alpha},
         {"bad_set", w.bad_set},         {"tv_outside", w.tv_outside},
         {"bad_measure", w.bad_measure}, {"cost", number(w.cost)}};
}

void to_json(nlohmann::json& j, const PAlphaEstimate& e) {
    j = {{"alpha", e.alpha},
         {"Q", e.Q},
         {"norm_upper", number(e.norm_upper)},
         {"certified", number(e.certified)},
         {"witnesses", e.witnesses}};
}

void to_json(nlohmann::json& j, const Bump& b) {
    j = {{"support", b.support}, {"ell", b.ell}, {"h", b.h}, {"max_abs", linf_norm(b.v)}};
}

void to_json(nlohmann::json& j, const DecompositionLevel& lv) {
    j = {{"k", lv.k}, {"v", lv.v}, {"bumps", lv.bumps}};
}

void to_json(nlohmann::json& j, const Decomposition& d) {
    j = {{"alpha", d.alpha}, {"C", number(d.C)}, {"residual_l1", d.residual_l1}, {"levels", d.levels}};
}

void to_json(nlohmann::json& j, const LevelCheck& c) {
    j = {{"k", c.k},
         {"tv", c.tv},
         {"measure", c.measure},
         {"bump_length", c.bump_length},
         {"lipschitz_excess", number(c.lipschitz_excess)},
         {"bump_height_excess", number(c.bump_height_excess)},
         {"bumps_disjoint", c.bumps_disjoint},
         {"needed_C", number(c.needed_C)},
         {"ok", c.ok}};
}

void to_json(nlohmann::json& j, const DecompositionReport& r) {
    j = {{"levels", r.levels},
         {"flagged", r.flagged},
         {"smallest_C", number(r.smallest_C)},
         {"reconstruction_l1", r.reconstruction_l1},
         {"reconstruction_ok", r.reconstruction_ok},
         {"ok", r.ok}};
}

}  // namespace claw

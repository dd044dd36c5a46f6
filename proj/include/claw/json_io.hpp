#pragma once

#include <json.hpp>

#include "claw/decomposition.hpp"
#include "claw/lax_oleinik.hpp"
#include "claw/palpha.hpp"
#include "claw/pwl.hpp"

namespace claw {

void to_json(nlohmann::json& j, const Node& n);
void from_json(const nlohmann::json& j, Node& n);
void to_json(nlohmann::json& j, const Interval& iv);
void from_json(const nlohmann::json& j, Interval& iv);
void to_json(nlohmann::json& j, const PLFunction& f);
void from_json(const nlohmann::json& j, PLFunction& f);

// Output-only records.
void to_json(nlohmann::json& j, const Shock& s);
void to_json(nlohmann::json& j, const SolveResult& r);
void to_json(nlohmann::json& j, const PAlphaWitness& w);
void to_json(nlohmann::json& j, const PAlphaEstimate& e);
void to_json(nlohmann::json& j, const Bump& b);
void to_json(nlohmann::json& j, const DecompositionLevel& lv);
void to_json(nlohmann::json& j, const Decomposition& d);
void to_json(nlohmann::json& j, const LevelCheck& c);
void to_json(nlohmann::json& j, const DecompositionReport& r);

// Infinite or NaN doubles become strings ("inf", "-inf", "nan"); JSON has no
// literal for them.
nlohmann::json number(double v);

}  // namespace claw

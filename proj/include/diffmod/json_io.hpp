#pragma once

#include "diffmod/verifier.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace dm {

using json = nlohmann::ordered_json;

// Labels: {"atom":"a"}, {"unit":true}, {"pair":[L,L]}, {"inl":L}, {"inr":L},
// {"bag":[L,...]}, {"point":[[L,v],...]}.
json label_to_json(const Label& l);
Label label_from_json(const json& j);  // throws std::invalid_argument

// Values: bool and z2 as 0/1, nat and int as decimal strings.
json value_to_json(const Value& v, const Rig& r);
Value value_from_json(const json& j);
json comb_to_json(const LinComb& c, const Rig& r);

// Columns of every source label of weight <= d; infinite columns are cut
// at weight(x) + slack.
json morphism_to_json(const Mor& f, long d, long slack = 3);

json report_to_json(const CheckReport& rep, bool timing = true);
json reports_to_json(const std::vector<CheckReport>& reps, bool timing = true);
json refutation_to_json(const Refutation& res);

// '{"atoms":["a","b"]}'
std::vector<std::string> atoms_from_spec(const std::string& spec);

}  // namespace dm

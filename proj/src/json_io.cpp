#include "diffmod/json_io.hpp"

#include <set>

namespace dm {

json label_to_json(const Label& l) {
  switch (l.kind()) {
    case Kind::Atom: return {{"atom", l.name()}};
    case Kind::Unit: return {{"unit", true}};
    case Kind::Pair: return {{"pair", json::array({label_to_json(l.first()), label_to_json(l.second())})}};
    case Kind::Inl: return {{"inl", label_to_json(l.inner())}};
    case Kind::Inr: return {{"inr", label_to_json(l.inner())}};
    case Kind::Bag: {
      json ms = json::array();
      for (const auto& m : l.items()) ms.push_back(label_to_json(m));
      return {{"bag", ms}};
    }
    case Kind::Point: {
      json es = json::array();
      for (std::size_t i = 0; i < l.size(); ++i) {
        // points only exist over finite rigs, whose values fit a number
        es.push_back(json::array({label_to_json(l.items()[i]), static_cast<int>(l.values()[i])}));
      }
      return {{"point", es}};
    }
  }
  return nullptr;
}

Value value_from_json(const json& j) {
  if (j.is_number_integer()) return Value(j.get<long long>());
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s.empty() || s.find_first_not_of("-0123456789") != std::string::npos)
      throw std::invalid_argument("bad value " + s);
    return Value(s);
  }
  throw std::invalid_argument("bad value " + j.dump());
}

Label label_from_json(const json& j) {
  if (!j.is_object() || j.size() != 1) throw std::invalid_argument("label must be a one-key object: " + j.dump());
  const std::string k = j.begin().key();
  const json& v = j.begin().value();
  if (k == "atom" && v.is_string()) return Label::atom(v.get<std::string>());
  if (k == "unit") return Label::unit();
  if (k == "pair" && v.is_array() && v.size() == 2)
    return Label::pair(label_from_json(v[0]), label_from_json(v[1]));
  if (k == "inl") return Label::inl(label_from_json(v));
  if (k == "inr") return Label::inr(label_from_json(v));
  if (k == "bag" && v.is_array()) {
    std::vector<Label> ms;
    for (const auto& m : v) ms.push_back(label_from_json(m));
    return Label::bag(std::move(ms));
  }
  if (k == "point" && v.is_array()) {
    std::vector<std::pair<Label, Value>> es;
    std::set<Label> seen;
    for (const auto& e : v) {
      if (!e.is_array() || e.size() != 2) throw std::invalid_argument("point entry must be [label, value]");
      Label key = label_from_json(e[0]);
      Value val = value_from_json(e[1]);
      if (val == 0) continue;
      if (!seen.insert(key).second) throw std::invalid_argument("repeated point key " + key.str());
      es.emplace_back(key, val);
    }
    return Label::point(std::move(es));
  }
  throw std::invalid_argument("unknown label " + j.dump());
}

json value_to_json(const Value& v, const Rig& r) {
  if (r.finite()) return static_cast<int>(v);
  return v.str();
}

json comb_to_json(const LinComb& c, const Rig& r) {
  json out = json::array();
  for (const auto& [l, v] : c) out.push_back(json::array({label_to_json(l), value_to_json(v, r)}));
  return out;
}

json morphism_to_json(const Mor& f, long d, long slack) {
  json cols = json::array();
  for (const auto& x : f->src()->upto(d)) {
    Window w = f->finite() ? Window::full() : Window::upto(x.weight() + slack);
    cols.push_back(json::array({label_to_json(x), comb_to_json(f->apply(x, w), f->rig())}));
  }
  return {{"source", f->src()->key()}, {"target", f->tgt()->key()}, {"truncation", d}, {"columns", cols}};
}

json report_to_json(const CheckReport& rep, bool timing) {
  json j;
  j["suite"] = rep.suite;
  j["equation"] = rep.equation;
  j["objects"] = rep.objects;
  j["rig"] = rep.rig;
  j["weight"] = rep.weight;
  j["status"] = rep.pass ? "pass" : "fail";
  if (rep.witness || !rep.error.empty()) {
    const Rig& r = Rig::by_name(rep.rig.empty() ? "bool" : rep.rig);
    json w;
    if (rep.witness) {
      w["label"] = label_to_json(*rep.witness);
      w["lhs"] = comb_to_json(rep.lhs, r);
      w["rhs"] = comb_to_json(rep.rhs, r);
      w["window"] = rep.window;
    }
    if (!rep.error.empty()) w["error"] = rep.error;
    j["witness"] = w;
  }
  j["millis"] = timing ? rep.millis : 0;
  return j;
}

json reports_to_json(const std::vector<CheckReport>& reps, bool timing) {
  json out = json::array();
  for (const auto& r : reps) out.push_back(report_to_json(r, timing));
  return out;
}

json refutation_to_json(const Refutation& res) {
  json surv = json::array();
  for (const auto& rel : res.survivors) {
    json pairs = json::array();
    for (const auto& [a, b] : rel) pairs.push_back(json::array({label_to_json(a), label_to_json(b)}));
    surv.push_back(pairs);
  }
  return {{"candidatesTested", res.candidates_tested}, {"survivors", surv}};
}

std::vector<std::string> atoms_from_spec(const std::string& spec) {
  json j;
  try {
    j = json::parse(spec);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("object spec is not JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("atoms") || !j["atoms"].is_array())
    throw std::invalid_argument("object spec must look like {\"atoms\":[...]}");
  std::vector<std::string> names;
  std::set<std::string> seen;
  for (const auto& a : j["atoms"]) {
    if (!a.is_string() || a.get<std::string>().empty())
      throw std::invalid_argument("atom names must be non-empty strings");
    if (!seen.insert(a.get<std::string>()).second)
      throw std::invalid_argument("repeated atom " + a.get<std::string>());
    names.push_back(a.get<std::string>());
  }
  return names;
}

}  // namespace dm

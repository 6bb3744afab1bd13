#include "ptg/errors.hpp"
#include "ptg/game.hpp"
#include "ptg/json_util.hpp"

#include <fstream>
#include <sstream>

namespace ptg {

using json = nlohmann::json;

std::string serialize_game(const Game& g) {
  json locs = json::array();
  for (const auto& l : g.locations()) {
    json j{{"name", l.name}, {"owner", to_string(l.owner)}, {"rate", l.rate}, {"urgent", l.urgent}};
    if (l.is_final())
      j["final_cost"] = {{"slope", l.final_cost.slope.str()}, {"intercept", l.final_cost.intercept.str()}};
    locs.push_back(std::move(j));
  }
  json trans = json::array();
  for (const auto& t : g.transitions()) {
    trans.push_back({{"from", g.location(t.from).name},
                     {"to", g.location(t.to).name},
                     {"guard",
                      {{"lo", t.guard.lo.str()},
                       {"hi", t.guard.hi.str()},
                       {"lo_closed", t.guard.lo_closed},
                       {"hi_closed", t.guard.hi_closed}}},
                     {"reset", t.reset},
                     {"weight", t.weight}});
  }
  json doc{{"clock_bound", g.clock_bound().str()}, {"locations", locs}, {"transitions", trans}};
  return doc.dump(2) + "\n";
}

namespace {

Owner parse_owner(const std::string& s) {
  if (s == "min") return Owner::Min;
  if (s == "max") return Owner::Max;
  if (s == "final") return Owner::Final;
  throw ValidationError(ValidationKind::Malformed, "unknown owner '" + s + "'");
}

Game parse_doc(const json& doc) {
  using jsonio::field;
  using jsonio::rational_field;
  Rational bound = rational_field(doc, "clock_bound");
  std::vector<Location> locs;
  std::map<std::string, std::size_t> ids;
  for (const auto& jl : field(doc, "locations", json::value_t::array)) {
    Location l;
    l.name = jsonio::string_field(jl, "name");
    l.owner = parse_owner(jsonio::string_field(jl, "owner"));
    l.rate = jsonio::int_field(jl, "rate");
    l.urgent = jl.contains("urgent") ? field(jl, "urgent", json::value_t::boolean).get<bool>() : false;
    if (l.is_final()) {
      if (!jl.contains("final_cost") || !jl["final_cost"].is_object())
        throw ValidationError(ValidationKind::NonAffineFinalCost, "'" + l.name + "'");
      const auto& fc = jl["final_cost"];
      for (auto it = fc.begin(); it != fc.end(); ++it)
        if (it.key() != "slope" && it.key() != "intercept")
          throw ValidationError(ValidationKind::NonAffineFinalCost, "'" + l.name + "' has key " + it.key());
      try {
        l.final_cost = Affine{rational_field(fc, "slope"), rational_field(fc, "intercept")};
      } catch (const ValidationError&) {
        throw ValidationError(ValidationKind::NonAffineFinalCost, "'" + l.name + "'");
      }
    }
    if (ids.count(l.name)) throw ValidationError(ValidationKind::DuplicateName, "'" + l.name + "'");
    ids[l.name] = locs.size();
    locs.push_back(std::move(l));
  }
  auto lookup = [&](const std::string& n) {
    auto it = ids.find(n);
    if (it == ids.end()) throw ValidationError(ValidationKind::UnknownLocation, "'" + n + "'");
    return it->second;
  };
  std::vector<Transition> trans;
  for (const auto& jt : field(doc, "transitions", json::value_t::array)) {
    Transition t;
    t.from = lookup(jsonio::string_field(jt, "from"));
    t.to = lookup(jsonio::string_field(jt, "to"));
    const json& jg = field(jt, "guard", json::value_t::object);
    t.guard.lo = rational_field(jg, "lo");
    t.guard.hi = rational_field(jg, "hi");
    t.guard.lo_closed = jg.contains("lo_closed") ? field(jg, "lo_closed", json::value_t::boolean).get<bool>() : true;
    t.guard.hi_closed = jg.contains("hi_closed") ? field(jg, "hi_closed", json::value_t::boolean).get<bool>() : true;
    t.reset = jt.contains("reset") ? field(jt, "reset", json::value_t::boolean).get<bool>() : false;
    t.weight = jsonio::int_field(jt, "weight");
    trans.push_back(std::move(t));
  }
  Game g(bound, std::move(locs), std::move(trans));
  g.validate();
  return g;
}

}  // namespace

Game parse_game(const std::string& text) { return parse_doc(jsonio::parse(text)); }

Game load_game(const std::string& path) { return parse_game(jsonio::read_file(path)); }

}  // namespace ptg

#include "ptg/errors.hpp"
#include "ptg/json_util.hpp"
#include "ptg/solution.hpp"

namespace ptg {

using json = nlohmann::json;

namespace {

json point(const Rational& x, const ExtValue& v) { return json{{"x", x.str()}, {"v", v.str()}}; }

// Breakpoints in order. A repeated x starts a new segment, so a jump shows up
// as the left limit, the value at the point, and the right limit.
json values_json(const ValueFunction& f) {
  json arr = json::array();
  for (const auto& seg : f.segments())
    for (const auto& x : seg.breakpoints()) arr.push_back(point(x, seg.evaluate(x)));
  return arr;
}

ValueFunction values_from_json(const json& arr, const std::string& name) {
  if (!arr.is_array() || arr.empty())
    throw ValidationError(ValidationKind::Malformed, "values of '" + name + "' must be a non-empty array");
  std::vector<std::vector<std::pair<Rational, ExtValue>>> runs(1);
  for (const auto& p : arr) {
    Rational x = jsonio::rational_field(p, "x");
    if (!p.contains("v")) throw ValidationError(ValidationKind::Malformed, "missing field 'v'");
    ExtValue v = jsonio::to_ext(p["v"]);
    if (!runs.back().empty()) {
      const Rational& px = runs.back().back().first;
      if (x < px) throw ValidationError(ValidationKind::Malformed, "values of '" + name + "' go backwards");
      if (x == px) runs.emplace_back();
    }
    runs.back().emplace_back(x, v);
  }
  std::vector<CostFunction> segs;
  for (const auto& run : runs) {
    bool finite = run.front().second.is_finite();
    for (const auto& [x, v] : run)
      if (v.is_finite() != finite || (!finite && v != run.front().second))
        throw ValidationError(ValidationKind::Malformed, "values of '" + name + "' mix finite and infinite");
    if (!finite) {
      segs.push_back(CostFunction::constant(run.front().first, run.back().first, run.front().second));
      continue;
    }
    std::vector<std::pair<Rational, Rational>> pts;
    for (const auto& [x, v] : run) pts.emplace_back(x, v.value());
    segs.push_back(CostFunction::interpolate(pts));
  }
  return ValueFunction(std::move(segs));
}

json move_json(const Game& g, const Move& m) {
  json j{{"to", g.location(g.transition(m.transition).to).name}, {"transition", m.transition}};
  if (m.kind == Move::Kind::Now) {
    j["type"] = "now";
  } else {
    j["type"] = "wait_until";
    j["target_x"] = m.target.str();
  }
  return j;
}

json table_json(const Game& g, const FpStrategy& s) {
  json t = json::object();
  for (std::size_t l = 0; l < s.locations(); ++l) {
    if (!s.defined(l)) continue;
    json arr = json::array();
    for (const auto& p : s.pieces(l))
      arr.push_back({{"interval", {p.lo.str(), p.hi.str()}}, {"move", move_json(g, p.move)}});
    t[g.location(l).name] = arr;
  }
  return t;
}

FpStrategy table_from_json(const Game& g, const json& t) {
  FpStrategy s(g.size());
  if (!t.is_object()) throw ValidationError(ValidationKind::Malformed, "strategy table must be an object");
  for (auto it = t.begin(); it != t.end(); ++it) {
    std::size_t l = g.index_of(it.key());
    std::vector<FpPiece> ps;
    for (const auto& e : it.value()) {
      const json& iv = jsonio::field(e, "interval", json::value_t::array);
      if (iv.size() != 2) throw ValidationError(ValidationKind::Malformed, "interval needs two ends");
      const json& jm = jsonio::field(e, "move", json::value_t::object);
      auto t_idx = static_cast<std::size_t>(jsonio::int_field(jm, "transition"));
      if (t_idx >= g.transitions().size() || g.transition(t_idx).from != l)
        throw ValidationError(ValidationKind::UnknownLocation, "bad transition in strategy of '" + it.key() + "'");
      std::string type = jsonio::string_field(jm, "type");
      Move m = type == "now" ? Move::now(t_idx) : Move::wait_until(jsonio::rational_field(jm, "target_x"), t_idx);
      if (type != "now" && type != "wait_until")
        throw ValidationError(ValidationKind::Malformed, "unknown move type '" + type + "'");
      ps.push_back(FpPiece{jsonio::to_rational(iv[0]), jsonio::to_rational(iv[1]), m});
    }
    try {
      s.set(l, std::move(ps));
    } catch (const DomainError& e) {
      throw ValidationError(ValidationKind::Malformed, e.what());
    }
  }
  return s;
}

}  // namespace

std::string serialize_solution(const Game& g, const Solution& s) {
  json doc;
  doc["clock_bound"] = s.clock_bound.str();
  doc["mode"] = s.mode == SolveMode::Sptg ? "sptg" : "reset-acyclic";
  json vals = json::object();
  for (std::size_t l = 0; l < g.size(); ++l) vals[g.location(l).name] = values_json(s.values[l]);
  doc["values"] = vals;
  if (s.strategies) {
    doc["strategies"] = {{"max", table_json(g, s.strategies->max)},
                         {"min",
                          {{"nc", table_json(g, s.strategies->min.nc)},
                           {"attractor", table_json(g, s.strategies->min.attractor)},
                           {"threshold", (-s.strategies->min.budget).str()}}}};
  }
  if (!s.trace.empty()) {
    json tr = json::array();
    for (const auto& w : s.trace) {
      json jw{{"r", w.r.str()}, {"next_r", w.next_r.str()}, {"accepted", w.accepted}};
      if (w.rejection) {
        json locs = json::array();
        for (auto l : w.rejection->locations) locs.push_back(g.location(l).name);
        jw["rejection"] = {{"a", w.rejection->a.str()}, {"b", w.rejection->b.str()}, {"locations", locs}};
      }
      tr.push_back(jw);
    }
    doc["trace"] = tr;
  }
  if (s.reset_dag) {
    doc["reset_dag"] = {{"region_locations", s.reset_dag->region_locations},
                        {"components", s.reset_dag->components},
                        {"reset_targets", s.reset_dag->reset_targets}};
  }
  return doc.dump(2) + "\n";
}

Solution parse_solution(const Game& g, const std::string& text) {
  json doc = jsonio::parse(text);
  Solution s;
  s.clock_bound = jsonio::rational_field(doc, "clock_bound");
  std::string mode = doc.contains("mode") ? jsonio::string_field(doc, "mode") : "sptg";
  s.mode = mode == "reset-acyclic" ? SolveMode::ResetAcyclic : SolveMode::Sptg;
  const json& vals = jsonio::field(doc, "values", json::value_t::object);
  s.values.resize(g.size());
  for (std::size_t l = 0; l < g.size(); ++l) {
    const auto& name = g.location(l).name;
    if (!vals.contains(name)) throw ValidationError(ValidationKind::UnknownLocation, "no values for '" + name + "'");
    s.values[l] = values_from_json(vals[name], name);
  }
  for (auto it = vals.begin(); it != vals.end(); ++it) g.index_of(it.key());
  if (doc.contains("strategies")) {
    const json& st = doc["strategies"];
    StrategyProfile p;
    p.max = table_from_json(g, jsonio::field(st, "max", json::value_t::object));
    const json& mn = jsonio::field(st, "min", json::value_t::object);
    p.min.nc = table_from_json(g, jsonio::field(mn, "nc", json::value_t::object));
    p.min.attractor = table_from_json(g, jsonio::field(mn, "attractor", json::value_t::object));
    p.min.budget = -jsonio::rational_field(mn, "threshold");
    s.strategies = std::move(p);
  }
  return s;
}

}  // namespace ptg

#include "ptg/cli.hpp"

#include "ptg/errors.hpp"
#include "ptg/game.hpp"
#include "ptg/json_util.hpp"
#include "ptg/regions.hpp"
#include "ptg/solver.hpp"
#include "ptg/strategy.hpp"
#include "ptg/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <random>

namespace ptg {

using json = nlohmann::json;

namespace {

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string s;
  for (unsigned int i = 0; i < len; ++i) {
    s += hex[md[i] >> 4];
    s += hex[md[i] & 15];
  }
  return s;
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw SyntaxError("cannot write '" + path + "'");
  f << data;
}

struct Report {
  json doc = json::object();
  std::string inputs;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void add_input(const std::string& bytes) { inputs += bytes; }
  void verdict(json v) { doc["verdicts"].push_back(std::move(v)); }
  void output(const std::string& path) { doc["outputs"].push_back(path); }
};

// Tally of one kind of check, keeping the first failure as a witness.
struct Tally {
  explicit Tally(std::string c) : check(std::move(c)) {}
  std::string check;
  std::size_t passed = 0, failed = 0;
  json witness;

  void record(bool ok, const json& w) {
    if (ok) {
      ++passed;
    } else {
      if (failed++ == 0) witness = w;
    }
  }
  json to_json() const {
    json j{{"check", check}, {"passed", passed}, {"failed", failed}};
    if (failed) j["witness"] = witness;
    return j;
  }
};

json play_json(const Game& g, const PlayResult& p) {
  json steps = json::array();
  for (const auto& s : p.steps)
    steps.push_back({{"location", g.location(s.at.loc).name},
                     {"x", s.at.nu.str()},
                     {"delay", s.decision.delay.str()},
                     {"transition", s.decision.transition},
                     {"to", g.location(g.transition(s.decision.transition).to).name},
                     {"cost", s.cost.str()}});
  json j{{"steps", steps}, {"reached", p.reached}};
  j["cost"] = p.cost ? json(p.cost->str()) : json(nullptr);
  return j;
}

int cmd_solve(Report& rep, const std::string& path, std::string out, const std::string& mode) {
  std::string text = jsonio::read_file(path);
  rep.add_input(text);
  Game g = parse_game(text);
  bool sptg = g.clock_bound() == 1 && check_sptg(g, 1);
  Solution sol;
  if (mode == "sptg" || (mode == "auto" && sptg)) {
    if (!sptg) throw ValidationError(ValidationKind::Malformed, "not an SPTG with clock bound 1");
    sol = solve_sptg(g);
  } else {
    sol = solve_reset_acyclic(g);
  }
  if (out.empty()) {
    out = path;
    if (out.size() > 5 && out.substr(out.size() - 5) == ".json") out.resize(out.size() - 5);
    out += ".values.json";
  }
  write_file(out, serialize_solution(g, sol));
  rep.doc["mode"] = sol.mode == SolveMode::Sptg ? "sptg" : "reset-acyclic";
  rep.output(out);
  return kExitOk;
}

int cmd_verify(Report& rep, const std::string& game_path, const std::string& values_path, std::size_t grid) {
  std::string gtext = jsonio::read_file(game_path), vtext = jsonio::read_file(values_path);
  rep.add_input(gtext);
  rep.add_input(vtext);
  Game g = parse_game(gtext);
  Solution sol = parse_solution(g, vtext);
  const bool sptg = g.clock_bound() == 1 && check_sptg(g, 1);
  auto pts = sample_points(sol.values, 0, g.clock_bound(), grid);

  Tally bell{"bellman"};
  for (const auto& x : pts) {
    auto vs = sptg ? bellman_check(g, sol.values, x) : bellman_check_regions(g, sol.values, x);
    for (const auto& v : vs)
      bell.record(v.ok, {{"location", g.location(v.location).name},
                         {"x", x.str()},
                         {"actual", v.actual.str()},
                         {"expected", v.expected.str()}});
  }
  rep.verdict(bell.to_json());

  Tally lip{"lipschitz"};
  for (const auto& m : check_lipschitz(g, sol.values)) lip.record(false, m);
  if (lip.failed == 0) lip.record(true, nullptr);
  rep.verdict(lip.to_json());

  if (sptg) {
    Tally rate{"rate_bounds"};
    for (const auto& m : check_rate_bounds(g, sol.values)) rate.record(false, m);
    if (rate.failed == 0) rate.record(true, nullptr);
    rep.verdict(rate.to_json());
  }

  bool ok = bell.failed == 0 && lip.failed == 0;
  for (const auto& v : rep.doc["verdicts"]) ok = ok && v["failed"] == 0;

  if (sol.strategies) {
    Tally nc{"nc"};
    nc.record(validate_nc(g, sol.strategies->min.nc), "cycle of weight >= 0");
    rep.verdict(nc.to_json());
    Tally play{"optimal_play"};
    for (const auto& x : pts) {
      for (std::size_t l = 0; l < g.size(); ++l) {
        ExtValue val = sol.values[l].evaluate(x);
        if (!val.is_finite()) continue;
        SwitchingController mn(sol.strategies->min, sol.values);
        FpController mx(sol.strategies->max);
        PlayResult p = play_out(g, mn, mx, Config{l, x}, 10000);
        play.record(p.cost && ExtValue(*p.cost) == val, {{"location", g.location(l).name},
                                                         {"x", x.str()},
                                                         {"value", val.str()},
                                                         {"play", play_json(g, p)}});
      }
    }
    rep.verdict(play.to_json());
    ok = ok && nc.failed == 0 && play.failed == 0;
  }
  return ok ? kExitOk : kExitVerify;
}

int cmd_plot(Report& rep, const std::string& values_path, const std::string& dir) {
  std::string text = jsonio::read_file(values_path);
  rep.add_input(text);
  json doc = jsonio::parse(text);
  const json& vals = jsonio::field(doc, "values", json::value_t::object);
  std::filesystem::create_directories(dir);
  for (auto it = vals.begin(); it != vals.end(); ++it) {
    std::string csv = "x,v,v_decimal\n";
    for (const auto& p : it.value()) {
      Rational x = jsonio::rational_field(p, "x");
      ExtValue v = jsonio::to_ext(jsonio::field(p, "v", json::value_t::string));
      std::string exact = v.is_finite() ? v.value().str() : (v.is_plus_inf() ? "inf" : "-inf");
      std::string dec = v.is_finite() ? v.value().decimal(12) : exact;
      csv += x.str() + "," + exact + "," + dec + "\n";
    }
    std::string path = (std::filesystem::path(dir) / (it.key() + ".csv")).string();
    write_file(path, csv);
    rep.output(path);
  }
  return kExitOk;
}

int cmd_simulate(Report& rep, const std::string& game_path, const std::string& values_path, const std::string& from,
                 std::size_t opponents, std::uint64_t seed) {
  std::string gtext = jsonio::read_file(game_path), vtext = jsonio::read_file(values_path);
  rep.add_input(gtext);
  rep.add_input(vtext);
  Game g = parse_game(gtext);
  Solution sol = parse_solution(g, vtext);
  auto colon = from.rfind(':');
  if (colon == std::string::npos) throw ValidationError(ValidationKind::Malformed, "--from expects location:x");
  std::size_t loc = g.index_of(from.substr(0, colon));
  Rational x;
  try {
    x = Rational::parse(from.substr(colon + 1));
  } catch (const ArithmeticError& e) {
    throw ValidationError(ValidationKind::Malformed, e.what());
  }
  if (x < 0 || x > g.clock_bound()) throw ValidationError(ValidationKind::Malformed, "start outside the clock domain");
  ExtValue val = sol.values[loc].evaluate(x);
  rep.doc["value"] = val.str();
  json plays = json::array();
  bool ok = true;

  if (g.location(loc).is_final()) {
    FpStrategy none(g.size());
    FpController a(none), b(none);
    PlayResult p = play_out(g, a, b, Config{loc, x}, 0);
    ok = p.cost && ExtValue(*p.cost) == val;
    json j = play_json(g, p);
    j["opponent"] = "none";
    plays.push_back(j);
  } else {
    if (!sol.strategies) throw ValidationError(ValidationKind::Malformed, "values file has no strategies");
    if (!val.is_finite()) throw ValidationError(ValidationKind::Malformed, "start has an infinite value");
    {
      SwitchingController mn(sol.strategies->min, sol.values);
      FpController mx(sol.strategies->max);
      PlayResult p = play_out(g, mn, mx, Config{loc, x}, 10000);
      bool good = p.cost && ExtValue(*p.cost) == val;
      ok = ok && good;
      json j = play_json(g, p);
      j["opponent"] = "optimal";
      j["ok"] = good;
      plays.push_back(j);
    }
    std::mt19937_64 rng(seed);
    std::vector<Rational> pts = sol.strategies->max.points();
    for (const auto& f : sol.values)
      for (const auto& b : f.breakpoints()) pts.push_back(b);
    for (std::size_t k = 0; k < opponents; ++k) {
      FpStrategy opp = random_fp_strategy(g, Owner::Max, pts, rng);
      SwitchingController mn(sol.strategies->min, sol.values);
      FpController mx(opp);
      PlayResult p = play_out(g, mn, mx, Config{loc, x}, 10000);
      bool good = p.cost && ExtValue(*p.cost) <= val;
      ok = ok && good;
      json j = play_json(g, p);
      j["opponent"] = "random#" + std::to_string(k);
      j["ok"] = good;
      plays.push_back(j);
    }
  }
  rep.doc["plays"] = plays;
  rep.verdict({{"check", "simulate"}, {"passed", ok}});
  return ok ? kExitOk : kExitVerify;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Solver for one-clock priced timed games"};
  app.require_subcommand(1);
  std::string game, values, out_path, mode = "auto", csv_dir, from;
  std::size_t grid = 16, opponents = 8;
  std::uint64_t seed = 1;

  auto* solve = app.add_subcommand("solve", "compute value functions and strategies");
  solve->add_option("game", game, "game JSON")->required();
  solve->add_option("--out", out_path, "solution JSON (default: <game>.values.json)");
  solve->add_option("--mode", mode, "auto | sptg | reset-acyclic")
      ->check(CLI::IsMember({"auto", "sptg", "reset-acyclic"}));

  auto* verify = app.add_subcommand("verify", "check a solution against the game");
  verify->add_option("game", game, "game JSON")->required();
  verify->add_option("values", values, "solution JSON")->required();
  verify->add_option("--grid", grid, "extra evenly spaced sample points");

  auto* plot = app.add_subcommand("plot", "write value functions as CSV");
  plot->add_option("values", values, "solution JSON")->required();
  plot->add_option("--csv", csv_dir, "output directory")->required();

  auto* sim = app.add_subcommand("simulate", "play the strategies out");
  sim->add_option("game", game, "game JSON")->required();
  sim->add_option("values", values, "solution JSON")->required();
  sim->add_option("--from", from, "start as location:x")->required();
  sim->add_option("--opponents", opponents, "random Max opponents");
  sim->add_option("--seed", seed, "seed for std::mt19937_64");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  Report rep;
  std::string command = app.get_subcommands().front()->get_name();
  rep.doc["command"] = command;
  rep.doc["verdicts"] = json::array();
  rep.doc["outputs"] = json::array();
  int code = kExitOk;
  try {
    if (command == "solve")
      code = cmd_solve(rep, game, out_path, mode);
    else if (command == "verify")
      code = cmd_verify(rep, game, values, grid);
    else if (command == "plot")
      code = cmd_plot(rep, values, csv_dir);
    else
      code = cmd_simulate(rep, game, values, from, opponents, seed);
  } catch (const ResetCycle& e) {
    code = kExitResetCycle;
    rep.doc["error"] = e.what();
    rep.doc["witness"] = e.witness();
    err << e.what() << "\n";
  } catch (const SyntaxError& e) {
    code = kExitUsage;
    rep.doc["error"] = e.what();
    err << "error: " << e.what() << "\n";
  } catch (const ValidationError& e) {
    code = kExitUsage;
    rep.doc["error"] = e.what();
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    code = kExitBudget;
    rep.doc["error"] = e.what();
    err << "error: " << e.what() << "\n";
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - rep.start);
  rep.doc["input_digest"] = sha256_hex(rep.inputs);
  rep.doc["timing_ms"] = ms.count();
  rep.doc["exit_code"] = code;
  out << rep.doc.dump(2) << "\n";
  return code;
}

}  // namespace ptg

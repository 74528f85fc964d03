#include "ordeq/cli.hpp"

#include <fstream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "ordeq/equilibrium.hpp"
#include "ordeq/error.hpp"
#include "ordeq/fixtures.hpp"
#include "ordeq/hardness.hpp"
#include "ordeq/io.hpp"
#include "ordeq/typespace.hpp"
#include "ordeq/verifier.hpp"

namespace ordeq {

namespace {

using Json = nlohmann::ordered_json;

/// Thrown for flag combinations CLI11 cannot express.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool has_cnf_space(const std::vector<TypeSpaceSpec>& spaces) {
  for (const auto& spec : spaces) {
    if (std::holds_alternative<PreferenceCnfSpace>(spec)) return true;
  }
  return false;
}

Json profile_json(const MediatedProfile& profile, const GameForm& game) {
  return Json::parse(serialize_profile(profile, game));
}

Json utility_json(const UtilityVector& u, const GameForm& game) {
  Json obj = Json::object();
  for (OutcomeId o = 0; o < u.size(); ++o) obj[game.outcomes()[o]] = u[o].str();
  return obj;
}

Json violation_json(const Violation& v, const GameForm& game) {
  Json obj = Json::object();
  obj["verdict"] = "violated";
  obj["player"] = v.player + 1;
  obj["deviation"] = game.action_sets()[v.player][v.deviation];
  obj["witness"] = utility_json(v.witness, game);
  obj["gain"] = v.amount.str();
  return obj;
}

int emit(std::ostream& out, const Json& doc, int code) {
  out << doc.dump() << "\n";
  return code;
}

struct SolveFlags {
  std::string game;
  std::string problem = "eore";
  std::string target;
  std::string path;
  std::string objective;
  std::string threshold;
  bool monolithic = false;
};

ProblemQuery make_query(const SolveFlags& flags, const GameForm& game) {
  if (flags.problem == "eore") return EoreQuery{};
  if (flags.problem == "sire") {
    if (flags.target.empty()) throw UsageError("--problem sire needs --target");
    return SireQuery{parse_profile_key(game, flags.target)};
  }
  if (flags.problem == "aare") {
    if (flags.path.empty()) throw UsageError("--problem aare needs --path");
    return AareQuery{parse_profile(read_text_file(flags.path), game, false).p};
  }
  if (flags.objective.empty() || flags.threshold.empty()) {
    throw UsageError("--problem omire needs --objective and --threshold");
  }
  ObjectiveSpec spec{parse_profile_map(read_text_file(flags.objective), game),
                     Rational::parse(flags.threshold)};
  for (const auto& g : spec.g) {
    if (g.sign() < 0 || g > Rational(1)) {
      throw Error(ErrorKind::kValidation, "objective weights must lie in [0,1]");
    }
  }
  return OmireQuery{std::move(spec)};
}

int run_solve(const SolveFlags& flags, std::ostream& out) {
  const GameDocument doc = parse_game(read_text_file(flags.game));
  const GameForm& game = doc.game.form;
  const ProblemQuery query = make_query(flags, game);
  if (has_cnf_space(doc.game.spaces)) {
    const CnfVerdict verdict = solve_over_extreme_types(game, doc.game.spaces, query);
    Json result = Json::object();
    switch (verdict.kind) {
      case CnfVerdictKind::kNo:
        result["answer"] = "no";
        return emit(out, result, kExitNo);
      case CnfVerdictKind::kCapExceeded:
        result["answer"] = "cap_exceeded";
        return emit(out, result, kExitNonDefinitive);
      case CnfVerdictKind::kYesOverExtremeTypes:
        result["answer"] = verdict.definitive ? "yes" : "yes_over_extreme_types";
        result["profile"] = profile_json(*verdict.profile, game);
        return emit(out, result, verdict.definitive ? kExitYes : kExitNonDefinitive);
    }
  }
  SolveOptions options;
  options.decompose_aare = !flags.monolithic;
  const SolveAnswer answer = solve(game, doc.game.spaces, query, options);
  Json result = Json::object();
  result["answer"] = answer.yes ? "yes" : "no";
  if (answer.yes) {
    if (answer.objective_value && flags.problem != "eore" && flags.problem != "aare") {
      result["objective_value"] = answer.objective_value->str();
    }
    result["profile"] = profile_json(*answer.profile, game);
  }
  return emit(out, result, answer.yes ? kExitYes : kExitNo);
}

int run_verify(const std::string& game_path, const std::string& profile_path, std::ostream& out) {
  const GameDocument doc = parse_game(read_text_file(game_path));
  const GameForm& game = doc.game.form;
  const MediatedProfile profile = parse_profile(read_text_file(profile_path), game);
  std::vector<TypeSpaceSpec> spaces = doc.game.spaces;
  const bool cnf = has_cnf_space(spaces);
  if (cnf) {
    // A violation at a 0/1 type is genuine; robustness is only over those types.
    for (auto& spec : spaces) {
      if (std::holds_alternative<PreferenceCnfSpace>(spec)) {
        spec = to_finite_space(spec, game.num_outcomes());
      }
    }
  }
  const VerifyReport report = verify(game, spaces, profile);
  if (!report.robust()) return emit(out, violation_json(*report.violation, game), kExitNo);
  Json result = Json::object();
  result["verdict"] = cnf ? "robust_over_extreme_types" : "robust_equilibrium";
  return emit(out, result, cnf ? kExitNonDefinitive : kExitYes);
}

int run_pure(const std::string& game_path, std::ostream& out) {
  const GameDocument doc = parse_game(read_text_file(game_path));
  const GameForm& game = doc.game.form;
  Json list = Json::array();
  for (const auto& a : find_pure_unmediated(game, doc.game.spaces)) {
    list.push_back(profile_key(game, game.profile_index(a)));
  }
  Json result = Json::object();
  result["pure_equilibria"] = std::move(list);
  return emit(out, result, kExitYes);
}

int run_reduce_sat(const std::string& dimacs, const std::string& out_path, std::ostream& out) {
  const CnfFormula formula = parse_dimacs(read_text_file(dimacs));
  validate_formula(formula);
  GameDocument doc;
  doc.name = "sat_reduction";
  doc.source = "reduce-sat " + std::filesystem::path(dimacs).filename().string();
  doc.game = reduce_sat(formula);
  const std::string text = serialize_game(doc);
  if (out_path.empty()) {
    out << text;
    return kExitYes;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file || !(file << text)) throw Error(ErrorKind::kParse, "cannot write " + out_path);
  Json result = Json::object();
  result["written"] = out_path;
  return emit(out, result, kExitYes);
}

int run_enumerate(const std::string& game_path, std::size_t player, std::ostream& out) {
  const GameDocument doc = parse_game(read_text_file(game_path));
  const GameForm& game = doc.game.form;
  if (player < 1 || player > game.num_players()) {
    throw UsageError("--player must be between 1 and " + std::to_string(game.num_players()));
  }
  const TypeSpaceSpec& spec = doc.game.spaces[player - 1];
  std::vector<UtilityVector> types;
  try {
    types = to_finite_space(spec, game.num_outcomes()).types;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kCapExceeded) throw;
    Json result = Json::object();
    result["answer"] = "cap_exceeded";
    return emit(out, result, kExitNonDefinitive);
  }
  Json list = Json::array();
  for (const auto& u : types) list.push_back(utility_json(u, game));
  Json result = Json::object();
  result["player"] = player;
  result["kind"] = space_kind_name(spec);
  result["types"] = std::move(list);
  return emit(out, result, kExitYes);
}

int run_fixtures(const std::string& dir_flag, bool check, std::ostream& out) {
  const std::filesystem::path dir =
      dir_flag.empty() ? default_fixture_dir() : std::filesystem::path(dir_flag);
  Json result = Json::object();
  if (check) {
    const FixtureReport report = run_fixture_suite(dir);
    Json checks = Json::array();
    for (const auto& c : report.checks) {
      Json item = Json::object();
      item["name"] = c.name;
      item["passed"] = c.passed;
      item["detail"] = c.detail;
      checks.push_back(std::move(item));
    }
    result["checks"] = std::move(checks);
    result["failures"] = report.failures();
    return emit(out, result, report.all_passed() ? kExitYes : kExitNo);
  }
  Json list = Json::array();
  for (const auto& entry : load_manifest(dir)) {
    Json item = Json::object();
    item["name"] = entry.name;
    item["description"] = entry.description;
    item["game"] = entry.game_file.string();
    if (entry.profile_file) item["profile"] = entry.profile_file->string();
    Json expected = Json::object();
    for (const auto& [key, value] : entry.expected) expected[key] = value;
    item["expected"] = std::move(expected);
    list.push_back(std::move(item));
  }
  result["fixtures"] = std::move(list);
  return emit(out, result, kExitYes);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Robust mediated equilibria in ordinal and pre-Bayesian games", "ordeq"};
  app.require_subcommand(1);

  SolveFlags solve_flags;
  auto* solve_cmd = app.add_subcommand("solve", "Decide EORE, SIRE, AARE or OMIRE");
  solve_cmd->add_option("--game", solve_flags.game, "Game document")->required();
  solve_cmd->add_option("--problem", solve_flags.problem, "eore|sire|aare|omire")
      ->check(CLI::IsMember({"eore", "sire", "aare", "omire"}));
  solve_cmd->add_option("--target", solve_flags.target, "SIRE profile, e.g. Top,Left");
  solve_cmd->add_option("--path", solve_flags.path, "AARE profile document (p only)");
  solve_cmd->add_option("--objective", solve_flags.objective, "OMIRE weights {profile: rat}");
  solve_cmd->add_option("--threshold", solve_flags.threshold, "OMIRE threshold");
  solve_cmd->add_flag("--monolithic", solve_flags.monolithic, "AARE as a single LP");

  std::string verify_game;
  std::string verify_profile;
  auto* verify_cmd = app.add_subcommand("verify", "Check a mediated profile");
  verify_cmd->add_option("--game", verify_game, "Game document")->required();
  verify_cmd->add_option("--profile", verify_profile, "Profile document")->required();

  std::string pure_game;
  auto* pure_cmd = app.add_subcommand("pure", "List pure unmediated equilibria");
  pure_cmd->add_option("--game", pure_game, "Game document")->required();

  std::string dimacs;
  std::string reduce_out;
  auto* reduce_cmd = app.add_subcommand("reduce-sat", "Build the game for a DIMACS CNF");
  reduce_cmd->add_option("--dimacs", dimacs, "DIMACS file")->required();
  reduce_cmd->add_option("--out", reduce_out, "Output game document (default: stdout)");

  std::string enum_game;
  std::size_t enum_player = 0;
  auto* enum_cmd = app.add_subcommand("enumerate-types", "List a player's 0/1 types");
  enum_cmd->add_option("--game", enum_game, "Game document")->required();
  enum_cmd->add_option("--player", enum_player, "Player, 1-based")->required();

  std::string fixture_dir;
  bool fixture_check = false;
  auto* fixtures_cmd = app.add_subcommand("fixtures", "List the bundled games");
  fixtures_cmd->add_option("--dir", fixture_dir, "Fixture directory");
  fixtures_cmd->add_flag("--check", fixture_check, "Run every fixture expectation");

  std::vector<std::string> argv_storage{"ordeq"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitYes;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitYes;
  } catch (const CLI::ParseError& e) {
    err << "ordeq: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*solve_cmd) return run_solve(solve_flags, out);
    if (*verify_cmd) return run_verify(verify_game, verify_profile, out);
    if (*pure_cmd) return run_pure(pure_game, out);
    if (*reduce_cmd) return run_reduce_sat(dimacs, reduce_out, out);
    if (*enum_cmd) return run_enumerate(enum_game, enum_player, out);
    if (*fixtures_cmd) return run_fixtures(fixture_dir, fixture_check, out);
  } catch (const UsageError& e) {
    err << "ordeq: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kCapExceeded) {
      err << "ordeq: " << e.what() << "\n";
      Json result = Json::object();
      result["answer"] = "cap_exceeded";
      return emit(out, result, kExitNonDefinitive);
    }
    err << "ordeq: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    err << "ordeq: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  err << "ordeq: no command\n";
  return kExitUsage;
}

}  // namespace ordeq

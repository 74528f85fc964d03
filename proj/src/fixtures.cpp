#include "ordeq/fixtures.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "ordeq/equilibrium.hpp"
#include "ordeq/error.hpp"
#include "ordeq/hardness.hpp"
#include "ordeq/typespace.hpp"
#include "ordeq/verifier.hpp"

#ifndef ORDEQ_FIXTURE_DIR
#define ORDEQ_FIXTURE_DIR "fixtures/v1"
#endif

namespace ordeq {

namespace {

using Json = nlohmann::json;

bool has_cnf_space(const std::vector<TypeSpaceSpec>& spaces) {
  return std::any_of(spaces.begin(), spaces.end(), [](const TypeSpaceSpec& s) {
    return std::holds_alternative<PreferenceCnfSpace>(s);
  });
}

std::string describe(const Violation& v, const GameForm& game) {
  std::ostringstream out;
  out << "player " << v.player + 1 << " deviating to " << game.action_sets()[v.player][v.deviation]
      << " gains " << v.amount;
  return out.str();
}

class Suite {
 public:
  void add(std::string name, bool passed, std::string detail) {
    report_.checks.push_back({std::move(name), passed, std::move(detail)});
  }

  /// Runs `body`, which returns the detail string and sets `passed`; any
  /// exception becomes a failed entry.
  template <typename Body>
  void check(const std::string& name, Body body) {
    try {
      bool passed = false;
      std::string detail = body(passed);
      add(name, passed, std::move(detail));
    } catch (const std::exception& e) {
      add(name, false, std::string("error: ") + e.what());
    }
  }

  FixtureReport take() { return std::move(report_); }

 private:
  FixtureReport report_;
};

const FixtureEntry* find_entry(const std::vector<FixtureEntry>& entries, const std::string& name) {
  for (const auto& entry : entries) {
    if (entry.name == name) return &entry;
  }
  return nullptr;
}

std::string yes_no(bool yes) { return yes ? "yes" : "no"; }

void check_entry(Suite& suite, const FixtureEntry& entry) {
  GameDocument doc;
  try {
    doc = load_fixture_game(entry);
  } catch (const std::exception& e) {
    suite.add(entry.name + "/load", false, e.what());
    return;
  }
  const GameForm& game = doc.game.form;
  const auto& spaces = doc.game.spaces;
  const bool cnf = has_cnf_space(spaces);

  suite.check(entry.name + "/round_trip", [&](bool& passed) {
    passed = parse_game(serialize_game(doc)) == doc;
    return std::string(passed ? "identical" : "differs after serialize/parse");
  });

  if (auto it = entry.expected.find("eore"); it != entry.expected.end()) {
    suite.check(entry.name + "/eore", [&](bool& passed) {
      std::string got;
      std::string extra;
      if (cnf) {
        const CnfVerdict verdict = check_cnf_existence(game, spaces);
        got = verdict.kind == CnfVerdictKind::kNo ? "no" : "yes";
        if (verdict.kind == CnfVerdictKind::kCapExceeded) got = "cap_exceeded";
      } else {
        const SolveAnswer answer = solve(game, spaces, EoreQuery{});
        got = yes_no(answer.yes);
        if (answer.yes) {
          const VerifyReport report = verify(game, spaces, *answer.profile);
          if (!report.robust()) extra = "; returned profile fails verify: " + describe(*report.violation, game);
        }
      }
      passed = got == it->second && extra.empty();
      return "expected " + it->second + ", got " + got + extra;
    });
  }

  if (entry.profile_file) {
    MediatedProfile profile;
    try {
      profile = load_fixture_profile(entry, game);
    } catch (const std::exception& e) {
      suite.add(entry.name + "/profile", false, e.what());
      return;
    }
    if (auto it = entry.expected.find("verify"); it != entry.expected.end()) {
      suite.check(entry.name + "/verify", [&](bool& passed) {
        const VerifyReport report = verify(game, spaces, profile);
        const std::string got = report.robust() ? "robust_equilibrium" : "violated";
        passed = got == it->second;
        std::string detail = "expected " + it->second + ", got " + got;
        if (!report.robust()) detail += " (" + describe(*report.violation, game) + ")";
        return detail;
      });
    }
    if (auto it = entry.expected.find("aare"); it != entry.expected.end()) {
      suite.check(entry.name + "/aare", [&](bool& passed) {
        const SolveAnswer answer = solve(game, spaces, AareQuery{profile.p});
        std::string extra;
        if (answer.yes && !verify(game, spaces, *answer.profile).robust()) {
          extra = "; returned profile fails verify";
        }
        passed = yes_no(answer.yes) == it->second && extra.empty();
        return "expected " + it->second + ", got " + yes_no(answer.yes) + extra;
      });
    }
  }

  if (!cnf) {
    suite.check(entry.name + "/pure_sustained", [&](bool& passed) {
      const auto pures = find_pure_unmediated(game, spaces);
      passed = true;
      for (const auto& a : pures) {
        if (!verify(game, spaces, pure_profile(game, game.profile_index(a))).robust()) {
          passed = false;
        }
      }
      return std::to_string(pures.size()) + " pure unmediated equilibria checked";
    });
  }
}

void check_fig3_threshold_types(Suite& suite, const std::vector<FixtureEntry>& entries) {
  const FixtureEntry* entry = find_entry(entries, "fig3");
  if (entry == nullptr) return;
  suite.check("fig3/finite_threshold_types", [&](bool& passed) {
    const GameDocument doc = load_fixture_game(*entry);
    std::vector<TypeSpaceSpec> finite;
    for (const auto& spec : doc.game.spaces) {
      finite.emplace_back(to_finite_space(spec, doc.game.form.num_outcomes()));
    }
    const SolveAnswer answer = solve(doc.game.form, finite, EoreQuery{});
    passed = !answer.yes;
    return "finite solve over threshold types: " + yes_no(answer.yes);
  });
}

void check_fig5_structure(Suite& suite, const std::vector<FixtureEntry>& entries) {
  const FixtureEntry* entry = find_entry(entries, "fig5");
  if (entry == nullptr) return;
  suite.check("fig5/structure", [&](bool& passed) {
    const GameDocument doc = load_fixture_game(*entry);
    const GameForm& game = doc.game.form;
    const SolveAnswer answer = solve(game, doc.game.spaces, EoreQuery{});
    if (!answer.yes) {
      passed = false;
      return std::string("no equilibrium found");
    }
    const MediatedProfile& profile = *answer.profile;
    const OutcomeId dc = game.outcome_id("dc");
    const OutcomeId cd = game.outcome_id("cd");
    const OutcomeId cc1 = game.outcome_id("cc1");
    const OutcomeId cc2 = game.outcome_id("cc2");
    Rational off_path;
    Rational cc_mass;
    for (std::size_t a = 0; a < game.num_profiles(); ++a) {
      const OutcomeId o = game.outcome_of(a);
      if (o == dc || o == cd) off_path += profile.p[a];
      if (o == cc1 || o == cc2) cc_mass += profile.p[a];
    }
    bool punish_ok = true;
    for (PlayerId i = 0; i < 2; ++i) {
      for (std::size_t k = 0; k < profile.q[i].size(); ++k) {
        // two players: the opponents index is the other player's action
        if (k < 2 && !profile.q[i][k].is_zero()) punish_ok = false;
      }
    }
    passed = off_path.is_zero() && cc_mass.sign() > 0 && punish_ok;
    std::ostringstream detail;
    detail << "mass on dc/cd " << off_path << ", mass on cc " << cc_mass
           << ", punishment on rows/columns 3-4 only: " << (punish_ok ? "yes" : "no");
    return detail.str();
  });
}

void check_fig6_separation(Suite& suite, const std::vector<FixtureEntry>& entries) {
  const FixtureEntry* entry = find_entry(entries, "fig6");
  if (entry == nullptr || !entry->profile_file) return;
  suite.check("fig6/oracle_separation", [&](bool& passed) {
    const GameDocument doc = load_fixture_game(*entry);
    const GameForm& game = doc.game.form;
    const MediatedProfile profile = load_fixture_profile(*entry, game);
    const auto& space = std::get<DistributionOrderSpace>(doc.game.spaces[0]);
    const std::size_t down = game.action_id(0, "Down");
    const SeparationResult zero_one = separation_oracle_partial(
        game, 0, down, profile.p, profile.q[0], zero_one_restriction(space));
    const SeparationResult lp = separation_oracle_dist(game, 0, down, profile.p, profile.q[0], space);
    const Rational twentieth(1, 20);
    bool witness_ok = false;
    if (lp) {
      const auto v = deviation_gain_coefficients(game, 0, down, profile.p, profile.q[0]);
      Rational gain;
      for (OutcomeId o = 0; o < v.size(); ++o) gain += v[o] * lp->witness[o];
      witness_ok = satisfies_space(lp->witness, space) && gain == lp->amount;
    }
    passed = !zero_one && lp && lp->amount >= twentieth && witness_ok;
    std::ostringstream detail;
    detail << "0/1 oracle: " << (zero_one ? "violation" : "no violation")
           << "; lottery oracle gap: " << (lp ? lp->amount.str() : std::string("none"));
    return detail.str();
  });
}

std::vector<std::size_t> shuffled(Prng& rng, std::size_t n) {
  std::vector<std::size_t> out(n);
  std::iota(out.begin(), out.end(), std::size_t{0});
  for (std::size_t k = n; k > 1; --k) std::swap(out[k - 1], out[rng.below(k)]);
  return out;
}

DistributionOrderSpace random_distribution_order(Prng& rng, std::size_t num_outcomes,
                                                 const RandomGameBounds& bounds) {
  DistributionOrderSpace space;
  const std::size_t count = rng.between(1, std::max<std::size_t>(1, bounds.max_pairs));
  for (std::size_t k = 0; k < count; ++k) {
    DistributionPair pair;
    if (rng.chance(1, 2)) {
      pair.better.assign(num_outcomes, Rational(0));
      pair.better[rng.below(num_outcomes)] = Rational(1);
    } else {
      pair.better = random_distribution(rng, num_outcomes, bounds.denominator);
    }
    pair.worse = random_distribution(rng, num_outcomes, bounds.denominator);
    space.pairs.push_back(std::move(pair));
  }
  return space;
}

TypeSpaceSpec random_space(Prng& rng, SpaceKind kind, std::size_t num_outcomes,
                           const RandomGameBounds& bounds) {
  if (kind == SpaceKind::kMixed) kind = static_cast<SpaceKind>(rng.below(4));
  switch (kind) {
    case SpaceKind::kFinite: {
      FiniteSpace space;
      const std::size_t count = rng.between(1, std::max<std::size_t>(1, bounds.max_finite_types));
      for (std::size_t t = 0; t < count; ++t) {
        space.types.push_back(random_utility(rng, num_outcomes, bounds.denominator));
      }
      return space;
    }
    case SpaceKind::kTotalOrder:
      return random_total_order(rng, num_outcomes);
    case SpaceKind::kPartialOrder:
      return random_partial_order(rng, num_outcomes);
    default:
      return random_distribution_order(rng, num_outcomes, bounds);
  }
}

}  // namespace

std::filesystem::path default_fixture_dir() {
  if (const char* env = std::getenv("ORDEQ_FIXTURES"); env != nullptr && *env != '\0') {
    return env;
  }
  return ORDEQ_FIXTURE_DIR;
}

std::vector<FixtureEntry> load_manifest(const std::filesystem::path& dir) {
  Json root;
  try {
    root = Json::parse(read_text_file(dir / "manifest.json"));
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::kParse, "manifest.json: " + std::string(e.what()));
  }
  if (!root.is_object() || !root.contains("fixtures") || !root["fixtures"].is_array()) {
    throw Error(ErrorKind::kParse, "manifest.json: expected {\"fixtures\": [...]}");
  }
  std::vector<FixtureEntry> entries;
  for (const auto& item : root["fixtures"]) {
    try {
      FixtureEntry entry;
      entry.name = item.at("name").get<std::string>();
      entry.description = item.value("description", std::string());
      entry.game_file = dir / item.at("game").get<std::string>();
      if (item.contains("profile")) entry.profile_file = dir / item["profile"].get<std::string>();
      if (item.contains("expected")) {
        for (const auto& [key, value] : item["expected"].items()) {
          entry.expected[key] = value.get<std::string>();
        }
      }
      entries.push_back(std::move(entry));
    } catch (const Json::exception& e) {
      throw Error(ErrorKind::kParse, "manifest.json: " + std::string(e.what()));
    }
  }
  return entries;
}

GameDocument load_fixture_game(const FixtureEntry& entry) {
  return parse_game(read_text_file(entry.game_file));
}

MediatedProfile load_fixture_profile(const FixtureEntry& entry, const GameForm& game) {
  if (!entry.profile_file) {
    throw Error(ErrorKind::kValidation, "fixture " + entry.name + " has no profile");
  }
  return parse_profile(read_text_file(*entry.profile_file), game);
}

bool FixtureReport::all_passed() const { return failures() == 0; }

std::size_t FixtureReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const FixtureCheck& c) { return !c.passed; }));
}

FixtureReport run_fixture_suite(const std::filesystem::path& dir) {
  Suite suite;
  std::vector<FixtureEntry> entries;
  try {
    entries = load_manifest(dir);
  } catch (const std::exception& e) {
    suite.add("manifest", false, e.what());
    return suite.take();
  }
  for (const auto& entry : entries) check_entry(suite, entry);
  check_fig3_threshold_types(suite, entries);
  check_fig5_structure(suite, entries);
  check_fig6_separation(suite, entries);
  return suite.take();
}

std::vector<Rational> random_distribution(Prng& rng, std::size_t size, std::size_t max_weight) {
  std::vector<std::int64_t> weights(size);
  std::int64_t total = 0;
  for (auto& w : weights) {
    w = static_cast<std::int64_t>(rng.below(max_weight + 1));
    total += w;
  }
  if (total == 0) {
    weights[rng.below(size)] = 1;
    total = 1;
  }
  std::vector<Rational> out;
  out.reserve(size);
  for (auto w : weights) out.emplace_back(w, total);
  return out;
}

MediatedProfile random_profile(Prng& rng, const GameForm& game, std::size_t max_weight) {
  MediatedProfile profile;
  profile.p = random_distribution(rng, game.num_profiles(), max_weight);
  for (PlayerId i = 0; i < game.num_players(); ++i) {
    profile.q.push_back(random_distribution(rng, game.num_opponent_profiles(i), max_weight));
  }
  return profile;
}

UtilityVector random_utility(Prng& rng, std::size_t num_outcomes, std::size_t denominator) {
  UtilityVector u;
  u.reserve(num_outcomes);
  for (std::size_t o = 0; o < num_outcomes; ++o) {
    u.emplace_back(static_cast<std::int64_t>(rng.below(denominator + 1)),
                   static_cast<std::int64_t>(denominator));
  }
  return u;
}

PartialOrderSpace random_partial_order(Prng& rng, std::size_t num_outcomes) {
  const auto rank = shuffled(rng, num_outcomes);
  PartialOrderSpace space;
  for (std::size_t x = 0; x < num_outcomes; ++x) {
    for (std::size_t y = x + 1; y < num_outcomes; ++y) {
      if (rng.chance(1, 3)) space.pairs.push_back({rank[x], rank[y]});
    }
  }
  // An occasional back edge creates ties.
  if (num_outcomes >= 2 && rng.chance(1, 8)) {
    const std::size_t x = rng.below(num_outcomes);
    const std::size_t y = rng.below(num_outcomes);
    if (x != y) space.pairs.push_back({rank[std::max(x, y)], rank[std::min(x, y)]});
  }
  return space;
}

TotalOrderSpace random_total_order(Prng& rng, std::size_t num_outcomes) {
  return TotalOrderSpace{shuffled(rng, num_outcomes)};
}

PreBayesianGame random_game(std::uint64_t seed, const RandomGameBounds& bounds) {
  Prng rng(seed);
  const std::size_t players = rng.between(bounds.min_players, bounds.max_players);
  std::vector<std::vector<std::string>> action_sets;
  std::size_t total = 1;
  for (PlayerId i = 0; i < players; ++i) {
    const std::size_t count = rng.between(std::max<std::size_t>(1, bounds.min_actions),
                                          std::max(bounds.min_actions, bounds.max_actions));
    std::vector<std::string> names;
    for (std::size_t a = 0; a < count; ++a) names.push_back("a" + std::to_string(a + 1));
    action_sets.push_back(std::move(names));
    total *= count;
  }
  std::size_t num_outcomes = rng.between(std::max<std::size_t>(1, bounds.min_outcomes),
                                         std::max(bounds.min_outcomes, bounds.max_outcomes));
  num_outcomes = std::min(num_outcomes, total);
  std::vector<std::string> outcomes;
  for (std::size_t o = 0; o < num_outcomes; ++o) outcomes.push_back("o" + std::to_string(o + 1));

  // Every outcome lands on at least one profile.
  std::vector<OutcomeId> map(total);
  const auto cells = shuffled(rng, total);
  for (std::size_t k = 0; k < total; ++k) {
    map[cells[k]] = k < num_outcomes ? k : rng.below(num_outcomes);
  }

  PreBayesianGame game;
  game.form = GameForm(std::move(action_sets), std::move(outcomes), std::move(map));
  for (PlayerId i = 0; i < players; ++i) {
    game.spaces.push_back(random_space(rng, bounds.kind, num_outcomes, bounds));
  }
  return game;
}

}  // namespace ordeq

#include "ordeq/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "ordeq/error.hpp"

namespace ordeq {

using Json = nlohmann::ordered_json;

namespace {

[[noreturn]] void parse_fail(const std::string& path, const std::string& message) {
  throw Error(ErrorKind::kParse, path + ": " + message);
}

[[noreturn]] void invalid(const std::string& path, const std::string& message) {
  throw Error(ErrorKind::kValidation, path + ": " + message);
}

const Json& field(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) parse_fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) parse_fail(path, std::string("missing field \"") + key + "\"");
  return *it;
}

std::string as_string(const Json& value, const std::string& path) {
  if (!value.is_string()) parse_fail(path, "expected a string");
  return value.get<std::string>();
}

const Json& as_array(const Json& value, const std::string& path) {
  if (!value.is_array()) parse_fail(path, "expected an array");
  return value;
}

Rational as_rational(const Json& value, const std::string& path) {
  if (!value.is_string()) {
    parse_fail(path, "rationals must be strings like \"3/5\", got " + value.dump());
  }
  try {
    return Rational::parse(value.get<std::string>());
  } catch (const Error& e) {
    parse_fail(path, e.what());
  }
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::kParse, std::string("malformed JSON: ") + e.what());
  }
}

OutcomeId outcome_ref(const GameForm& game, const Json& value, const std::string& path) {
  const std::string name = as_string(value, path);
  try {
    return game.outcome_id(name);
  } catch (const Error&) {
    invalid(path, "unknown outcome '" + name + "'");
  }
}

OutcomePair pair_ref(const GameForm& game, const Json& value, const std::string& path) {
  if (!value.is_array() || value.size() != 2) parse_fail(path, "expected [better, worse]");
  return {outcome_ref(game, value[0], path + "[0]"), outcome_ref(game, value[1], path + "[1]")};
}

/// {outcome: rat} with omitted outcomes 0.
OutcomeDistribution outcome_map_values(const GameForm& game, const Json& value,
                                       const std::string& path, bool require_all) {
  if (!value.is_object()) parse_fail(path, "expected an object of outcome: rational");
  OutcomeDistribution out(game.num_outcomes());
  std::vector<bool> seen(game.num_outcomes(), false);
  for (const auto& [name, weight] : value.items()) {
    OutcomeId o = 0;
    try {
      o = game.outcome_id(name);
    } catch (const Error&) {
      invalid(path, "unknown outcome '" + name + "'");
    }
    out[o] = as_rational(weight, path + "." + name);
    seen[o] = true;
  }
  if (require_all) {
    for (OutcomeId o = 0; o < seen.size(); ++o) {
      if (!seen[o]) invalid(path, "no utility for outcome '" + game.outcomes()[o] + "'");
    }
  }
  return out;
}

TypeSpaceSpec parse_space(const GameForm& game, const Json& value, const std::string& path) {
  const std::string kind = as_string(field(value, "kind", path), path + ".kind");
  if (kind == "finite") {
    FiniteSpace space;
    const Json& types = as_array(field(value, "types", path), path + ".types");
    for (std::size_t t = 0; t < types.size(); ++t) {
      space.types.push_back(
          outcome_map_values(game, types[t], path + ".types[" + std::to_string(t) + "]", true));
    }
    return space;
  }
  if (kind == "total_order") {
    TotalOrderSpace space;
    const Json& order = as_array(field(value, "order", path), path + ".order");
    for (std::size_t k = 0; k < order.size(); ++k) {
      space.order.push_back(outcome_ref(game, order[k], path + ".order[" + std::to_string(k) + "]"));
    }
    return space;
  }
  if (kind == "partial_order") {
    PartialOrderSpace space;
    const Json& pairs = as_array(field(value, "pairs", path), path + ".pairs");
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      space.pairs.push_back(pair_ref(game, pairs[k], path + ".pairs[" + std::to_string(k) + "]"));
    }
    return space;
  }
  if (kind == "distribution_order") {
    DistributionOrderSpace space;
    const Json& pairs = as_array(field(value, "pairs", path), path + ".pairs");
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const std::string at = path + ".pairs[" + std::to_string(k) + "]";
      if (!pairs[k].is_array() || pairs[k].size() != 2) parse_fail(at, "expected [lottery, lottery]");
      space.pairs.push_back({outcome_map_values(game, pairs[k][0], at + "[0]", false),
                             outcome_map_values(game, pairs[k][1], at + "[1]", false)});
    }
    return space;
  }
  if (kind == "preference_cnf") {
    PreferenceCnfSpace space;
    const Json& clauses = as_array(field(value, "clauses", path), path + ".clauses");
    for (std::size_t c = 0; c < clauses.size(); ++c) {
      const std::string at = path + ".clauses[" + std::to_string(c) + "]";
      const Json& atoms = as_array(clauses[c], at);
      std::vector<OutcomePair> clause;
      for (std::size_t k = 0; k < atoms.size(); ++k) {
        clause.push_back(pair_ref(game, atoms[k], at + "[" + std::to_string(k) + "]"));
      }
      space.clauses.push_back(std::move(clause));
    }
    return space;
  }
  parse_fail(path + ".kind", "unknown type space kind '" + kind + "'");
}

Json outcome_values_json(const GameForm& game, const OutcomeDistribution& values, bool skip_zero) {
  Json obj = Json::object();
  for (OutcomeId o = 0; o < values.size(); ++o) {
    if (skip_zero && values[o].is_zero()) continue;
    obj[game.outcomes()[o]] = values[o].str();
  }
  return obj;
}

Json pair_json(const GameForm& game, const OutcomePair& pair) {
  return Json::array({game.outcomes()[pair.better], game.outcomes()[pair.worse]});
}

Json space_json(const GameForm& game, const TypeSpaceSpec& spec) {
  Json obj = Json::object();
  obj["kind"] = space_kind_name(spec);
  if (const auto* finite = std::get_if<FiniteSpace>(&spec)) {
    Json types = Json::array();
    for (const auto& u : finite->types) types.push_back(outcome_values_json(game, u, false));
    obj["types"] = std::move(types);
  } else if (const auto* total = std::get_if<TotalOrderSpace>(&spec)) {
    Json order = Json::array();
    for (OutcomeId o : total->order) order.push_back(game.outcomes()[o]);
    obj["order"] = std::move(order);
  } else if (const auto* partial = std::get_if<PartialOrderSpace>(&spec)) {
    Json pairs = Json::array();
    for (const auto& pair : partial->pairs) pairs.push_back(pair_json(game, pair));
    obj["pairs"] = std::move(pairs);
  } else if (const auto* dist = std::get_if<DistributionOrderSpace>(&spec)) {
    Json pairs = Json::array();
    for (const auto& pair : dist->pairs) {
      pairs.push_back(Json::array({outcome_values_json(game, pair.better, true),
                                   outcome_values_json(game, pair.worse, true)}));
    }
    obj["pairs"] = std::move(pairs);
  } else {
    Json clauses = Json::array();
    for (const auto& clause : std::get<PreferenceCnfSpace>(spec).clauses) {
      Json atoms = Json::array();
      for (const auto& atom : clause) atoms.push_back(pair_json(game, atom));
      clauses.push_back(std::move(atoms));
    }
    obj["clauses"] = std::move(clauses);
  }
  return obj;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k > 0) out += ',';
    out += parts[k];
  }
  return out;
}

std::vector<Rational> distribution_from_keys(const Json& value, const std::string& path,
                                             std::size_t size,
                                             const std::vector<std::string>& keys) {
  if (!value.is_object()) parse_fail(path, "expected an object of key: rational");
  std::vector<Rational> out(size);
  for (const auto& [key, weight] : value.items()) {
    std::size_t index = size;
    for (std::size_t k = 0; k < size; ++k) {
      if (keys[k] == key) {
        index = k;
        break;
      }
    }
    if (index == size) invalid(path, "unknown profile '" + key + "'");
    out[index] = as_rational(weight, path + "." + key);
  }
  return out;
}

std::vector<std::string> all_profile_keys(const GameForm& game) {
  std::vector<std::string> keys;
  for (std::size_t a = 0; a < game.num_profiles(); ++a) keys.push_back(profile_key(game, a));
  return keys;
}

}  // namespace

std::string profile_key(const GameForm& game, std::size_t profile_index) {
  const ActionProfile profile = game.profile_at(profile_index);
  std::vector<std::string> names;
  for (PlayerId i = 0; i < profile.size(); ++i) names.push_back(game.action_sets()[i][profile[i]]);
  return join(names);
}

std::string opponents_key(const GameForm& game, PlayerId i, std::size_t opponents_index) {
  const ActionProfile others = game.opponents_at(i, opponents_index);
  std::vector<std::string> names;
  std::size_t k = 0;
  for (PlayerId j = 0; j < game.num_players(); ++j) {
    if (j == i) continue;
    names.push_back(game.action_sets()[j][others[k++]]);
  }
  return join(names);
}

std::size_t parse_profile_key(const GameForm& game, std::string_view key) {
  ActionProfile profile;
  std::size_t start = 0;
  for (PlayerId i = 0; i < game.num_players(); ++i) {
    const std::size_t comma = key.find(',', start);
    const bool last = i + 1 == game.num_players();
    if (last != (comma == std::string_view::npos)) {
      throw Error(ErrorKind::kValidation, "profile '" + std::string(key) + "' has the wrong arity");
    }
    const std::string name(key.substr(start, last ? std::string_view::npos : comma - start));
    profile.push_back(game.action_id(i, name));
    start = comma + 1;
  }
  return game.profile_index(profile);
}

GameDocument parse_game(std::string_view text) {
  const Json root = parse_json(text);
  if (!root.is_object()) parse_fail("game", "expected a JSON object");
  GameDocument doc;
  if (root.contains("name")) doc.name = as_string(root["name"], "name");
  if (root.contains("source")) doc.source = as_string(root["source"], "source");

  const Json& players = field(root, "players", "game");
  if (!players.is_number_integer()) parse_fail("players", "expected an integer");
  const Json& actions = as_array(field(root, "actions", "game"), "actions");
  if (players.get<long long>() != static_cast<long long>(actions.size())) {
    invalid("players", "declares " + players.dump() + " players but " +
                           std::to_string(actions.size()) + " action lists are given");
  }
  std::vector<std::vector<std::string>> action_sets;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const std::string at = "actions[" + std::to_string(i) + "]";
    std::vector<std::string> names;
    for (std::size_t a = 0; a < as_array(actions[i], at).size(); ++a) {
      std::string name = as_string(actions[i][a], at + "[" + std::to_string(a) + "]");
      if (name.empty() || name.find(',') != std::string::npos) {
        invalid(at, "action names must be nonempty and free of commas");
      }
      names.push_back(std::move(name));
    }
    action_sets.push_back(std::move(names));
  }
  std::vector<std::string> outcomes;
  const Json& outcome_list = as_array(field(root, "outcomes", "game"), "outcomes");
  for (std::size_t o = 0; o < outcome_list.size(); ++o) {
    outcomes.push_back(as_string(outcome_list[o], "outcomes[" + std::to_string(o) + "]"));
  }

  // Build a provisional form to resolve profile keys, then fill in the map.
  std::size_t total = 1;
  for (const auto& set : action_sets) total *= set.size();
  if (action_sets.size() < 2) invalid("players", "a game needs at least 2 players");
  if (total == 0) invalid("actions", "every player needs at least one action");
  if (outcomes.empty()) invalid("outcomes", "no outcomes");
  std::vector<OutcomeId> provisional(total, 0);
  GameForm keys_only;
  try {
    keys_only = GameForm(action_sets, outcomes, provisional);
  } catch (const Error& e) {
    invalid("game", e.what());
  }

  const Json& map = field(root, "outcome_map", "game");
  if (!map.is_object()) parse_fail("outcome_map", "expected an object");
  std::vector<std::optional<OutcomeId>> cells(total);
  for (const auto& [key, value] : map.items()) {
    std::size_t index = 0;
    try {
      index = parse_profile_key(keys_only, key);
    } catch (const Error& e) {
      invalid("outcome_map." + key, e.what());
    }
    if (cells[index]) invalid("outcome_map." + key, "profile listed twice");
    cells[index] = outcome_ref(keys_only, value, "outcome_map." + key);
  }
  std::vector<OutcomeId> outcome_map;
  for (std::size_t a = 0; a < total; ++a) {
    if (!cells[a]) invalid("outcome_map", "no outcome for profile '" + profile_key(keys_only, a) + "'");
    outcome_map.push_back(*cells[a]);
  }
  doc.game.form = GameForm(std::move(action_sets), std::move(outcomes), std::move(outcome_map));

  const Json& spaces = as_array(field(root, "type_spaces", "game"), "type_spaces");
  if (spaces.size() != doc.game.form.num_players()) {
    invalid("type_spaces", "expected one type space per player");
  }
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    const std::string at = "type_spaces[" + std::to_string(i) + "]";
    TypeSpaceSpec spec = parse_space(doc.game.form, spaces[i], at);
    try {
      validate_space(spec, doc.game.form.num_outcomes());
    } catch (const Error& e) {
      invalid(at, e.what());
    }
    doc.game.spaces.push_back(std::move(spec));
  }
  return doc;
}

std::string serialize_game(const GameDocument& doc) {
  const GameForm& game = doc.game.form;
  Json root = Json::object();
  if (!doc.name.empty()) root["name"] = doc.name;
  if (!doc.source.empty()) root["source"] = doc.source;
  root["players"] = game.num_players();
  root["actions"] = game.action_sets();
  root["outcomes"] = game.outcomes();
  Json map = Json::object();
  for (std::size_t a = 0; a < game.num_profiles(); ++a) {
    map[profile_key(game, a)] = game.outcomes()[game.outcome_of(a)];
  }
  root["outcome_map"] = std::move(map);
  Json spaces = Json::array();
  for (const auto& spec : doc.game.spaces) spaces.push_back(space_json(game, spec));
  root["type_spaces"] = std::move(spaces);
  return root.dump(2) + "\n";
}

MediatedProfile parse_profile(std::string_view text, const GameForm& game, bool require_q) {
  const Json root = parse_json(text);
  if (!root.is_object()) parse_fail("profile", "expected a JSON object");
  MediatedProfile profile;
  profile.p = distribution_from_keys(field(root, "p", "profile"), "p", game.num_profiles(),
                                     all_profile_keys(game));
  validate_distribution(profile.p, game.num_profiles(), "p");
  if (!root.contains("q")) {
    if (require_q) parse_fail("profile", "missing field \"q\"");
    profile.q.assign(game.num_players(), {});
    return profile;
  }
  const Json& q = as_array(root["q"], "q");
  if (q.size() != game.num_players()) invalid("q", "expected one punishment distribution per player");
  for (PlayerId i = 0; i < game.num_players(); ++i) {
    std::vector<std::string> keys;
    for (std::size_t k = 0; k < game.num_opponent_profiles(i); ++k) {
      keys.push_back(opponents_key(game, i, k));
    }
    const std::string at = "q[" + std::to_string(i) + "]";
    profile.q.push_back(distribution_from_keys(q[i], at, keys.size(), keys));
    validate_distribution(profile.q.back(), keys.size(), at);
  }
  return profile;
}

std::string serialize_profile(const MediatedProfile& profile, const GameForm& game) {
  Json root = Json::object();
  Json p = Json::object();
  for (std::size_t a = 0; a < profile.p.size(); ++a) {
    if (!profile.p[a].is_zero()) p[profile_key(game, a)] = profile.p[a].str();
  }
  root["p"] = std::move(p);
  Json q = Json::array();
  for (PlayerId i = 0; i < profile.q.size(); ++i) {
    Json block = Json::object();
    for (std::size_t k = 0; k < profile.q[i].size(); ++k) {
      if (!profile.q[i][k].is_zero()) block[opponents_key(game, i, k)] = profile.q[i][k].str();
    }
    q.push_back(std::move(block));
  }
  root["q"] = std::move(q);
  return root.dump(2) + "\n";
}

std::vector<Rational> parse_profile_map(std::string_view text, const GameForm& game) {
  return distribution_from_keys(parse_json(text), "objective", game.num_profiles(),
                                all_profile_keys(game));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kParse, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace ordeq

#include "ordeq/game.hpp"

#include <set>
#include <string>

#include "ordeq/error.hpp"

namespace ordeq {

GameForm::GameForm(std::vector<std::vector<std::string>> action_sets,
                   std::vector<std::string> outcomes, std::vector<OutcomeId> outcome_map)
    : action_sets_(std::move(action_sets)),
      outcomes_(std::move(outcomes)),
      outcome_map_(std::move(outcome_map)) {
  if (action_sets_.size() < 2) throw Error(ErrorKind::kValidation, "a game needs at least 2 players");
  std::size_t total = 1;
  for (std::size_t i = 0; i < action_sets_.size(); ++i) {
    if (action_sets_[i].empty()) {
      throw Error(ErrorKind::kValidation, "player " + std::to_string(i + 1) + " has no actions");
    }
    std::set<std::string> names(action_sets_[i].begin(), action_sets_[i].end());
    if (names.size() != action_sets_[i].size()) {
      throw Error(ErrorKind::kValidation,
                  "duplicate action name for player " + std::to_string(i + 1));
    }
    total *= action_sets_[i].size();
  }
  if (outcomes_.empty()) throw Error(ErrorKind::kValidation, "no outcomes");
  std::set<std::string> names(outcomes_.begin(), outcomes_.end());
  if (names.size() != outcomes_.size()) throw Error(ErrorKind::kValidation, "duplicate outcome name");
  if (outcome_map_.size() != total) {
    throw Error(ErrorKind::kValidation, "outcome map covers " + std::to_string(outcome_map_.size()) +
                                            " of " + std::to_string(total) + " profiles");
  }
  for (OutcomeId o : outcome_map_) {
    if (o >= outcomes_.size()) throw Error(ErrorKind::kValidation, "outcome map entry out of range");
  }
  strides_.assign(action_sets_.size(), 1);
  for (std::size_t i = action_sets_.size() - 1; i > 0; --i) {
    strides_[i - 1] = strides_[i] * action_sets_[i].size();
  }
}

std::size_t GameForm::num_opponent_profiles(PlayerId i) const {
  return num_profiles() / num_actions(i);
}

std::size_t GameForm::profile_index(const ActionProfile& profile) const {
  std::size_t index = 0;
  for (std::size_t i = 0; i < profile.size(); ++i) index += profile[i] * strides_[i];
  return index;
}

ActionProfile GameForm::profile_at(std::size_t index) const {
  ActionProfile profile(num_players());
  for (std::size_t i = 0; i < num_players(); ++i) {
    profile[i] = (index / strides_[i]) % action_sets_[i].size();
  }
  return profile;
}

std::size_t GameForm::action_of(std::size_t profile_index, PlayerId i) const {
  return (profile_index / strides_[i]) % action_sets_[i].size();
}

std::size_t GameForm::opponents_index(std::size_t profile_index, PlayerId i) const {
  // Drop player i's digit from the mixed-radix index.
  const std::size_t high = profile_index / (strides_[i] * action_sets_[i].size());
  const std::size_t low = profile_index % strides_[i];
  return high * strides_[i] + low;
}

ActionProfile GameForm::opponents_at(PlayerId i, std::size_t opponents_index) const {
  const ActionProfile full = profile_at(combine(i, 0, opponents_index));
  ActionProfile out;
  for (std::size_t j = 0; j < num_players(); ++j) {
    if (j != i) out.push_back(full[j]);
  }
  return out;
}

std::size_t GameForm::combine(PlayerId i, std::size_t action, std::size_t opponents_index) const {
  const std::size_t high = opponents_index / strides_[i];
  const std::size_t low = opponents_index % strides_[i];
  return (high * action_sets_[i].size() + action) * strides_[i] + low;
}

OutcomeId GameForm::outcome_id(const std::string& name) const {
  for (OutcomeId o = 0; o < outcomes_.size(); ++o) {
    if (outcomes_[o] == name) return o;
  }
  throw Error(ErrorKind::kUnknownOutcome, "unknown outcome '" + name + "'");
}

std::size_t GameForm::action_id(PlayerId i, const std::string& name) const {
  for (std::size_t a = 0; a < action_sets_[i].size(); ++a) {
    if (action_sets_[i][a] == name) return a;
  }
  throw Error(ErrorKind::kValidation,
              "unknown action '" + name + "' for player " + std::to_string(i + 1));
}

std::vector<ActionProfile> profiles_of(const GameForm& game) {
  std::vector<ActionProfile> out;
  out.reserve(game.num_profiles());
  for (std::size_t k = 0; k < game.num_profiles(); ++k) out.push_back(game.profile_at(k));
  return out;
}

std::vector<ActionProfile> opponents_profiles_of(const GameForm& game, PlayerId i) {
  std::vector<ActionProfile> out;
  out.reserve(game.num_opponent_profiles(i));
  for (std::size_t k = 0; k < game.num_opponent_profiles(i); ++k) {
    out.push_back(game.opponents_at(i, k));
  }
  return out;
}

OutcomeDistribution outcome_distribution(const GameForm& game, const std::vector<Rational>& dist) {
  OutcomeDistribution out(game.num_outcomes());
  for (std::size_t k = 0; k < game.num_profiles(); ++k) out[game.outcome_of(k)] += dist[k];
  return out;
}

OutcomeDistribution deviation_distribution(const GameForm& game, PlayerId i, std::size_t action,
                                           const std::vector<Rational>& q) {
  OutcomeDistribution out(game.num_outcomes());
  for (std::size_t k = 0; k < game.num_opponent_profiles(i); ++k) {
    out[game.outcome_of(game.combine(i, action, k))] += q[k];
  }
  return out;
}

std::size_t PreferenceRelation::count() const {
  std::size_t total = 0;
  for (bool b : bits_) total += b ? 1 : 0;
  return total;
}

PreferenceRelation transitive_closure(PreferenceRelation relation) {
  const std::size_t n = relation.size();
  for (std::size_t o = 0; o < n; ++o) relation.set(o, o);
  for (std::size_t mid = 0; mid < n; ++mid) {
    for (std::size_t a = 0; a < n; ++a) {
      if (!relation.holds(a, mid)) continue;
      for (std::size_t b = 0; b < n; ++b) {
        if (relation.holds(mid, b)) relation.set(a, b);
      }
    }
  }
  return relation;
}

PreferenceRelation partial_order_closure(std::size_t num_outcomes,
                                         const std::vector<OutcomePair>& pairs) {
  PreferenceRelation relation(num_outcomes);
  for (const auto& pair : pairs) {
    if (pair.better >= num_outcomes || pair.worse >= num_outcomes) {
      throw Error(ErrorKind::kUnknownOutcome, "preference pair references unknown outcome");
    }
    relation.set(pair.better, pair.worse);
  }
  return transitive_closure(std::move(relation));
}

std::string space_kind_name(const TypeSpaceSpec& spec) {
  struct Visitor {
    std::string operator()(const FiniteSpace&) const { return "finite"; }
    std::string operator()(const TotalOrderSpace&) const { return "total_order"; }
    std::string operator()(const PartialOrderSpace&) const { return "partial_order"; }
    std::string operator()(const DistributionOrderSpace&) const { return "distribution_order"; }
    std::string operator()(const PreferenceCnfSpace&) const { return "preference_cnf"; }
  };
  return std::visit(Visitor{}, spec);
}

namespace {

void check_outcome(OutcomeId o, std::size_t num_outcomes) {
  if (o >= num_outcomes) throw Error(ErrorKind::kUnknownOutcome, "outcome id out of range");
}

void check_utility(const UtilityVector& u, std::size_t num_outcomes) {
  if (u.size() != num_outcomes) {
    throw Error(ErrorKind::kValidation, "utility vector does not cover every outcome");
  }
  for (const auto& value : u) {
    if (value.sign() < 0 || value > Rational(1)) {
      throw Error(ErrorKind::kValidation, "utility " + value.str() + " outside [0,1]");
    }
  }
}

}  // namespace

void validate_space(const TypeSpaceSpec& spec, std::size_t num_outcomes) {
  if (const auto* finite = std::get_if<FiniteSpace>(&spec)) {
    for (const auto& u : finite->types) check_utility(u, num_outcomes);
  } else if (const auto* total = std::get_if<TotalOrderSpace>(&spec)) {
    if (total->order.size() != num_outcomes) {
      throw Error(ErrorKind::kValidation, "total order must list every outcome exactly once");
    }
    std::vector<bool> seen(num_outcomes, false);
    for (OutcomeId o : total->order) {
      check_outcome(o, num_outcomes);
      if (seen[o]) throw Error(ErrorKind::kValidation, "total order repeats an outcome");
      seen[o] = true;
    }
  } else if (const auto* partial = std::get_if<PartialOrderSpace>(&spec)) {
    for (const auto& pair : partial->pairs) {
      check_outcome(pair.better, num_outcomes);
      check_outcome(pair.worse, num_outcomes);
    }
  } else if (const auto* dist = std::get_if<DistributionOrderSpace>(&spec)) {
    for (const auto& pair : dist->pairs) {
      validate_distribution(pair.better, num_outcomes, "preferred lottery");
      validate_distribution(pair.worse, num_outcomes, "dispreferred lottery");
    }
  } else if (const auto* cnf = std::get_if<PreferenceCnfSpace>(&spec)) {
    for (const auto& clause : cnf->clauses) {
      for (const auto& atom : clause) {
        check_outcome(atom.better, num_outcomes);
        check_outcome(atom.worse, num_outcomes);
      }
    }
  }
}

std::vector<OutcomePair> chain_pairs(const TotalOrderSpace& order) {
  std::vector<OutcomePair> pairs;
  for (std::size_t k = 0; k + 1 < order.order.size(); ++k) {
    pairs.push_back({order.order[k], order.order[k + 1]});
  }
  return pairs;
}

void validate_distribution(const std::vector<Rational>& dist, std::size_t size,
                           const std::string& what) {
  if (dist.size() != size) throw Error(ErrorKind::kValidation, what + " has the wrong length");
  Rational total;
  for (const auto& w : dist) {
    if (w.sign() < 0) throw Error(ErrorKind::kValidation, what + " has a negative entry");
    total += w;
  }
  if (total != Rational(1)) {
    throw Error(ErrorKind::kValidation, what + " sums to " + total.str() + ", not 1");
  }
}

void validate_profile(const GameForm& game, const MediatedProfile& profile) {
  validate_distribution(profile.p, game.num_profiles(), "on-path distribution");
  if (profile.q.size() != game.num_players()) {
    throw Error(ErrorKind::kValidation, "expected one punishment distribution per player");
  }
  for (PlayerId i = 0; i < game.num_players(); ++i) {
    validate_distribution(profile.q[i], game.num_opponent_profiles(i),
                          "punishment distribution for player " + std::to_string(i + 1));
  }
}

MediatedProfile pure_profile(const GameForm& game, std::size_t profile_index) {
  MediatedProfile profile;
  profile.p.assign(game.num_profiles(), Rational(0));
  profile.p[profile_index] = Rational(1);
  for (PlayerId i = 0; i < game.num_players(); ++i) {
    std::vector<Rational> q(game.num_opponent_profiles(i), Rational(0));
    q[game.opponents_index(profile_index, i)] = Rational(1);
    profile.q.push_back(std::move(q));
  }
  return profile;
}

}  // namespace ordeq

#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "ordeq/rational.hpp"

namespace ordeq {

using OutcomeId = std::size_t;
using PlayerId = std::size_t;
/// One action index per player.
using ActionProfile = std::vector<std::size_t>;
/// Utility per outcome (a concrete type's utility function), values in [0,1].
using UtilityVector = std::vector<Rational>;
/// Probability per outcome.
using OutcomeDistribution = std::vector<Rational>;

/// A normal-form game form: players, their actions, and the outcome each
/// full action profile selects. Profiles are indexed lexicographically with
/// player 0 most significant.
class GameForm {
 public:
  GameForm() = default;
  /// `outcome_map` is indexed by flat profile index. Throws Error(kValidation)
  /// unless n >= 2, every action set is nonempty, outcome names are distinct,
  /// and the map is total with valid outcome ids.
  GameForm(std::vector<std::vector<std::string>> action_sets, std::vector<std::string> outcomes,
           std::vector<OutcomeId> outcome_map);

  [[nodiscard]] std::size_t num_players() const { return action_sets_.size(); }
  [[nodiscard]] std::size_t num_actions(PlayerId i) const { return action_sets_[i].size(); }
  [[nodiscard]] std::size_t num_outcomes() const { return outcomes_.size(); }
  [[nodiscard]] std::size_t num_profiles() const { return outcome_map_.size(); }
  /// |A_{-i}|
  [[nodiscard]] std::size_t num_opponent_profiles(PlayerId i) const;

  [[nodiscard]] const std::vector<std::vector<std::string>>& action_sets() const {
    return action_sets_;
  }
  [[nodiscard]] const std::vector<std::string>& outcomes() const { return outcomes_; }
  [[nodiscard]] const std::vector<OutcomeId>& outcome_map() const { return outcome_map_; }

  [[nodiscard]] OutcomeId outcome_of(std::size_t profile_index) const {
    return outcome_map_[profile_index];
  }
  [[nodiscard]] std::size_t profile_index(const ActionProfile& profile) const;
  [[nodiscard]] ActionProfile profile_at(std::size_t index) const;
  /// Index of a_{-i} within A_{-i}, same lexicographic convention.
  [[nodiscard]] std::size_t opponents_index(std::size_t profile_index, PlayerId i) const;
  [[nodiscard]] ActionProfile opponents_at(PlayerId i, std::size_t opponents_index) const;
  /// Flat index of (a_i, a_{-i}).
  [[nodiscard]] std::size_t combine(PlayerId i, std::size_t action,
                                    std::size_t opponents_index) const;
  [[nodiscard]] std::size_t action_of(std::size_t profile_index, PlayerId i) const;

  /// Throws Error(kUnknownOutcome).
  [[nodiscard]] OutcomeId outcome_id(const std::string& name) const;
  /// Throws Error(kValidation) when the name is unknown.
  [[nodiscard]] std::size_t action_id(PlayerId i, const std::string& name) const;

  friend bool operator==(const GameForm&, const GameForm&) = default;

 private:
  std::vector<std::vector<std::string>> action_sets_;
  std::vector<std::string> outcomes_;
  std::vector<OutcomeId> outcome_map_;
  std::vector<std::size_t> strides_;
};

/// Enumerates A in lexicographic order (player 0 most significant).
std::vector<ActionProfile> profiles_of(const GameForm& game);
/// Enumerates A_{-i}; each entry lists the other players' actions in player order.
std::vector<ActionProfile> opponents_profiles_of(const GameForm& game, PlayerId i);

/// Pushes a distribution over action profiles forward through the outcome map.
OutcomeDistribution outcome_distribution(const GameForm& game, const std::vector<Rational>& dist);
/// Outcome distribution when player i plays `action` against q_{-i}.
OutcomeDistribution deviation_distribution(const GameForm& game, PlayerId i, std::size_t action,
                                           const std::vector<Rational>& q);

struct OutcomePair {
  OutcomeId better = 0;  ///< o in o >= o'
  OutcomeId worse = 0;   ///< o'
  friend bool operator==(const OutcomePair&, const OutcomePair&) = default;
};

/// Square boolean matrix: holds(o, o') iff o >= o' is entailed.
class PreferenceRelation {
 public:
  explicit PreferenceRelation(std::size_t n = 0) : n_(n), bits_(n * n, false) {}
  [[nodiscard]] std::size_t size() const { return n_; }
  [[nodiscard]] bool holds(OutcomeId better, OutcomeId worse) const {
    return bits_[better * n_ + worse];
  }
  void set(OutcomeId better, OutcomeId worse) { bits_[better * n_ + worse] = true; }
  [[nodiscard]] std::size_t count() const;
  friend bool operator==(const PreferenceRelation&, const PreferenceRelation&) = default;

 private:
  std::size_t n_;
  std::vector<bool> bits_;
};

/// Smallest reflexive, transitive relation containing `pairs`. Cycles are
/// fine; they just make outcomes mutually entailed.
PreferenceRelation partial_order_closure(std::size_t num_outcomes,
                                         const std::vector<OutcomePair>& pairs);
/// Closure of an already-built relation (idempotent).
PreferenceRelation transitive_closure(PreferenceRelation relation);

// ---------------------------------------------------------------------------
// Type spaces.

struct FiniteSpace {
  std::vector<UtilityVector> types;
  friend bool operator==(const FiniteSpace&, const FiniteSpace&) = default;
};

/// Most-preferred outcome first; no ties.
struct TotalOrderSpace {
  std::vector<OutcomeId> order;
  friend bool operator==(const TotalOrderSpace&, const TotalOrderSpace&) = default;
};

struct PartialOrderSpace {
  std::vector<OutcomePair> pairs;
  friend bool operator==(const PartialOrderSpace&, const PartialOrderSpace&) = default;
};

/// r1 >= r2 between lotteries: E_r1[u] >= E_r2[u].
struct DistributionPair {
  OutcomeDistribution better;
  OutcomeDistribution worse;
  friend bool operator==(const DistributionPair&, const DistributionPair&) = default;
};

struct DistributionOrderSpace {
  std::vector<DistributionPair> pairs;
  friend bool operator==(const DistributionOrderSpace&, const DistributionOrderSpace&) = default;
};

/// Conjunction of clauses, each a disjunction of positive atoms o >= o'.
struct PreferenceCnfSpace {
  std::vector<std::vector<OutcomePair>> clauses;
  friend bool operator==(const PreferenceCnfSpace&, const PreferenceCnfSpace&) = default;
};

using TypeSpaceSpec = std::variant<FiniteSpace, TotalOrderSpace, PartialOrderSpace,
                                   DistributionOrderSpace, PreferenceCnfSpace>;

/// "finite", "total_order", ... as used in game documents.
std::string space_kind_name(const TypeSpaceSpec& spec);

/// Throws Error(kValidation) if the space breaks its invariants for a game
/// with `num_outcomes` outcomes.
void validate_space(const TypeSpaceSpec& spec, std::size_t num_outcomes);

/// The adjacent pairs of a total order, i.e. the order as a chain.
std::vector<OutcomePair> chain_pairs(const TotalOrderSpace& order);

// ---------------------------------------------------------------------------

/// On-path distribution p over A plus a joint punishment q_{-i} per player.
struct MediatedProfile {
  std::vector<Rational> p;
  std::vector<std::vector<Rational>> q;
  friend bool operator==(const MediatedProfile&, const MediatedProfile&) = default;
};

/// Throws Error(kValidation) unless sizes match the game and every
/// distribution is nonnegative and sums to exactly 1.
void validate_profile(const GameForm& game, const MediatedProfile& profile);
void validate_distribution(const std::vector<Rational>& dist, std::size_t size,
                           const std::string& what);

/// Point mass on one profile a, with every q_{-i} the point mass on a_{-i}.
MediatedProfile pure_profile(const GameForm& game, std::size_t profile_index);

/// A game form together with one type space per player.
struct PreBayesianGame {
  GameForm form;
  std::vector<TypeSpaceSpec> spaces;
  friend bool operator==(const PreBayesianGame&, const PreBayesianGame&) = default;
};

struct ObjectiveSpec {
  std::vector<Rational> g;  ///< per profile, in [0,1]
  Rational threshold;
};

}  // namespace ordeq

#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "ordeq/game.hpp"
#include "ordeq/lp.hpp"
#include "ordeq/typespace.hpp"

namespace ordeq {

/// sum_a u(o(a)) p(a) >= sum_{a_-i} u(o(deviation, a_-i)) q_-i(a_-i)
struct IncentiveConstraint {
  PlayerId player = 0;
  std::size_t deviation = 0;
  UtilityVector utility;
};

/// The robust-equilibrium linear program: one variable per p(a) and per
/// q_-i(a_-i), the normalization rows, nonnegativity, and a growing list of
/// incentive constraints.
///
/// A restricted instance fixes p to a given distribution and keeps only some
/// players' punishment blocks; the AARE decomposition uses one per player.
class Lp1Instance {
 public:
  explicit Lp1Instance(GameForm game);
  static Lp1Instance with_fixed_p(GameForm game, std::vector<Rational> p,
                                  std::vector<PlayerId> players);

  [[nodiscard]] const GameForm& game() const { return game_; }
  [[nodiscard]] std::size_t num_vars() const { return num_vars_; }
  [[nodiscard]] bool p_is_fixed() const { return fixed_p_.has_value(); }
  [[nodiscard]] bool has_player(PlayerId i) const { return q_offset_[i].has_value(); }
  [[nodiscard]] std::size_t p_var(std::size_t profile) const { return profile; }
  [[nodiscard]] std::size_t q_var(PlayerId i, std::size_t opponents) const {
    return *q_offset_[i] + opponents;
  }

  /// Throws Error(kValidation) if the constraint refers to a player whose
  /// punishment block is not part of this instance.
  void add(IncentiveConstraint constraint);
  [[nodiscard]] const std::vector<IncentiveConstraint>& incentives() const { return incentives_; }

  /// The LP (no objective). Duplicate and vacuous incentive rows are emitted once / not at all.
  [[nodiscard]] LinearProgram to_lp() const;
  /// Reads p and the present q blocks back from an LP assignment; absent
  /// players get an empty q.
  [[nodiscard]] MediatedProfile decode(const std::vector<Rational>& assignment) const;

 private:
  GameForm game_;
  std::optional<std::vector<Rational>> fixed_p_;
  std::vector<std::optional<std::size_t>> q_offset_;
  std::size_t num_vars_ = 0;
  std::vector<IncentiveConstraint> incentives_;
};

Lp1Instance build_lp1(const GameForm& game, std::vector<IncentiveConstraint> constraints);

/// One constraint per (i, type, a_i'), players in order.
std::vector<IncentiveConstraint> incentive_constraints_finite(
    const GameForm& game, const std::vector<FiniteSpace>& spaces);
/// The threshold types of each total order: for every (i, o, a_i') the
/// 0/1 type that is 1 exactly on outcomes ranked at least as high as o.
std::vector<IncentiveConstraint> incentive_constraints_total(
    const GameForm& game, const std::vector<TotalOrderSpace>& orders);

std::vector<IncentiveConstraint> player_constraints_finite(const GameForm& game, PlayerId i,
                                                           const FiniteSpace& space);
std::vector<IncentiveConstraint> player_constraints_total(const GameForm& game, PlayerId i,
                                                          const TotalOrderSpace& order);

struct Violation {
  PlayerId player = 0;
  std::size_t deviation = 0;
  UtilityVector witness;
  Rational amount;  ///< RHS - LHS at the witness, > 0
};

using SeparationResult = std::optional<Violation>;

/// v(o) = sum over a with o(a) = o of (q_-i(a_-i) [a_i = a_i'] - p(a)); the
/// deviation gain of a type u is sum_o v(o) u(o).
std::vector<Rational> deviation_gain_coefficients(const GameForm& game, PlayerId i,
                                                  std::size_t deviation,
                                                  const std::vector<Rational>& p,
                                                  const std::vector<Rational>& q_i);

/// Best 0/1 type whose 1-set is upward closed under `pairs`, found as a
/// maximum-weight closure (min cut).
SeparationResult separation_oracle_partial(const GameForm& game, PlayerId i,
                                           std::size_t deviation, const std::vector<Rational>& p,
                                           const std::vector<Rational>& q_i,
                                           const std::vector<OutcomePair>& pairs);

/// Best type in [0,1]^O satisfying the lottery comparisons, found by LP; the
/// witness is the basic optimal solution.
SeparationResult separation_oracle_dist(const GameForm& game, PlayerId i, std::size_t deviation,
                                        const std::vector<Rational>& p,
                                        const std::vector<Rational>& q_i,
                                        const DistributionOrderSpace& space);
SeparationResult separation_oracle_dist(const GameForm& game, PlayerId i, std::size_t deviation,
                                        const std::vector<Rational>& p,
                                        const std::vector<Rational>& q_i,
                                        const std::vector<OutcomePair>& pairs);

/// Point-mass lotteries for each pair.
DistributionOrderSpace embed_pairs(const std::vector<OutcomePair>& pairs,
                                   std::size_t num_outcomes);

struct EoreQuery {};
struct SireQuery {
  std::size_t target = 0;  ///< flat profile index of a*
};
struct AareQuery {
  std::vector<Rational> p;
};
struct OmireQuery {
  ObjectiveSpec objective;
};
using ProblemQuery = std::variant<EoreQuery, SireQuery, AareQuery, OmireQuery>;

struct SolveOptions {
  /// Solve AARE as one LP per player instead of the monolithic LP.
  bool decompose_aare = true;
  std::size_t max_rounds = 100000;
};

struct SolveAnswer {
  bool yes = false;
  /// Present exactly when yes.
  std::optional<MediatedProfile> profile;
  /// Optimum of the SIRE/OMIRE objective whenever LP 1 was feasible.
  std::optional<Rational> objective_value;
  std::size_t rounds = 0;
  std::size_t incentive_constraints = 0;
};

/// Answers EORE/SIRE/AARE/OMIRE. Finite and TotalOrder players contribute
/// their constraints up front; PartialOrder and DistributionOrder players are
/// handled by cutting planes, adding every violated constraint each round.
/// Throws Error(kUnsupportedSpace) for PreferenceCnf players.
SolveAnswer solve(const GameForm& game, const std::vector<TypeSpaceSpec>& spaces,
                  const ProblemQuery& query, const SolveOptions& options = {});

/// Profiles from which no unilateral deviation reaches an outcome that is
/// not entailed to be weakly worse.
std::vector<ActionProfile> find_pure_unmediated(const GameForm& game,
                                                const std::vector<TypeSpaceSpec>& spaces);

/// Throws Error(kValidation) on a player/space count mismatch or an invalid space.
void validate_spaces(const GameForm& game, const std::vector<TypeSpaceSpec>& spaces);

}  // namespace ordeq

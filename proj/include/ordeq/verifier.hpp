#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ordeq/equilibrium.hpp"
#include "ordeq/game.hpp"

namespace ordeq {

struct VerifyOptions {
  /// Partial orders with at most this many outcomes are also checked by
  /// enumerating every upward-closed 0/1 type.
  std::size_t cross_check_outcomes = 12;
};

/// Either a robust equilibrium, or the first (player, deviation) in order
/// for which some consistent type gains by deviating. The reported witness
/// is a type of maximal gain for that pair and `amount` is that gain.
struct VerifyReport {
  std::optional<Violation> violation;
  [[nodiscard]] bool robust() const { return !violation.has_value(); }
};

/// Checks every incentive constraint against every type of every player,
/// using a method suited to each space: direct evaluation for finite
/// spaces, stochastic dominance for total orders, min-cut (cross-checked by
/// enumeration when small) for partial orders and an LP for lottery
/// orders. Throws Error(kUnsupportedSpace) for preference-CNF spaces and
/// Error(kValidation) for malformed profiles.
VerifyReport verify(const GameForm& game, const std::vector<TypeSpaceSpec>& spaces,
                    const MediatedProfile& profile, const VerifyOptions& options = {});

/// Every upper set of the order gets at least as much mass under d1 as under d2.
bool stochastic_dominance(const TotalOrderSpace& order, const OutcomeDistribution& d1,
                          const OutcomeDistribution& d2);

/// max over player i's actions of the expected utility against q_-i.
Rational best_response_value(const GameForm& game, PlayerId i, const UtilityVector& u,
                             const std::vector<Rational>& q_i);

struct AveragingCheck {
  Rational lhs;  ///< best response value against the averaged punishment
  Rational rhs;  ///< average of best response values against each round
  bool holds = false;
};

/// Compares punishing with the average of `sequence` every round against
/// playing the sequence itself. `holds` is always expected to be true.
AveragingCheck averaging_dominates(const GameForm& game, PlayerId i, const UtilityVector& u,
                                   const std::vector<std::vector<Rational>>& sequence);

}  // namespace ordeq

#include "ordeq/verifier.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "ordeq/error.hpp"
#include "ordeq/typespace.hpp"

namespace ordeq {

namespace {

Rational on_path_value(const GameForm& game, const UtilityVector& u, const std::vector<Rational>& p) {
  Rational total;
  for (std::size_t a = 0; a < game.num_profiles(); ++a) total.add_product(p[a], u[game.outcome_of(a)]);
  return total;
}

Rational deviation_value(const GameForm& game, PlayerId i, std::size_t action,
                         const UtilityVector& u, const std::vector<Rational>& q_i) {
  Rational total;
  for (std::size_t k = 0; k < game.num_opponent_profiles(i); ++k) {
    total.add_product(q_i[k], u[game.outcome_of(game.combine(i, action, k))]);
  }
  return total;
}

/// Largest gain over an explicit list of types, if positive.
std::optional<Violation> best_listed(const GameForm& game, PlayerId i, std::size_t dev,
                                     const MediatedProfile& profile,
                                     const std::vector<UtilityVector>& types) {
  std::optional<Violation> best;
  for (const auto& u : types) {
    Rational gain = deviation_value(game, i, dev, u, profile.q[i]) - on_path_value(game, u, profile.p);
    if (gain.sign() > 0 && (!best || gain > best->amount)) best = Violation{i, dev, u, gain};
  }
  return best;
}

std::optional<Violation> check_total(const GameForm& game, PlayerId i, std::size_t dev,
                                     const MediatedProfile& profile,
                                     const TotalOrderSpace& order) {
  const OutcomeDistribution on_path = outcome_distribution(game, profile.p);
  const OutcomeDistribution deviating = deviation_distribution(game, i, dev, profile.q[i]);
  Rational on_path_mass;
  Rational deviation_mass;
  std::optional<Violation> worst;
  UtilityVector threshold(game.num_outcomes(), Rational(0));
  for (OutcomeId o : order.order) {
    on_path_mass += on_path[o];
    deviation_mass += deviating[o];
    threshold[o] = Rational(1);
    Rational deficit = deviation_mass - on_path_mass;
    if (deficit.sign() > 0 && (!worst || deficit > worst->amount)) {
      worst = Violation{i, dev, threshold, std::move(deficit)};
    }
  }
  return worst;
}

}  // namespace

bool stochastic_dominance(const TotalOrderSpace& order, const OutcomeDistribution& d1,
                          const OutcomeDistribution& d2) {
  Rational mass1;
  Rational mass2;
  for (OutcomeId o : order.order) {
    mass1 += d1.at(o);
    mass2 += d2.at(o);
    if (mass1 < mass2) return false;
  }
  return true;
}

VerifyReport verify(const GameForm& game, const std::vector<TypeSpaceSpec>& spaces,
                    const MediatedProfile& profile, const VerifyOptions& options) {
  validate_spaces(game, spaces);
  validate_profile(game, profile);
  for (PlayerId i = 0; i < game.num_players(); ++i) {
    const TypeSpaceSpec& spec = spaces[i];
    if (std::holds_alternative<PreferenceCnfSpace>(spec)) {
      throw Error(ErrorKind::kUnsupportedSpace,
                  "verify cannot certify preference-CNF spaces; use the extreme-type checker");
    }
    for (std::size_t dev = 0; dev < game.num_actions(i); ++dev) {
      std::optional<Violation> found;
      if (const auto* finite = std::get_if<FiniteSpace>(&spec)) {
        found = best_listed(game, i, dev, profile, finite->types);
      } else if (const auto* total = std::get_if<TotalOrderSpace>(&spec)) {
        found = check_total(game, i, dev, profile, *total);
      } else if (const auto* partial = std::get_if<PartialOrderSpace>(&spec)) {
        found = separation_oracle_partial(game, i, dev, profile.p, profile.q[i], partial->pairs);
        if (game.num_outcomes() <= options.cross_check_outcomes) {
          const auto listed = best_listed(game, i, dev, profile,
                                          enumerate_extreme_types(spec, game.num_outcomes()));
          const Rational oracle_gain = found ? found->amount : Rational(0);
          const Rational listed_gain = listed ? listed->amount : Rational(0);
          if (oracle_gain != listed_gain) {
            throw std::logic_error("min-cut oracle and up-set enumeration disagree: " +
                                   oracle_gain.str() + " vs " + listed_gain.str());
          }
        }
      } else {
        found = separation_oracle_dist(game, i, dev, profile.p, profile.q[i],
                                       std::get<DistributionOrderSpace>(spec));
      }
      if (found) return VerifyReport{std::move(found)};
    }
  }
  return VerifyReport{};
}

Rational best_response_value(const GameForm& game, PlayerId i, const UtilityVector& u,
                             const std::vector<Rational>& q_i) {
  validate_distribution(q_i, game.num_opponent_profiles(i), "punishment distribution");
  Rational best = deviation_value(game, i, 0, u, q_i);
  for (std::size_t a = 1; a < game.num_actions(i); ++a) {
    best = std::max(best, deviation_value(game, i, a, u, q_i));
  }
  return best;
}

AveragingCheck averaging_dominates(const GameForm& game, PlayerId i, const UtilityVector& u,
                                   const std::vector<std::vector<Rational>>& sequence) {
  if (sequence.empty()) throw Error(ErrorKind::kValidation, "empty punishment sequence");
  const Rational rounds(static_cast<std::int64_t>(sequence.size()));
  std::vector<Rational> average(game.num_opponent_profiles(i));
  Rational total;
  for (const auto& q : sequence) {
    total += best_response_value(game, i, u, q);
    for (std::size_t k = 0; k < average.size(); ++k) average[k] += q[k];
  }
  for (auto& w : average) w /= rounds;
  AveragingCheck check;
  check.lhs = best_response_value(game, i, u, average);
  check.rhs = total / rounds;
  check.holds = check.lhs <= check.rhs;
  return check;
}

}  // namespace ordeq

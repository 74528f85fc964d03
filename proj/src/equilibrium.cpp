#include "ordeq/equilibrium.hpp"

#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "ordeq/error.hpp"
#include "ordeq/flow.hpp"

namespace ordeq {

// ---------------------------------------------------------------------------
// Lp1Instance

Lp1Instance::Lp1Instance(GameForm game) : game_(std::move(game)) {
  num_vars_ = game_.num_profiles();
  for (PlayerId i = 0; i < game_.num_players(); ++i) {
    q_offset_.emplace_back(num_vars_);
    num_vars_ += game_.num_opponent_profiles(i);
  }
}

Lp1Instance Lp1Instance::with_fixed_p(GameForm game, std::vector<Rational> p,
                                      std::vector<PlayerId> players) {
  Lp1Instance inst(std::move(game));
  validate_distribution(p, inst.game_.num_profiles(), "fixed on-path distribution");
  inst.fixed_p_ = std::move(p);
  inst.q_offset_.assign(inst.game_.num_players(), std::nullopt);
  inst.num_vars_ = 0;
  for (PlayerId i : players) {
    if (i >= inst.game_.num_players()) throw Error(ErrorKind::kValidation, "unknown player");
    inst.q_offset_[i] = inst.num_vars_;
    inst.num_vars_ += inst.game_.num_opponent_profiles(i);
  }
  return inst;
}

void Lp1Instance::add(IncentiveConstraint constraint) {
  if (constraint.player >= game_.num_players() || !has_player(constraint.player)) {
    throw Error(ErrorKind::kValidation, "incentive constraint for a player outside this LP");
  }
  if (constraint.deviation >= game_.num_actions(constraint.player)) {
    throw Error(ErrorKind::kValidation, "incentive constraint with unknown deviation");
  }
  if (constraint.utility.size() != game_.num_outcomes()) {
    throw Error(ErrorKind::kValidation, "incentive constraint utility has the wrong length");
  }
  incentives_.push_back(std::move(constraint));
}

LinearProgram Lp1Instance::to_lp() const {
  LinearProgram lp(num_vars_);
  lp.set_all_nonnegative();
  if (!fixed_p_) {
    std::vector<Rational> row(num_vars_);
    for (std::size_t a = 0; a < game_.num_profiles(); ++a) row[p_var(a)] = Rational(1);
    lp.add_constraint(std::move(row), Relation::kEqual, Rational(1));
  }
  for (PlayerId i = 0; i < game_.num_players(); ++i) {
    if (!has_player(i)) continue;
    std::vector<Rational> row(num_vars_);
    for (std::size_t k = 0; k < game_.num_opponent_profiles(i); ++k) row[q_var(i, k)] = Rational(1);
    lp.add_constraint(std::move(row), Relation::kEqual, Rational(1));
  }

  std::set<std::pair<std::vector<Rational>, Rational>> emitted;
  for (const auto& c : incentives_) {
    std::vector<Rational> row(num_vars_);
    Rational rhs;
    for (std::size_t a = 0; a < game_.num_profiles(); ++a) {
      const Rational& u = c.utility[game_.outcome_of(a)];
      if (fixed_p_) {
        rhs.sub_product(u, (*fixed_p_)[a]);
      } else {
        row[p_var(a)] += u;
      }
    }
    for (std::size_t k = 0; k < game_.num_opponent_profiles(c.player); ++k) {
      row[q_var(c.player, k)] -= c.utility[game_.outcome_of(game_.combine(c.player, c.deviation, k))];
    }
    bool vacuous = rhs.sign() <= 0;
    for (const auto& a : row) {
      if (!a.is_zero()) {
        vacuous = false;
        break;
      }
    }
    if (vacuous) continue;
    if (!emitted.emplace(row, rhs).second) continue;
    lp.add_constraint(std::move(row), Relation::kGreaterEqual, std::move(rhs));
  }
  return lp;
}

MediatedProfile Lp1Instance::decode(const std::vector<Rational>& assignment) const {
  MediatedProfile profile;
  if (fixed_p_) {
    profile.p = *fixed_p_;
  } else {
    profile.p.assign(assignment.begin(),
                     assignment.begin() + static_cast<std::ptrdiff_t>(game_.num_profiles()));
  }
  for (PlayerId i = 0; i < game_.num_players(); ++i) {
    std::vector<Rational> q;
    if (has_player(i)) {
      for (std::size_t k = 0; k < game_.num_opponent_profiles(i); ++k) {
        q.push_back(assignment[q_var(i, k)]);
      }
    }
    profile.q.push_back(std::move(q));
  }
  return profile;
}

Lp1Instance build_lp1(const GameForm& game, std::vector<IncentiveConstraint> constraints) {
  Lp1Instance inst(game);
  for (auto& c : constraints) inst.add(std::move(c));
  return inst;
}

// ---------------------------------------------------------------------------
// Explicit constraint generators

std::vector<IncentiveConstraint> player_constraints_finite(const GameForm& game, PlayerId i,
                                                           const FiniteSpace& space) {
  validate_space(space, game.num_outcomes());
  std::vector<IncentiveConstraint> out;
  for (const auto& type : space.types) {
    for (std::size_t dev = 0; dev < game.num_actions(i); ++dev) out.push_back({i, dev, type});
  }
  return out;
}

std::vector<IncentiveConstraint> player_constraints_total(const GameForm& game, PlayerId i,
                                                          const TotalOrderSpace& order) {
  validate_space(order, game.num_outcomes());
  std::vector<IncentiveConstraint> out;
  UtilityVector threshold(game.num_outcomes(), Rational(0));
  for (OutcomeId o : order.order) {
    threshold[o] = Rational(1);
    for (std::size_t dev = 0; dev < game.num_actions(i); ++dev) out.push_back({i, dev, threshold});
  }
  return out;
}

std::vector<IncentiveConstraint> incentive_constraints_finite(
    const GameForm& game, const std::vector<FiniteSpace>& spaces) {
  if (spaces.size() != game.num_players()) {
    throw Error(ErrorKind::kValidation, "expected one type space per player");
  }
  std::vector<IncentiveConstraint> out;
  for (PlayerId i = 0; i < spaces.size(); ++i) {
    auto part = player_constraints_finite(game, i, spaces[i]);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::vector<IncentiveConstraint> incentive_constraints_total(
    const GameForm& game, const std::vector<TotalOrderSpace>& orders) {
  if (orders.size() != game.num_players()) {
    throw Error(ErrorKind::kValidation, "expected one total order per player");
  }
  std::vector<IncentiveConstraint> out;
  for (PlayerId i = 0; i < orders.size(); ++i) {
    auto part = player_constraints_total(game, i, orders[i]);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Separation oracles

std::vector<Rational> deviation_gain_coefficients(const GameForm& game, PlayerId i,
                                                  std::size_t deviation,
                                                  const std::vector<Rational>& p,
                                                  const std::vector<Rational>& q_i) {
  std::vector<Rational> v(game.num_outcomes());
  for (std::size_t a = 0; a < game.num_profiles(); ++a) v[game.outcome_of(a)] -= p[a];
  for (std::size_t k = 0; k < game.num_opponent_profiles(i); ++k) {
    v[game.outcome_of(game.combine(i, deviation, k))] += q_i[k];
  }
  return v;
}

SeparationResult separation_oracle_partial(const GameForm& game, PlayerId i,
                                           std::size_t deviation, const std::vector<Rational>& p,
                                           const std::vector<Rational>& q_i,
                                           const std::vector<OutcomePair>& pairs) {
  ClosureInstance inst;
  inst.values = deviation_gain_coefficients(game, i, deviation, p, q_i);
  // o >= o' : accepting (u = 1 on) o' forces accepting o.
  for (const auto& pair : pairs) inst.implications.push_back({pair.worse, pair.better});
  const ClosureResult best = closure_solve(inst);
  if (best.total_value.sign() <= 0) return std::nullopt;
  UtilityVector witness(game.num_outcomes(), Rational(0));
  for (std::size_t o : best.accepted) witness[o] = Rational(1);
  return Violation{i, deviation, std::move(witness), best.total_value};
}

SeparationResult separation_oracle_dist(const GameForm& game, PlayerId i, std::size_t deviation,
                                        const std::vector<Rational>& p,
                                        const std::vector<Rational>& q_i,
                                        const DistributionOrderSpace& space) {
  const std::size_t n = game.num_outcomes();
  LinearProgram lp(n);
  for (std::size_t o = 0; o < n; ++o) lp.set_bounds(o, Rational(0), Rational(1));
  for (const auto& pair : space.pairs) {
    std::vector<Rational> row(n);
    for (std::size_t o = 0; o < n; ++o) row[o] = pair.better[o] - pair.worse[o];
    lp.add_constraint(std::move(row), Relation::kGreaterEqual, Rational(0));
  }
  lp.set_objective(deviation_gain_coefficients(game, i, deviation, p, q_i), Direction::kMaximize);
  LpOutcome best = lp_solve(lp);
  // u = 0 is always feasible and the box is bounded.
  if (best.objective_value->sign() <= 0) return std::nullopt;
  return Violation{i, deviation, std::move(best.assignment), *best.objective_value};
}

DistributionOrderSpace embed_pairs(const std::vector<OutcomePair>& pairs,
                                   std::size_t num_outcomes) {
  DistributionOrderSpace space;
  for (const auto& pair : pairs) {
    DistributionPair lotteries{OutcomeDistribution(num_outcomes), OutcomeDistribution(num_outcomes)};
    lotteries.better[pair.better] = Rational(1);
    lotteries.worse[pair.worse] = Rational(1);
    space.pairs.push_back(std::move(lotteries));
  }
  return space;
}

SeparationResult separation_oracle_dist(const GameForm& game, PlayerId i, std::size_t deviation,
                                        const std::vector<Rational>& p,
                                        const std::vector<Rational>& q_i,
                                        const std::vector<OutcomePair>& pairs) {
  return separation_oracle_dist(game, i, deviation, p, q_i,
                                embed_pairs(pairs, game.num_outcomes()));
}

// ---------------------------------------------------------------------------
// Solver

void validate_spaces(const GameForm& game, const std::vector<TypeSpaceSpec>& spaces) {
  if (spaces.size() != game.num_players()) {
    throw Error(ErrorKind::kValidation, "expected one type space per player, got " +
                                            std::to_string(spaces.size()));
  }
  for (const auto& spec : spaces) validate_space(spec, game.num_outcomes());
}

namespace {

bool uses_oracle(const TypeSpaceSpec& spec) {
  return std::holds_alternative<PartialOrderSpace>(spec) ||
         std::holds_alternative<DistributionOrderSpace>(spec);
}

std::vector<IncentiveConstraint> explicit_constraints(const GameForm& game, PlayerId i,
                                                      const TypeSpaceSpec& spec) {
  if (const auto* finite = std::get_if<FiniteSpace>(&spec)) {
    return player_constraints_finite(game, i, *finite);
  }
  if (const auto* total = std::get_if<TotalOrderSpace>(&spec)) {
    return player_constraints_total(game, i, *total);
  }
  return {};
}

SeparationResult separate(const GameForm& game, PlayerId i, std::size_t deviation,
                          const std::vector<Rational>& p, const std::vector<Rational>& q_i,
                          const TypeSpaceSpec& spec) {
  if (const auto* partial = std::get_if<PartialOrderSpace>(&spec)) {
    return separation_oracle_partial(game, i, deviation, p, q_i, partial->pairs);
  }
  return separation_oracle_dist(game, i, deviation, p, q_i,
                                std::get<DistributionOrderSpace>(spec));
}

struct LoopResult {
  bool feasible = false;
  std::vector<Rational> assignment;
  std::optional<Rational> objective_value;
};

using LpCustomizer = std::function<void(const Lp1Instance&, LinearProgram&)>;

/// Solve, separate, add every violated constraint, repeat. Each added
/// constraint is strictly violated by the current point, so a witness can
/// never come back for the same (player, deviation).
LoopResult cutting_plane(Lp1Instance& inst, const std::vector<TypeSpaceSpec>& spaces,
                         const LpCustomizer& customize, const SolveOptions& options,
                         std::size_t& rounds) {
  const GameForm& game = inst.game();
  std::map<std::pair<PlayerId, std::size_t>, std::set<UtilityVector>> seen;
  while (true) {
    if (rounds >= options.max_rounds) {
      throw Error(ErrorKind::kCapExceeded, "cutting-plane round limit reached");
    }
    ++rounds;
    LinearProgram lp = inst.to_lp();
    if (customize) customize(inst, lp);
    LpOutcome outcome = lp_solve(lp);
    if (!outcome.feasible()) return {};

    const MediatedProfile current = inst.decode(outcome.assignment);
    std::vector<Violation> violations;
    for (PlayerId i = 0; i < game.num_players(); ++i) {
      if (!inst.has_player(i) || !uses_oracle(spaces[i])) continue;
      for (std::size_t dev = 0; dev < game.num_actions(i); ++dev) {
        if (auto v = separate(game, i, dev, current.p, current.q[i], spaces[i])) {
          violations.push_back(std::move(*v));
        }
      }
    }
    if (violations.empty()) {
      return {true, std::move(outcome.assignment), std::move(outcome.objective_value)};
    }
    for (auto& v : violations) {
      if (!seen[{v.player, v.deviation}].insert(v.witness).second) {
        throw std::logic_error("cutting plane regenerated a separation witness");
      }
      inst.add({v.player, v.deviation, std::move(v.witness)});
    }
  }
}

Lp1Instance seeded_instance(const GameForm& game, const std::vector<TypeSpaceSpec>& spaces) {
  Lp1Instance inst(game);
  for (PlayerId i = 0; i < game.num_players(); ++i) {
    for (auto& c : explicit_constraints(game, i, spaces[i])) inst.add(std::move(c));
  }
  return inst;
}

SolveAnswer solve_aare_decomposed(const GameForm& game, const std::vector<TypeSpaceSpec>& spaces,
                                  const std::vector<Rational>& target,
                                  const SolveOptions& options) {
  SolveAnswer answer;
  MediatedProfile profile;
  profile.p = target;
  for (PlayerId i = 0; i < game.num_players(); ++i) {
    Lp1Instance inst = Lp1Instance::with_fixed_p(game, target, {i});
    for (auto& c : explicit_constraints(game, i, spaces[i])) inst.add(std::move(c));
    LoopResult result = cutting_plane(inst, spaces, nullptr, options, answer.rounds);
    answer.incentive_constraints += inst.incentives().size();
    if (!result.feasible) return answer;
    profile.q.push_back(std::move(inst.decode(result.assignment).q[i]));
  }
  answer.yes = true;
  answer.profile = std::move(profile);
  return answer;
}

}  // namespace

SolveAnswer solve(const GameForm& game, const std::vector<TypeSpaceSpec>& spaces,
                  const ProblemQuery& query, const SolveOptions& options) {
  validate_spaces(game, spaces);
  for (PlayerId i = 0; i < spaces.size(); ++i) {
    if (std::holds_alternative<PreferenceCnfSpace>(spaces[i])) {
      throw Error(ErrorKind::kUnsupportedSpace,
                  "player " + std::to_string(i + 1) +
                      " has a preference-CNF space; use the extreme-type checker");
    }
  }

  std::optional<std::vector<Rational>> objective;
  LpCustomizer customize;
  if (const auto* sire = std::get_if<SireQuery>(&query)) {
    if (sire->target >= game.num_profiles()) {
      throw Error(ErrorKind::kValidation, "SIRE target is not a profile of the game");
    }
    objective = std::vector<Rational>(game.num_profiles());
    (*objective)[sire->target] = Rational(1);
  } else if (const auto* omire = std::get_if<OmireQuery>(&query)) {
    const auto& g = omire->objective.g;
    if (g.size() != game.num_profiles()) {
      throw Error(ErrorKind::kValidation, "objective must give one value per profile");
    }
    for (const auto& value : g) {
      if (value.sign() < 0 || value > Rational(1)) {
        throw Error(ErrorKind::kValidation, "objective value outside [0,1]");
      }
    }
    objective = g;
  } else if (const auto* aare = std::get_if<AareQuery>(&query)) {
    validate_distribution(aare->p, game.num_profiles(), "AARE distribution");
    if (options.decompose_aare) return solve_aare_decomposed(game, spaces, aare->p, options);
    customize = [target = aare->p](const Lp1Instance& inst, LinearProgram& lp) {
      for (std::size_t a = 0; a < target.size(); ++a) {
        lp.set_bounds(inst.p_var(a), target[a], target[a]);
      }
    };
  }
  if (objective) {
    customize = [coefficients = *objective](const Lp1Instance& inst, LinearProgram& lp) {
      std::vector<Rational> row(inst.num_vars());
      for (std::size_t a = 0; a < coefficients.size(); ++a) row[inst.p_var(a)] = coefficients[a];
      lp.set_objective(std::move(row), Direction::kMaximize);
    };
  }

  SolveAnswer answer;
  Lp1Instance inst = seeded_instance(game, spaces);
  LoopResult result = cutting_plane(inst, spaces, customize, options, answer.rounds);
  answer.incentive_constraints = inst.incentives().size();
  if (!result.feasible) return answer;
  answer.objective_value = result.objective_value;

  if (std::holds_alternative<SireQuery>(query)) {
    answer.yes = result.objective_value->sign() > 0;
  } else if (const auto* omire = std::get_if<OmireQuery>(&query)) {
    answer.yes = *result.objective_value >= omire->objective.threshold;
  } else {
    answer.yes = true;
  }
  if (answer.yes) answer.profile = inst.decode(result.assignment);
  return answer;
}

// ---------------------------------------------------------------------------

std::vector<ActionProfile> find_pure_unmediated(const GameForm& game,
                                                const std::vector<TypeSpaceSpec>& spaces) {
  validate_spaces(game, spaces);
  const std::size_t n = game.num_outcomes();
  // entailed[i] is filled lazily: distribution orders need one LP per pair.
  std::vector<std::map<std::pair<OutcomeId, OutcomeId>, bool>> cache(game.num_players());
  auto entailed = [&](PlayerId i, OutcomeId better, OutcomeId worse) {
    auto [it, inserted] = cache[i].try_emplace({better, worse}, false);
    if (inserted) it->second = entails_preference(spaces[i], n, better, worse);
    return it->second;
  };

  std::vector<ActionProfile> out;
  for (std::size_t a = 0; a < game.num_profiles(); ++a) {
    bool stable = true;
    for (PlayerId i = 0; i < game.num_players() && stable; ++i) {
      const std::size_t opponents = game.opponents_index(a, i);
      for (std::size_t dev = 0; dev < game.num_actions(i) && stable; ++dev) {
        stable = entailed(i, game.outcome_of(a), game.outcome_of(game.combine(i, dev, opponents)));
      }
    }
    if (stable) out.push_back(game.profile_at(a));
  }
  return out;
}

}  // namespace ordeq

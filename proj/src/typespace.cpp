#include "ordeq/typespace.hpp"

#include "ordeq/error.hpp"
#include "ordeq/lp.hpp"

namespace ordeq {

namespace {

void require_outcome(const UtilityVector& u, OutcomeId o) {
  if (o >= u.size()) throw Error(ErrorKind::kUnknownOutcome, "outcome id out of range");
}

Rational expectation(const OutcomeDistribution& r, const UtilityVector& u) {
  if (r.size() != u.size()) {
    throw Error(ErrorKind::kUnknownOutcome, "lottery and utility vector cover different outcomes");
  }
  Rational total;
  for (std::size_t o = 0; o < r.size(); ++o) total.add_product(r[o], u[o]);
  return total;
}

bool atom_holds(const UtilityVector& u, const OutcomePair& atom) {
  require_outcome(u, atom.better);
  require_outcome(u, atom.worse);
  return u[atom.better] >= u[atom.worse];
}

UtilityVector indicator(std::size_t num_outcomes, std::size_t mask) {
  UtilityVector u(num_outcomes);
  for (std::size_t o = 0; o < num_outcomes; ++o) u[o] = Rational((mask >> o) & 1U);
  return u;
}

void check_cap(std::size_t num_outcomes, std::size_t cap) {
  if (num_outcomes >= 63 || (std::size_t{1} << num_outcomes) > cap) {
    throw Error(ErrorKind::kCapExceeded, "2^" + std::to_string(num_outcomes) +
                                             " candidate 0/1 types exceed the enumeration cap");
  }
}

}  // namespace

bool satisfies_space(const UtilityVector& u, const TypeSpaceSpec& spec) {
  for (const auto& value : u) {
    if (value.sign() < 0 || value > Rational(1)) return false;
  }
  if (const auto* finite = std::get_if<FiniteSpace>(&spec)) {
    for (const auto& type : finite->types) {
      if (type.size() != u.size()) {
        throw Error(ErrorKind::kUnknownOutcome, "finite type covers a different outcome set");
      }
      if (type == u) return true;
    }
    return false;
  }
  if (const auto* total = std::get_if<TotalOrderSpace>(&spec)) {
    for (const auto& pair : chain_pairs(*total)) {
      if (!atom_holds(u, pair)) return false;
    }
    return true;
  }
  if (const auto* partial = std::get_if<PartialOrderSpace>(&spec)) {
    for (const auto& pair : partial->pairs) {
      if (!atom_holds(u, pair)) return false;
    }
    return true;
  }
  if (const auto* dist = std::get_if<DistributionOrderSpace>(&spec)) {
    for (const auto& pair : dist->pairs) {
      if (expectation(pair.better, u) < expectation(pair.worse, u)) return false;
    }
    return true;
  }
  const auto& cnf = std::get<PreferenceCnfSpace>(spec);
  for (const auto& clause : cnf.clauses) {
    bool satisfied = false;
    for (const auto& atom : clause) {
      if (atom_holds(u, atom)) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied) return false;
  }
  return true;
}

std::vector<UtilityVector> enumerate_extreme_types(const TypeSpaceSpec& spec,
                                                   std::size_t num_outcomes, std::size_t cap) {
  if (std::holds_alternative<FiniteSpace>(spec) ||
      std::holds_alternative<DistributionOrderSpace>(spec)) {
    throw Error(ErrorKind::kUnsupportedSpace,
                "0/1 types are not exhaustive for " + space_kind_name(spec) + " spaces");
  }
  validate_space(spec, num_outcomes);
  std::vector<UtilityVector> out;
  if (const auto* total = std::get_if<TotalOrderSpace>(&spec)) {
    UtilityVector u(num_outcomes, Rational(0));
    out.push_back(u);
    for (OutcomeId o : total->order) {
      u[o] = Rational(1);
      out.push_back(u);
    }
    return out;
  }
  check_cap(num_outcomes, cap);
  const std::size_t limit = std::size_t{1} << num_outcomes;
  if (const auto* partial = std::get_if<PartialOrderSpace>(&spec)) {
    for (std::size_t mask = 0; mask < limit; ++mask) {
      bool closed = true;
      for (const auto& pair : partial->pairs) {
        if (((mask >> pair.worse) & 1U) && !((mask >> pair.better) & 1U)) {
          closed = false;
          break;
        }
      }
      if (closed) out.push_back(indicator(num_outcomes, mask));
    }
    return out;
  }
  for (std::size_t mask = 0; mask < limit; ++mask) {
    UtilityVector u = indicator(num_outcomes, mask);
    if (satisfies_space(u, spec)) out.push_back(std::move(u));
  }
  return out;
}

bool entails_preference(const TypeSpaceSpec& spec, std::size_t num_outcomes, OutcomeId better,
                        OutcomeId worse) {
  if (better >= num_outcomes || worse >= num_outcomes) {
    throw Error(ErrorKind::kUnknownOutcome, "outcome id out of range");
  }
  if (const auto* finite = std::get_if<FiniteSpace>(&spec)) {
    for (const auto& u : finite->types) {
      if (u[better] < u[worse]) return false;
    }
    return true;
  }
  if (const auto* total = std::get_if<TotalOrderSpace>(&spec)) {
    return partial_order_closure(num_outcomes, chain_pairs(*total)).holds(better, worse);
  }
  if (const auto* partial = std::get_if<PartialOrderSpace>(&spec)) {
    return partial_order_closure(num_outcomes, partial->pairs).holds(better, worse);
  }
  if (const auto* dist = std::get_if<DistributionOrderSpace>(&spec)) {
    if (better == worse) return true;
    // min u(better) - u(worse) over the constraint polytope in [0,1]^O.
    LinearProgram lp(num_outcomes);
    for (std::size_t o = 0; o < num_outcomes; ++o) lp.set_bounds(o, Rational(0), Rational(1));
    for (const auto& pair : dist->pairs) {
      std::vector<Rational> row(num_outcomes);
      for (std::size_t o = 0; o < num_outcomes; ++o) row[o] = pair.better[o] - pair.worse[o];
      lp.add_constraint(std::move(row), Relation::kGreaterEqual, Rational(0));
    }
    std::vector<Rational> objective(num_outcomes);
    objective[better] = Rational(1);
    objective[worse] = Rational(-1);
    lp.set_objective(std::move(objective), Direction::kMinimize);
    const LpOutcome outcome = lp_solve(lp);
    return outcome.objective_value->sign() >= 0;
  }
  throw Error(ErrorKind::kUnsupportedSpace,
              "preference entailment is not supported for preference-CNF spaces");
}

std::vector<OutcomePair> zero_one_restriction(const DistributionOrderSpace& spec) {
  std::vector<OutcomePair> pairs;
  for (const auto& pair : spec.pairs) {
    std::size_t support = 0;
    OutcomeId top = 0;
    for (OutcomeId o = 0; o < pair.better.size(); ++o) {
      if (!pair.better[o].is_zero()) {
        ++support;
        top = o;
      }
    }
    if (support != 1) {
      throw Error(ErrorKind::kUnsupportedSpace,
                  "0/1 restriction needs a point mass on the preferred side");
    }
    for (OutcomeId o = 0; o < pair.worse.size(); ++o) {
      if (!pair.worse[o].is_zero() && o != top) pairs.push_back({top, o});
    }
  }
  return pairs;
}

FiniteSpace to_finite_space(const TypeSpaceSpec& spec, std::size_t num_outcomes,
                            std::size_t cap) {
  if (const auto* finite = std::get_if<FiniteSpace>(&spec)) return *finite;
  return FiniteSpace{enumerate_extreme_types(spec, num_outcomes, cap)};
}

}  // namespace ordeq

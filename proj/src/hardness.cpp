#include "ordeq/hardness.hpp"

#include <cstdlib>
#include <set>
#include <sstream>

#include "ordeq/error.hpp"
#include "ordeq/typespace.hpp"

namespace ordeq {

CnfFormula parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<std::size_t> declared_clauses;
  CnfFormula formula;
  std::vector<int> current;
  bool in_clause = false;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& message) {
    throw Error(ErrorKind::kParse, "dimacs line " + std::to_string(line_no) + ": " + message);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(line);
    std::string first;
    if (!(tokens >> first)) continue;
    if (first == "c") continue;
    if (first == "p") {
      std::string format;
      long long vars = -1;
      long long clauses = -1;
      if (declared_clauses) fail("duplicate problem line");
      if (!(tokens >> format >> vars >> clauses) || format != "cnf" || vars < 0 || clauses < 0) {
        fail("expected 'p cnf <vars> <clauses>'");
      }
      std::string extra;
      if (tokens >> extra) fail("trailing text after problem line");
      formula.num_vars = static_cast<std::size_t>(vars);
      declared_clauses = static_cast<std::size_t>(clauses);
      continue;
    }
    if (!declared_clauses) fail("clause before problem line");
    tokens.clear();
    tokens.str(line);
    std::string token;
    while (tokens >> token) {
      char* end = nullptr;
      const long long literal = std::strtoll(token.c_str(), &end, 10);
      if (end == token.c_str() || *end != '\0') fail("bad literal '" + token + "'");
      if (literal == 0) {
        formula.clauses.push_back(std::move(current));
        current.clear();
        in_clause = false;
        continue;
      }
      const auto var = static_cast<std::size_t>(std::llabs(literal));
      if (var > formula.num_vars) fail("literal " + token + " exceeds declared variable count");
      current.push_back(static_cast<int>(literal));
      in_clause = true;
    }
  }
  if (!declared_clauses) throw Error(ErrorKind::kParse, "dimacs: missing problem line");
  if (in_clause) throw Error(ErrorKind::kParse, "dimacs: last clause not terminated by 0");
  if (formula.clauses.size() != *declared_clauses) {
    throw Error(ErrorKind::kParse, "dimacs: header declares " + std::to_string(*declared_clauses) +
                                       " clauses, found " + std::to_string(formula.clauses.size()));
  }
  return formula;
}

std::string write_dimacs(const CnfFormula& formula) {
  std::ostringstream out;
  out << "p cnf " << formula.num_vars << ' ' << formula.clauses.size() << '\n';
  for (const auto& clause : formula.clauses) {
    for (int literal : clause) out << literal << ' ';
    out << "0\n";
  }
  return out.str();
}

void validate_formula(const CnfFormula& formula) {
  for (const auto& clause : formula.clauses) {
    for (int literal : clause) {
      const auto var = static_cast<std::size_t>(std::abs(literal));
      if (literal == 0 || var > formula.num_vars) {
        throw Error(ErrorKind::kValidation, "literal " + std::to_string(literal) + " out of range");
      }
    }
  }
}

PreBayesianGame reduce_sat(const CnfFormula& formula) {
  validate_formula(formula);
  const std::size_t m = formula.num_vars;
  std::vector<std::string> outcomes{"o0", "o1"};
  std::vector<std::string> rows{"r0", "r1"};
  for (std::size_t k = 1; k <= m; ++k) {
    outcomes.push_back("o(x" + std::to_string(k) + ")");
    rows.push_back("x" + std::to_string(k));
  }
  constexpr OutcomeId kO0 = 0;
  constexpr OutcomeId kO1 = 1;
  auto variable_outcome = [](std::size_t k) -> OutcomeId { return k + 1; };

  std::vector<OutcomeId> outcome_map{kO0, kO0, kO1, kO1};
  for (std::size_t k = 1; k <= m; ++k) {
    outcome_map.push_back(kO1);
    outcome_map.push_back(variable_outcome(k));
  }

  PreferenceCnfSpace cnf;
  for (const auto& clause : formula.clauses) {
    std::vector<OutcomePair> atoms;
    for (int literal : clause) {
      const OutcomeId x = variable_outcome(static_cast<std::size_t>(std::abs(literal)));
      atoms.push_back(literal > 0 ? OutcomePair{x, kO1} : OutcomePair{kO0, x});
    }
    cnf.clauses.push_back(std::move(atoms));
  }
  TotalOrderSpace column_order;
  for (OutcomeId o = 0; o < outcomes.size(); ++o) column_order.order.push_back(o);

  PreBayesianGame out;
  out.form = GameForm({rows, {"left", "right"}}, outcomes, std::move(outcome_map));
  out.spaces = {std::move(cnf), std::move(column_order)};
  return out;
}

bool sat_brute(const CnfFormula& formula, std::size_t max_vars) {
  validate_formula(formula);
  if (formula.num_vars > max_vars || formula.num_vars >= 63) {
    throw Error(ErrorKind::kCapExceeded, "too many variables for exhaustive SAT");
  }
  const std::uint64_t limit = std::uint64_t{1} << formula.num_vars;
  for (std::uint64_t assignment = 0; assignment < limit; ++assignment) {
    bool all = true;
    for (const auto& clause : formula.clauses) {
      bool any = false;
      for (int literal : clause) {
        const bool value = (assignment >> (std::abs(literal) - 1)) & 1U;
        if (value == (literal > 0)) {
          any = true;
          break;
        }
      }
      if (!any) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

std::optional<SatReductionShape> match_sat_reduction(const GameForm& game,
                                                     const std::vector<TypeSpaceSpec>& spaces) {
  if (game.num_players() != 2 || spaces.size() != 2 || game.num_actions(1) != 2) return std::nullopt;
  const auto* cnf = std::get_if<PreferenceCnfSpace>(&spaces[0]);
  if (cnf == nullptr) return std::nullopt;
  const std::size_t rows = game.num_actions(0);
  if (rows < 2 || game.num_outcomes() != rows) return std::nullopt;
  auto cell = [&](std::size_t r, std::size_t c) { return game.outcome_of(game.profile_index({r, c})); };

  const OutcomeId o0 = cell(0, 0);
  const OutcomeId o1 = cell(1, 0);
  if (cell(0, 1) != o0 || cell(1, 1) != o1 || o0 == o1) return std::nullopt;
  std::set<OutcomeId> variables;
  for (std::size_t r = 2; r < rows; ++r) {
    const OutcomeId x = cell(r, 1);
    if (cell(r, 0) != o1 || x == o0 || x == o1 || !variables.insert(x).second) return std::nullopt;
  }
  for (const auto& clause : cnf->clauses) {
    for (const auto& atom : clause) {
      const bool positive = atom.worse == o1 && variables.count(atom.better) != 0;
      const bool negative = atom.better == o0 && variables.count(atom.worse) != 0;
      if (!positive && !negative) return std::nullopt;
    }
  }
  return SatReductionShape{o0, o1};
}

CnfVerdict solve_over_extreme_types(const GameForm& game, const std::vector<TypeSpaceSpec>& spaces,
                                    const ProblemQuery& query, std::size_t cap) {
  validate_spaces(game, spaces);
  std::optional<PlayerId> cnf_player;
  for (PlayerId i = 0; i < spaces.size(); ++i) {
    if (!std::holds_alternative<PreferenceCnfSpace>(spaces[i])) continue;
    if (cnf_player) throw Error(ErrorKind::kValidation, "more than one preference-CNF player");
    cnf_player = i;
  }
  if (!cnf_player) throw Error(ErrorKind::kValidation, "no preference-CNF player");

  CnfVerdict verdict;
  try {
    verdict.witness_types = enumerate_extreme_types(spaces[*cnf_player], game.num_outcomes(), cap);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kCapExceeded) throw;
    verdict.kind = CnfVerdictKind::kCapExceeded;
    return verdict;
  }
  std::vector<TypeSpaceSpec> relaxed = spaces;
  relaxed[*cnf_player] = FiniteSpace{verdict.witness_types};
  SolveAnswer answer = solve(game, relaxed, query);
  if (!answer.yes) {
    verdict.kind = CnfVerdictKind::kNo;
    return verdict;
  }
  verdict.kind = CnfVerdictKind::kYesOverExtremeTypes;
  verdict.profile = std::move(answer.profile);
  if (std::holds_alternative<EoreQuery>(query)) {
    if (const auto shape = match_sat_reduction(game, spaces)) {
      bool prefers_o1 = false;
      for (const auto& u : verdict.witness_types) prefers_o1 |= u[shape->o1] > u[shape->o0];
      verdict.definitive = !prefers_o1;
    }
  }
  return verdict;
}

CnfVerdict check_cnf_existence(const GameForm& game, const std::vector<TypeSpaceSpec>& spaces,
                               std::size_t cap) {
  return solve_over_extreme_types(game, spaces, EoreQuery{}, cap);
}

}  // namespace ordeq

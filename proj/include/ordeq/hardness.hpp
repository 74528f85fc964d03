#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ordeq/equilibrium.hpp"
#include "ordeq/game.hpp"

namespace ordeq {

/// CNF over variables 1..num_vars; literal +k / -k. An empty clause is
/// allowed and makes the formula unsatisfiable.
struct CnfFormula {
  std::size_t num_vars = 0;
  std::vector<std::vector<int>> clauses;
  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

/// Reads DIMACS: "p cnf <m> <k>", clauses of nonzero ints each ended by 0,
/// comment lines starting with "c". Throws Error(kParse).
CnfFormula parse_dimacs(std::string_view text);
std::string write_dimacs(const CnfFormula& formula);

/// Throws Error(kValidation) for literals outside [1, num_vars].
void validate_formula(const CnfFormula& formula);

/// Builds the two-player game in which player 1 picks one of m+2 rows and
/// player 2 one of two columns: row 0 yields o0, row 1 yields o1, and row
/// 1+k yields o1 on the left and o(x_k) on the right. Player 1's space is
/// the formula with +x_k read as o(x_k) >= o1 and -x_k as o0 >= o(x_k);
/// player 2 gets the total order o0, o1, o(x_1), ..., o(x_m).
PreBayesianGame reduce_sat(const CnfFormula& formula);

/// Exhaustive satisfiability. Throws Error(kCapExceeded) beyond `max_vars`.
bool sat_brute(const CnfFormula& formula, std::size_t max_vars = 20);

enum class CnfVerdictKind { kYesOverExtremeTypes, kNo, kCapExceeded };

struct CnfVerdict {
  CnfVerdictKind kind = CnfVerdictKind::kCapExceeded;
  /// The equilibrium against every 0/1 type (kYesOverExtremeTypes only).
  std::optional<MediatedProfile> profile;
  /// The 0/1 types of the preference-CNF player; for kNo they already rule
  /// out every profile.
  std::vector<UtilityVector> witness_types;
  /// Set when a Yes is known to hold for the full type space: the game has
  /// the shape reduce_sat produces and no 0/1 type prefers o1 to o0.
  bool definitive = false;
};

/// Solves `query` with the preference-CNF player's space replaced by its
/// satisfying 0/1 types. A No is conclusive; a Yes is only conclusive over
/// those types unless `definitive` is set. Exactly one player must have a
/// preference-CNF space (Error(kValidation) otherwise).
CnfVerdict solve_over_extreme_types(const GameForm& game, const std::vector<TypeSpaceSpec>& spaces,
                                    const ProblemQuery& query,
                                    std::size_t cap = kDefaultEnumerationCap);

/// EORE through solve_over_extreme_types.
CnfVerdict check_cnf_existence(const GameForm& game, const std::vector<TypeSpaceSpec>& spaces,
                               std::size_t cap = kDefaultEnumerationCap);

/// Outcome ids of o0 and o1 when the game has the reduce_sat shape.
struct SatReductionShape {
  OutcomeId o0 = 0;
  OutcomeId o1 = 0;
};
std::optional<SatReductionShape> match_sat_reduction(const GameForm& game,
                                                     const std::vector<TypeSpaceSpec>& spaces);

}  // namespace ordeq

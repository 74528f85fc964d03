#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ordeq/rational.hpp"

namespace ordeq {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };
enum class Direction { kMaximize, kMinimize };

struct LinearConstraint {
  std::vector<Rational> coefficients;
  Relation relation = Relation::kLessEqual;
  Rational rhs;
};

struct LinearObjective {
  std::vector<Rational> coefficients;
  Direction direction = Direction::kMaximize;
};

/// Missing bounds mean the variable is unbounded in that direction.
struct VariableBounds {
  std::optional<Rational> lower;
  std::optional<Rational> upper;
};

/// A linear program over rationals. Variables are free unless bounded.
struct LinearProgram {
  explicit LinearProgram(std::size_t num_vars = 0) : num_vars(num_vars), bounds(num_vars) {}

  void add_constraint(std::vector<Rational> coefficients, Relation relation, Rational rhs);
  void set_objective(std::vector<Rational> coefficients, Direction direction);
  void set_bounds(std::size_t var, std::optional<Rational> lower, std::optional<Rational> upper);
  /// Shorthand for lower bound 0 on every variable.
  void set_all_nonnegative();

  /// Throws Error(kMalformedLp) on any dimension mismatch.
  void validate() const;

  std::size_t num_vars;
  std::vector<LinearConstraint> constraints;
  std::optional<LinearObjective> objective;
  std::vector<VariableBounds> bounds;
};

enum class LpStatus { kFeasible, kInfeasible, kUnbounded };

struct LpOutcome {
  LpStatus status = LpStatus::kInfeasible;
  /// Populated only when status is kFeasible.
  std::vector<Rational> assignment;
  /// Populated when feasible and an objective was given.
  std::optional<Rational> objective_value;

  [[nodiscard]] bool feasible() const { return status == LpStatus::kFeasible; }
};

/// Two-phase primal simplex on a dense rational tableau with Bland's rule.
///
/// The returned assignment is always a basic solution, i.e. a vertex of the
/// feasible polyhedron whenever the polyhedron has vertices. Callers in the
/// cutting-plane loop rely on this: a fixed polytope has finitely many
/// vertices, so separation witnesses cannot cycle.
LpOutcome lp_solve(const LinearProgram& lp);

/// True iff `assignment` satisfies every constraint and bound exactly.
bool lp_satisfies(const LinearProgram& lp, const std::vector<Rational>& assignment);

}  // namespace ordeq

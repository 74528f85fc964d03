#include "ordeq/lp.hpp"

#include <string>
#include <utility>

#include "ordeq/error.hpp"

namespace ordeq {

void LinearProgram::add_constraint(std::vector<Rational> coefficients, Relation relation,
                                   Rational rhs) {
  if (coefficients.size() != num_vars) {
    throw Error(ErrorKind::kMalformedLp,
                "constraint has " + std::to_string(coefficients.size()) + " coefficients, expected " +
                    std::to_string(num_vars));
  }
  constraints.push_back({std::move(coefficients), relation, std::move(rhs)});
}

void LinearProgram::set_objective(std::vector<Rational> coefficients, Direction direction) {
  if (coefficients.size() != num_vars) {
    throw Error(ErrorKind::kMalformedLp, "objective dimension mismatch");
  }
  objective = LinearObjective{std::move(coefficients), direction};
}

void LinearProgram::set_bounds(std::size_t var, std::optional<Rational> lower,
                               std::optional<Rational> upper) {
  if (var >= num_vars) throw Error(ErrorKind::kMalformedLp, "bound on unknown variable");
  bounds[var] = {std::move(lower), std::move(upper)};
}

void LinearProgram::set_all_nonnegative() {
  for (auto& b : bounds) b.lower = Rational(0);
}

void LinearProgram::validate() const {
  if (bounds.size() != num_vars) throw Error(ErrorKind::kMalformedLp, "bounds dimension mismatch");
  for (const auto& c : constraints) {
    if (c.coefficients.size() != num_vars) {
      throw Error(ErrorKind::kMalformedLp, "constraint dimension mismatch");
    }
  }
  if (objective && objective->coefficients.size() != num_vars) {
    throw Error(ErrorKind::kMalformedLp, "objective dimension mismatch");
  }
}

bool lp_satisfies(const LinearProgram& lp, const std::vector<Rational>& assignment) {
  if (assignment.size() != lp.num_vars) return false;
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    const auto& b = lp.bounds[j];
    if (b.lower && assignment[j] < *b.lower) return false;
    if (b.upper && assignment[j] > *b.upper) return false;
  }
  for (const auto& c : lp.constraints) {
    Rational lhs;
    for (std::size_t j = 0; j < lp.num_vars; ++j) lhs.add_product(c.coefficients[j], assignment[j]);
    switch (c.relation) {
      case Relation::kLessEqual:
        if (lhs > c.rhs) return false;
        break;
      case Relation::kEqual:
        if (lhs != c.rhs) return false;
        break;
      case Relation::kGreaterEqual:
        if (lhs < c.rhs) return false;
        break;
    }
  }
  return true;
}

namespace {

// How an original variable x_j is expressed in nonnegative columns y:
//   kShifted:  x = offset + y[col]
//   kMirrored: x = offset - y[col]
//   kSplit:    x = y[col] - y[col + 1]
enum class Substitution { kShifted, kMirrored, kSplit };

struct VarMap {
  Substitution kind;
  std::size_t col;
  Rational offset;
};

struct Row {
  std::vector<Rational> coefficients;  // over structural columns
  Relation relation;
  Rational rhs;
};

/// Dense tableau in equality form T y = b, y >= 0. The last entry of every
/// row holds the right-hand side.
class Tableau {
 public:
  Tableau(std::size_t num_cols, std::vector<std::vector<Rational>> rows,
          std::vector<std::size_t> basis)
      : num_cols_(num_cols), rows_(std::move(rows)), basis_(std::move(basis)) {}

  [[nodiscard]] std::size_t num_rows() const { return rows_.size(); }
  [[nodiscard]] std::size_t basic(std::size_t row) const { return basis_[row]; }
  [[nodiscard]] const Rational& at(std::size_t row, std::size_t col) const {
    return rows_[row][col];
  }
  [[nodiscard]] const Rational& rhs(std::size_t row) const { return rows_[row][num_cols_]; }

  void remove_row(std::size_t row) {
    rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(row));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(row));
  }

  /// Reduced costs (size num_cols + 1) for maximizing `cost` from the current basis.
  [[nodiscard]] std::vector<Rational> reduced_costs(const std::vector<Rational>& cost) const {
    std::vector<Rational> reduced(num_cols_ + 1);
    for (std::size_t j = 0; j < num_cols_; ++j) reduced[j] = cost[j];
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational& cb = cost[basis_[r]];
      if (cb.is_zero()) continue;
      for (std::size_t j = 0; j <= num_cols_; ++j) reduced[j].sub_product(cb, rows_[r][j]);
    }
    return reduced;
  }

  void pivot(std::size_t row, std::size_t col, std::vector<Rational>* reduced) {
    auto& pivot_row = rows_[row];
    const Rational inverse = Rational(1) / pivot_row[col];
    std::vector<std::size_t> nonzero;
    for (std::size_t j = 0; j <= num_cols_; ++j) {
      if (pivot_row[j].is_zero()) continue;
      pivot_row[j] *= inverse;
      nonzero.push_back(j);
    }
    auto eliminate = [&](std::vector<Rational>& target) {
      if (target[col].is_zero()) return;
      const Rational factor = target[col];
      for (std::size_t j : nonzero) target[j].sub_product(factor, pivot_row[j]);
    };
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (r != row) eliminate(rows_[r]);
    }
    if (reduced != nullptr) eliminate(*reduced);
    basis_[row] = col;
  }

  /// Maximizes with Bland's rule. Returns false if unbounded.
  bool optimize(std::vector<Rational>& reduced, const std::vector<bool>& eligible) {
    while (true) {
      std::size_t entering = num_cols_;
      for (std::size_t j = 0; j < num_cols_; ++j) {
        if (eligible[j] && reduced[j].sign() > 0) {
          entering = j;
          break;
        }
      }
      if (entering == num_cols_) return true;

      std::size_t leaving = rows_.size();
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        const Rational& a = rows_[r][entering];
        if (a.sign() <= 0) continue;
        if (leaving == rows_.size()) {
          leaving = r;
          continue;
        }
        // Compare rhs[r]/a with rhs[leaving]/a_leaving; denominators are positive.
        const Rational lhs = rhs(r) * rows_[leaving][entering];
        const Rational rhs_value = rhs(leaving) * a;
        if (lhs < rhs_value || (lhs == rhs_value && basis_[r] < basis_[leaving])) leaving = r;
      }
      if (leaving == rows_.size()) return false;
      pivot(leaving, entering, &reduced);
    }
  }

 private:
  std::size_t num_cols_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> basis_;
};

Relation flipped(Relation relation) {
  switch (relation) {
    case Relation::kLessEqual:
      return Relation::kGreaterEqual;
    case Relation::kGreaterEqual:
      return Relation::kLessEqual;
    case Relation::kEqual:
      return Relation::kEqual;
  }
  return relation;
}

}  // namespace

LpOutcome lp_solve(const LinearProgram& lp) {
  lp.validate();
  const std::size_t n = lp.num_vars;

  // Substitute every original variable by nonnegative structural columns.
  std::vector<VarMap> var_map;
  var_map.reserve(n);
  std::size_t num_structural = 0;
  std::vector<Row> rows;
  for (std::size_t j = 0; j < n; ++j) {
    const auto& b = lp.bounds[j];
    if (b.lower) {
      var_map.push_back({Substitution::kShifted, num_structural++, *b.lower});
    } else if (b.upper) {
      var_map.push_back({Substitution::kMirrored, num_structural++, *b.upper});
    } else {
      var_map.push_back({Substitution::kSplit, num_structural, Rational(0)});
      num_structural += 2;
    }
  }

  auto translate = [&](const std::vector<Rational>& coefficients, Rational rhs) {
    std::vector<Rational> out(num_structural);
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& a = coefficients[j];
      if (a.is_zero()) continue;
      const VarMap& m = var_map[j];
      switch (m.kind) {
        case Substitution::kShifted:
          out[m.col] += a;
          rhs.sub_product(a, m.offset);
          break;
        case Substitution::kMirrored:
          out[m.col] -= a;
          rhs.sub_product(a, m.offset);
          break;
        case Substitution::kSplit:
          out[m.col] += a;
          out[m.col + 1] -= a;
          break;
      }
    }
    return std::make_pair(std::move(out), std::move(rhs));
  };

  for (const auto& c : lp.constraints) {
    auto [coefficients, rhs] = translate(c.coefficients, c.rhs);
    rows.push_back({std::move(coefficients), c.relation, std::move(rhs)});
  }
  // A variable bounded on both sides contributes y <= upper - lower.
  for (std::size_t j = 0; j < n; ++j) {
    const auto& b = lp.bounds[j];
    if (b.lower && b.upper) {
      std::vector<Rational> coefficients(num_structural);
      coefficients[var_map[j].col] = Rational(1);
      rows.push_back({std::move(coefficients), Relation::kLessEqual, *b.upper - *b.lower});
    }
  }

  // Normalize to rhs >= 0; a ">= 0" row is negated so its slack can start basic.
  for (auto& row : rows) {
    const bool negate = row.rhs.sign() < 0 ||
                        (row.rhs.is_zero() && row.relation == Relation::kGreaterEqual);
    if (negate) {
      for (auto& a : row.coefficients) a = -a;
      row.rhs = -row.rhs;
      row.relation = flipped(row.relation);
    }
  }

  std::size_t num_slack = 0;
  std::size_t num_artificial = 0;
  for (const auto& row : rows) {
    if (row.relation != Relation::kEqual) ++num_slack;
    if (row.relation != Relation::kLessEqual) ++num_artificial;
  }
  const std::size_t slack_begin = num_structural;
  const std::size_t artificial_begin = slack_begin + num_slack;
  const std::size_t num_cols = artificial_begin + num_artificial;

  std::vector<std::vector<Rational>> dense;
  std::vector<std::size_t> basis;
  dense.reserve(rows.size());
  std::size_t next_slack = slack_begin;
  std::size_t next_artificial = artificial_begin;
  for (auto& row : rows) {
    std::vector<Rational> t(num_cols + 1);
    for (std::size_t j = 0; j < num_structural; ++j) t[j] = std::move(row.coefficients[j]);
    t[num_cols] = row.rhs;
    switch (row.relation) {
      case Relation::kLessEqual:
        t[next_slack] = Rational(1);
        basis.push_back(next_slack++);
        break;
      case Relation::kGreaterEqual:
        t[next_slack++] = Rational(-1);
        t[next_artificial] = Rational(1);
        basis.push_back(next_artificial++);
        break;
      case Relation::kEqual:
        t[next_artificial] = Rational(1);
        basis.push_back(next_artificial++);
        break;
    }
    dense.push_back(std::move(t));
  }
  Tableau tableau(num_cols, std::move(dense), std::move(basis));
  auto is_artificial = [&](std::size_t col) { return col >= artificial_begin; };

  // Phase 1: maximize -(sum of artificials).
  if (num_artificial > 0) {
    std::vector<Rational> cost(num_cols);
    for (std::size_t j = artificial_begin; j < num_cols; ++j) cost[j] = Rational(-1);
    auto reduced = tableau.reduced_costs(cost);
    std::vector<bool> all(num_cols, true);
    tableau.optimize(reduced, all);  // bounded below by zero
    for (std::size_t r = 0; r < tableau.num_rows(); ++r) {
      if (is_artificial(tableau.basic(r)) && tableau.rhs(r).sign() > 0) {
        return LpOutcome{LpStatus::kInfeasible, {}, std::nullopt};
      }
    }
    // Drive zero-level artificials out of the basis, dropping redundant rows.
    for (std::size_t r = 0; r < tableau.num_rows();) {
      if (!is_artificial(tableau.basic(r))) {
        ++r;
        continue;
      }
      std::size_t col = artificial_begin;
      for (std::size_t j = 0; j < artificial_begin; ++j) {
        if (!tableau.at(r, j).is_zero()) {
          col = j;
          break;
        }
      }
      if (col == artificial_begin) {
        tableau.remove_row(r);
      } else {
        tableau.pivot(r, col, nullptr);
        ++r;
      }
    }
  }

  std::vector<bool> eligible(num_cols, false);
  for (std::size_t j = 0; j < artificial_begin; ++j) eligible[j] = true;

  if (lp.objective) {
    std::vector<Rational> cost(num_cols);
    const bool minimize = lp.objective->direction == Direction::kMinimize;
    auto [structural_cost, unused] = translate(lp.objective->coefficients, Rational(0));
    for (std::size_t j = 0; j < num_structural; ++j) {
      cost[j] = minimize ? -structural_cost[j] : structural_cost[j];
    }
    auto reduced = tableau.reduced_costs(cost);
    if (!tableau.optimize(reduced, eligible)) {
      return LpOutcome{LpStatus::kUnbounded, {}, std::nullopt};
    }
  }

  std::vector<Rational> y(num_cols);
  for (std::size_t r = 0; r < tableau.num_rows(); ++r) y[tableau.basic(r)] = tableau.rhs(r);

  LpOutcome outcome;
  outcome.status = LpStatus::kFeasible;
  outcome.assignment.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const VarMap& m = var_map[j];
    switch (m.kind) {
      case Substitution::kShifted:
        outcome.assignment[j] = m.offset + y[m.col];
        break;
      case Substitution::kMirrored:
        outcome.assignment[j] = m.offset - y[m.col];
        break;
      case Substitution::kSplit:
        outcome.assignment[j] = y[m.col] - y[m.col + 1];
        break;
    }
  }
  if (lp.objective) {
    Rational value;
    for (std::size_t j = 0; j < n; ++j) {
      value.add_product(lp.objective->coefficients[j], outcome.assignment[j]);
    }
    outcome.objective_value = std::move(value);
  }
  return outcome;
}

}  // namespace ordeq

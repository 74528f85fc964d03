#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ordeq/error.hpp"
#include "ordeq/fixtures.hpp"
#include "ordeq/hardness.hpp"
#include "ordeq/io.hpp"
#include "ordeq/typespace.hpp"
#include "test_support.hpp"

using ordeq::CnfFormula;
using ordeq::CnfVerdictKind;
using ordeq::Error;
using ordeq::ErrorKind;
using ordeq::Rational;

namespace {

CnfFormula random_formula(ordeq::Prng& rng, std::size_t max_vars, std::size_t max_clauses) {
  CnfFormula f;
  f.num_vars = rng.between(1, max_vars);
  for (std::size_t c = rng.between(1, max_clauses); c > 0; --c) {
    std::vector<int> clause;
    for (std::size_t l = rng.between(1, 3); l > 0; --l) {
      const int var = static_cast<int>(rng.between(1, f.num_vars));
      clause.push_back(rng.chance(1, 2) ? var : -var);
    }
    f.clauses.push_back(clause);
  }
  return f;
}

/// Checks a Yes against every satisfying 0/1 type.
void expect_yes_holds(const ordeq::PreBayesianGame& game, const ordeq::CnfVerdict& verdict) {
  ASSERT_TRUE(verdict.profile.has_value());
  std::vector<ordeq::TypeSpaceSpec> finite;
  for (const auto& s : game.spaces) {
    finite.emplace_back(ordeq::FiniteSpace{oracle::reference_types(s, game.form.num_outcomes())});
  }
  EXPECT_TRUE(oracle::robust(game.form, finite, *verdict.profile));
}

/// Samples cardinal types of the CNF player and checks none gains by deviating.
void expect_no_cardinal_gain(const ordeq::PreBayesianGame& game, const ordeq::MediatedProfile& profile,
                             ordeq::Prng& rng) {
  const std::size_t n = game.form.num_outcomes();
  for (int sample = 0; sample < 100; ++sample) {
    const auto u = ordeq::random_utility(rng, n, 8);
    if (!ordeq::satisfies_space(u, game.spaces[0])) continue;
    for (std::size_t dev = 0; dev < game.form.num_actions(0); ++dev) {
      ASSERT_LE(oracle::gain(game.form, 0, dev, profile, u), Rational(0));
    }
  }
}

}  // namespace

TEST(Dimacs, ParseAndWrite) {
  const auto f = ordeq::parse_dimacs("c comment\np cnf 3 2\n1 -2 0\n3\n-1 0\n");
  EXPECT_EQ(f.num_vars, 3U);
  EXPECT_EQ(f.clauses, (std::vector<std::vector<int>>{{1, -2}, {3, -1}}));
  EXPECT_EQ(ordeq::parse_dimacs(ordeq::write_dimacs(f)), f);
  EXPECT_EQ(ordeq::write_dimacs(f), "p cnf 3 2\n1 -2 0\n3 -1 0\n");
}

TEST(Dimacs, Errors) {
  for (const char* bad : {"1 2 0\n", "p cnf 2 1\n1 x 0\n", "p cnf 2 1\n1 2\n", "p dnf 2 1\n1 0\n",
                          "p cnf 2 2\n1 0\n"}) {
    try {
      (void)ordeq::parse_dimacs(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kParse) << bad;
    }
  }
  EXPECT_THROW(ordeq::validate_formula(CnfFormula{2, {{3}}}), Error);
  EXPECT_THROW(ordeq::validate_formula(CnfFormula{2, {{0}}}), Error);
  EXPECT_NO_THROW(ordeq::validate_formula(CnfFormula{2, {{}, {-2}}}));
}

TEST(SatBrute, SmallCases) {
  EXPECT_TRUE(ordeq::sat_brute(CnfFormula{1, {}}));
  EXPECT_FALSE(ordeq::sat_brute(CnfFormula{1, {{1}, {-1}}}));
  EXPECT_FALSE(ordeq::sat_brute(CnfFormula{2, {{}}}));
  EXPECT_TRUE(ordeq::sat_brute(CnfFormula{2, {{1, -2}, {-1}}}));
  EXPECT_THROW((void)ordeq::sat_brute(CnfFormula{30, {{1}}}, 20), Error);
}

TEST(ReduceSat, Shape) {
  const CnfFormula f{2, {{1, -2}, {-1}}};
  const auto game = ordeq::reduce_sat(f);
  const auto& form = game.form;
  ASSERT_EQ(form.num_players(), 2U);
  EXPECT_EQ(form.num_actions(0), 4U);
  EXPECT_EQ(form.num_actions(1), 2U);
  EXPECT_EQ(form.num_outcomes(), 4U);
  for (std::size_t col = 0; col < 2; ++col) {
    EXPECT_EQ(form.outcome_of(form.profile_index({0, col})), 0U);
    EXPECT_EQ(form.outcome_of(form.profile_index({1, col})), 1U);
  }
  EXPECT_EQ(form.outcome_of(form.profile_index({2, 0})), 1U);
  EXPECT_EQ(form.outcome_of(form.profile_index({3, 1})), 3U);
  const auto& cnf = std::get<ordeq::PreferenceCnfSpace>(game.spaces[0]);
  ASSERT_EQ(cnf.clauses.size(), 2U);
  EXPECT_EQ(cnf.clauses[0], (std::vector<ordeq::OutcomePair>{{2, 1}, {0, 3}}));
  EXPECT_EQ(cnf.clauses[1], (std::vector<ordeq::OutcomePair>{{0, 2}}));
  EXPECT_EQ(std::get<ordeq::TotalOrderSpace>(game.spaces[1]).order,
            (std::vector<std::size_t>{0, 1, 2, 3}));

  const auto shape = ordeq::match_sat_reduction(game.form, game.spaces);
  ASSERT_TRUE(shape.has_value());
  EXPECT_EQ(shape->o0, 0U);
  EXPECT_EQ(shape->o1, 1U);
  auto other = game;
  std::get<ordeq::PreferenceCnfSpace>(other.spaces[0]).clauses.push_back({{1, 2}});
  EXPECT_FALSE(ordeq::match_sat_reduction(other.form, other.spaces).has_value());
  other.spaces[0] = ordeq::TotalOrderSpace{{0, 1, 2, 3}};
  EXPECT_FALSE(ordeq::match_sat_reduction(other.form, other.spaces).has_value());
}

TEST(CnfExistence, ExampleFixtureIsNo) {
  const auto doc = testing_support::fixture_game("fig7_example.game");
  const auto cnf = ordeq::parse_dimacs(
      ordeq::read_text_file(ordeq::default_fixture_dir() / "fig7_example.cnf"));
  EXPECT_EQ(ordeq::reduce_sat(cnf), doc.game);
  const auto verdict = ordeq::check_cnf_existence(doc.game.form, doc.game.spaces);
  EXPECT_EQ(verdict.kind, CnfVerdictKind::kNo);
  EXPECT_FALSE(verdict.witness_types.empty());
  EXPECT_TRUE(ordeq::sat_brute(cnf));
}

TEST(CnfExistence, UnsatisfiableGivesDefinitiveYes) {
  const auto game = ordeq::reduce_sat(CnfFormula{1, {{1}, {-1}}});
  const auto verdict = ordeq::check_cnf_existence(game.form, game.spaces);
  ASSERT_EQ(verdict.kind, CnfVerdictKind::kYesOverExtremeTypes);
  EXPECT_TRUE(verdict.definitive);
  expect_yes_holds(game, verdict);
  // An empty clause leaves no types at all.
  const auto empty = ordeq::reduce_sat(CnfFormula{2, {{}}});
  const auto v2 = ordeq::check_cnf_existence(empty.form, empty.spaces);
  EXPECT_EQ(v2.kind, CnfVerdictKind::kYesOverExtremeTypes);
  EXPECT_TRUE(v2.witness_types.empty());
}

TEST(CnfExistence, RequiresExactlyOneCnfPlayer) {
  const auto game = ordeq::reduce_sat(CnfFormula{1, {{1}}});
  try {
    (void)ordeq::check_cnf_existence(game.form, {game.spaces[1], game.spaces[1]});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kValidation);
  }
  EXPECT_EQ(ordeq::check_cnf_existence(game.form, game.spaces, 2).kind, CnfVerdictKind::kCapExceeded);
}

TEST(CnfExistenceProperty, MatchesSatisfiability) {
  ordeq::Prng rng(909);
  std::size_t yes = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const auto f = random_formula(rng, 4, 4);
    const auto game = ordeq::reduce_sat(f);
    const auto verdict = ordeq::check_cnf_existence(game.form, game.spaces);
    const bool sat = oracle::satisfiable(f);
    ASSERT_EQ(verdict.kind == CnfVerdictKind::kYesOverExtremeTypes, !sat) << ordeq::write_dimacs(f);
    if (!sat) {
      ++yes;
      EXPECT_TRUE(verdict.definitive);
      expect_yes_holds(game, verdict);
      if (verdict.profile) expect_no_cardinal_gain(game, *verdict.profile, rng);
    }
  }
  EXPECT_GT(yes, 10U);
}

TEST(CnfSolveProperty, GenericGamesMatchFiniteSolve) {
  ordeq::Prng rng(5150);
  for (int trial = 0; trial < 100; ++trial) {
    ordeq::RandomGameBounds bounds;
    bounds.kind = ordeq::SpaceKind::kPartialOrder;
    auto game = ordeq::random_game(rng.next(), bounds);
    const std::size_t n = game.form.num_outcomes();
    ordeq::PreferenceCnfSpace cnf;
    for (std::size_t c = rng.between(0, 3); c > 0; --c) {
      std::vector<ordeq::OutcomePair> clause;
      for (std::size_t l = rng.between(1, 2); l > 0; --l) clause.push_back({rng.below(n), rng.below(n)});
      cnf.clauses.push_back(clause);
    }
    game.spaces[0] = cnf;
    const auto verdict = ordeq::check_cnf_existence(game.form, game.spaces);
    std::vector<ordeq::TypeSpaceSpec> finite{ordeq::FiniteSpace{oracle::reference_types(cnf, n)},
                                            game.spaces[1]};
    const auto reference = ordeq::solve(game.form, finite, ordeq::EoreQuery{});
    ASSERT_EQ(verdict.kind == CnfVerdictKind::kYesOverExtremeTypes, reference.yes) << "trial " << trial;
    if (reference.yes) expect_yes_holds(game, verdict);
  }
}

#include <gtest/gtest.h>

#include <fstream>
#include <set>

#include "oracles.hpp"
#include "ordeq/equilibrium.hpp"
#include "ordeq/error.hpp"
#include "ordeq/fixtures.hpp"
#include "ordeq/io.hpp"
#include "ordeq/typespace.hpp"
#include "ordeq/verifier.hpp"

using ordeq::PreBayesianGame;
using ordeq::RandomGameBounds;
using ordeq::Rational;
using ordeq::SpaceKind;
using ordeq::TypeSpaceSpec;

namespace {

bool is_distribution(const std::vector<Rational>& d) {
  Rational total;
  for (const auto& x : d) {
    if (x.sign() < 0) return false;
    total += x;
  }
  return total == Rational(1);
}

/// Every type space written out as its finite set of extreme types.
std::vector<TypeSpaceSpec> finite_reference(const PreBayesianGame& game) {
  std::vector<TypeSpaceSpec> finite;
  for (const auto& s : game.spaces) {
    finite.emplace_back(ordeq::FiniteSpace{oracle::reference_types(s, game.form.num_outcomes())});
  }
  return finite;
}

}  // namespace

TEST(FixtureSuite, AllChecksPass) {
  const auto report = ordeq::run_fixture_suite(ordeq::default_fixture_dir());
  EXPECT_GT(report.checks.size(), 20U);
  for (const auto& check : report.checks) EXPECT_TRUE(check.passed) << check.name << ": " << check.detail;
  EXPECT_TRUE(report.all_passed());
  EXPECT_EQ(report.failures(), 0U);
}

TEST(FixtureSuite, ManifestCoversEveryGame) {
  const auto entries = ordeq::load_manifest(ordeq::default_fixture_dir());
  std::set<std::string> names;
  for (const auto& e : entries) names.insert(e.name);
  for (const char* name : {"fig1", "fig1_finite_left", "fig1_finite_right", "fig3", "fig4", "fig5",
                           "fig6", "fig7_example"}) {
    EXPECT_EQ(names.count(name), 1U) << name;
  }
}

TEST(FixtureSuite, ReportsFailuresInsteadOfThrowing) {
  const auto dir = std::filesystem::temp_directory_path() / "ordeq_fixture_test_bad";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  std::filesystem::copy_file(ordeq::default_fixture_dir() / "fig3.game", dir / "fig3.game");
  std::ofstream(dir / "manifest.json")
      << R"({"version": 1, "fixtures": [{"name": "fig3", "description": "", "game": "fig3.game",
           "expected": {"eore": "yes"}}, {"name": "gone", "description": "", "game": "gone.game",
           "expected": {"eore": "no"}}]})";
  const auto report = ordeq::run_fixture_suite(dir);
  EXPECT_FALSE(report.all_passed());
  EXPECT_GE(report.failures(), 2U);
}

TEST(RandomGame, DeterministicInSeed) {
  for (auto kind : {SpaceKind::kPartialOrder, SpaceKind::kTotalOrder, SpaceKind::kDistributionOrder,
                    SpaceKind::kFinite, SpaceKind::kMixed}) {
    RandomGameBounds bounds;
    bounds.kind = kind;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      EXPECT_EQ(ordeq::random_game(seed, bounds), ordeq::random_game(seed, bounds));
    }
  }
  EXPECT_NE(ordeq::random_game(1), ordeq::random_game(2));
}

TEST(RandomGame, SeedOnePartialOrder) {
  const auto game = ordeq::random_game(1);
  EXPECT_EQ(game.form.num_players(), 2U);
  EXPECT_LE(game.form.num_outcomes(), 5U);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_LE(game.form.num_actions(i), 3U);
    EXPECT_TRUE(std::holds_alternative<ordeq::PartialOrderSpace>(game.spaces[i]));
  }
  EXPECT_NO_THROW(ordeq::validate_spaces(game.form, game.spaces));
}

TEST(RandomGame, SeedTwoTotalOrder) {
  RandomGameBounds bounds;
  bounds.kind = SpaceKind::kTotalOrder;
  const auto game = ordeq::random_game(2, bounds);
  for (const auto& s : game.spaces) {
    const auto* order = std::get_if<ordeq::TotalOrderSpace>(&s);
    ASSERT_NE(order, nullptr);
    std::set<std::size_t> seen(order->order.begin(), order->order.end());
    EXPECT_EQ(seen.size(), game.form.num_outcomes());
  }
}

TEST(RandomGame, SeedThreeDistributionOrder) {
  RandomGameBounds bounds;
  bounds.kind = SpaceKind::kDistributionOrder;
  const auto game = ordeq::random_game(3, bounds);
  for (const auto& s : game.spaces) {
    const auto* space = std::get_if<ordeq::DistributionOrderSpace>(&s);
    ASSERT_NE(space, nullptr);
    EXPECT_LE(space->pairs.size(), 3U);
    for (const auto& pair : space->pairs) {
      EXPECT_TRUE(is_distribution(pair.better));
      EXPECT_TRUE(is_distribution(pair.worse));
    }
  }
  EXPECT_NO_THROW(ordeq::validate_spaces(game.form, game.spaces));
}

TEST(RandomGame, EveryOutcomeIsReachable) {
  RandomGameBounds bounds;
  bounds.kind = SpaceKind::kMixed;
  bounds.max_players = 3;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto game = ordeq::random_game(seed, bounds);
    std::set<std::size_t> used(game.form.outcome_map().begin(), game.form.outcome_map().end());
    ASSERT_EQ(used.size(), game.form.num_outcomes()) << "seed " << seed;
    ASSERT_NO_THROW(ordeq::validate_spaces(game.form, game.spaces)) << "seed " << seed;
  }
}

TEST(ClosureProperty, SolveAndVerifyAgree) {
  ordeq::Prng rng(8080);
  std::size_t yes = 0;
  std::size_t no = 0;
  for (int trial = 0; trial < 500; ++trial) {
    RandomGameBounds bounds;
    bounds.kind = SpaceKind::kMixed;
    const std::uint64_t seed = rng.next();
    const auto game = ordeq::random_game(seed, bounds);
    const auto answer = ordeq::solve(game.form, game.spaces, ordeq::EoreQuery{});
    const auto finite = finite_reference(game);
    if (answer.yes) {
      ++yes;
      ASSERT_TRUE(ordeq::verify(game.form, game.spaces, *answer.profile).robust()) << "seed " << seed;
      ASSERT_TRUE(oracle::robust(game.form, finite, *answer.profile)) << "seed " << seed;
    } else {
      ++no;
      ASSERT_FALSE(ordeq::solve(game.form, finite, ordeq::EoreQuery{}).yes) << "seed " << seed;
    }
    // A SIRE Yes on a random target is also robust and puts mass on the target.
    const std::size_t target = rng.below(game.form.num_profiles());
    const auto sire = ordeq::solve(game.form, game.spaces, ordeq::SireQuery{target});
    ASSERT_EQ(sire.yes, ordeq::solve(game.form, finite, ordeq::SireQuery{target}).yes) << "seed " << seed;
    if (sire.yes) {
      ASSERT_GT(sire.profile->p[target], Rational(0));
      ASSERT_TRUE(ordeq::verify(game.form, game.spaces, *sire.profile).robust()) << "seed " << seed;
    }
  }
  EXPECT_GT(yes, 50U);
  EXPECT_GT(no, 50U);
}

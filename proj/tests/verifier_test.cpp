#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ordeq/equilibrium.hpp"
#include "ordeq/error.hpp"
#include "ordeq/fixtures.hpp"
#include "ordeq/typespace.hpp"
#include "ordeq/verifier.hpp"
#include "test_support.hpp"

using ordeq::Error;
using ordeq::ErrorKind;
using ordeq::GameForm;
using ordeq::MediatedProfile;
using ordeq::OutcomeDistribution;
using ordeq::Rational;
using ordeq::TotalOrderSpace;
using ordeq::TypeSpaceSpec;
using ordeq::UtilityVector;
using testing_support::fixture_game;
using testing_support::fixture_profile;

namespace {

/// Checks a verify report against the brute-force gains, in (player, deviation) order.
void expect_report_matches(const GameForm& game, const std::vector<TypeSpaceSpec>& spaces,
                           const MediatedProfile& profile, const ordeq::VerifyReport& report,
                           const std::string& context) {
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    const auto types = oracle::reference_types(spaces[i], game.num_outcomes());
    for (std::size_t dev = 0; dev < game.num_actions(i); ++dev) {
      Rational best;
      for (const auto& u : types) best = std::max(best, oracle::gain(game, i, dev, profile, u));
      if (best.sign() <= 0) continue;
      ASSERT_FALSE(report.robust()) << context;
      ASSERT_EQ(report.violation->player, i) << context;
      ASSERT_EQ(report.violation->deviation, dev) << context;
      ASSERT_EQ(report.violation->amount, best) << context;
      ASSERT_EQ(oracle::gain(game, i, dev, profile, report.violation->witness), best) << context;
      ASSERT_TRUE(ordeq::satisfies_space(report.violation->witness, spaces[i])) << context;
      return;
    }
  }
  ASSERT_TRUE(report.robust()) << context;
}

OutcomeDistribution point(std::size_t n, std::size_t o) {
  OutcomeDistribution d(n, Rational(0));
  d[o] = Rational(1);
  return d;
}

}  // namespace

TEST(Verify, Fig4MixedProfileIsRobust) {
  const auto doc = fixture_game("fig4.game");
  const auto profile = fixture_profile("fig4_eq.profile", doc.game.form);
  EXPECT_TRUE(ordeq::verify(doc.game.form, doc.game.spaces, profile).robust());
  // Any pure profile fails.
  for (std::size_t a = 0; a < 4; ++a) {
    EXPECT_FALSE(ordeq::verify(doc.game.form, doc.game.spaces, ordeq::pure_profile(doc.game.form, a)).robust());
  }
}

TEST(Verify, Fig1ProfileUnderEveryEncoding) {
  for (const char* file : {"fig1.game", "fig1_finite_left.game", "fig1_finite_right.game"}) {
    const auto doc = fixture_game(file);
    const auto profile = fixture_profile("fig1.profile", doc.game.form);
    const auto report = ordeq::verify(doc.game.form, doc.game.spaces, profile);
    EXPECT_TRUE(report.robust()) << file;
    expect_report_matches(doc.game.form, doc.game.spaces, profile, report, file);
  }
}

TEST(Verify, Fig6ProfileViolated) {
  const auto doc = fixture_game("fig6.game");
  const GameForm& game = doc.game.form;
  const auto profile = fixture_profile("fig6.profile", game);
  const auto report = ordeq::verify(game, doc.game.spaces, profile);
  ASSERT_FALSE(report.robust());
  expect_report_matches(game, doc.game.spaces, profile, report, "fig6");

  // Deviating Down: the cardinal witness with u(o11) = 9/20, u(o23) = 1 gains 1/20,
  // and no feasible type gains more than the lottery oracle's optimum.
  const std::size_t down = game.action_id(0, "Down");
  UtilityVector witness(6, Rational(0));
  witness[game.outcome_id("o11")] = Rational(9, 20);
  witness[game.outcome_id("o23")] = Rational(1);
  ASSERT_TRUE(ordeq::satisfies_space(witness, doc.game.spaces[0]));
  EXPECT_EQ(oracle::gain(game, 0, down, profile, witness), Rational(1, 20));
  const auto lp = ordeq::separation_oracle_dist(game, 0, down, profile.p, profile.q[0],
                                                std::get<ordeq::DistributionOrderSpace>(doc.game.spaces[0]));
  ASSERT_TRUE(lp.has_value());
  Rational best;
  for (const auto& u : oracle::reference_types(doc.game.spaces[0], 6)) {
    best = std::max(best, oracle::gain(game, 0, down, profile, u));
  }
  EXPECT_EQ(lp->amount, best);
  EXPECT_EQ(lp->amount, Rational(1, 10));
}

TEST(Verify, RejectsCnfAndMalformedProfiles) {
  const auto doc = fixture_game("fig4.game");
  const auto profile = fixture_profile("fig4_eq.profile", doc.game.form);
  try {
    (void)ordeq::verify(doc.game.form, {doc.game.spaces[0], ordeq::PreferenceCnfSpace{}}, profile);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUnsupportedSpace);
  }
  auto bad = profile;
  bad.q[0][0] = Rational(1);
  try {
    (void)ordeq::verify(doc.game.form, doc.game.spaces, bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kValidation);
  }
}

TEST(VerifyProperty, AgreesWithBruteForceOnRandomGames) {
  ordeq::Prng rng(31337);
  std::size_t robust = 0;
  for (int trial = 0; trial < 500; ++trial) {
    ordeq::RandomGameBounds bounds;
    bounds.kind = ordeq::SpaceKind::kMixed;
    bounds.max_players = trial % 5 == 0 ? 3 : 2;
    bounds.max_actions = bounds.max_players == 3 ? 2 : 3;
    const auto game = ordeq::random_game(rng.next(), bounds);
    MediatedProfile profile = ordeq::random_profile(rng, game.form);
    if (trial % 2 == 0) {
      const auto eq = ordeq::solve(game.form, game.spaces, ordeq::EoreQuery{});
      if (eq.yes) profile = *eq.profile;
    }
    const auto report = ordeq::verify(game.form, game.spaces, profile);
    robust += report.robust() ? 1 : 0;
    expect_report_matches(game.form, game.spaces, profile, report, "trial " + std::to_string(trial));
    if (HasFatalFailure()) return;
  }
  EXPECT_GT(robust, 50U);
}

TEST(StochasticDominance, Examples) {
  const TotalOrderSpace order{{0, 1, 2}};
  const OutcomeDistribution top = point(3, 0);
  const OutcomeDistribution mid = point(3, 1);
  const OutcomeDistribution mix{Rational(1, 2), Rational(0), Rational(1, 2)};
  EXPECT_TRUE(ordeq::stochastic_dominance(order, top, mid));
  EXPECT_FALSE(ordeq::stochastic_dominance(order, mid, top));
  EXPECT_TRUE(ordeq::stochastic_dominance(order, top, mix));
  EXPECT_FALSE(ordeq::stochastic_dominance(order, mix, mid));
  EXPECT_FALSE(ordeq::stochastic_dominance(order, mid, mix));
  EXPECT_TRUE(ordeq::stochastic_dominance(order, mix, mix));
}

TEST(StochasticDominance, Fig5OnPathBeatsRowThreeDeviation) {
  const auto doc = fixture_game("fig5.game");
  const GameForm& game = doc.game.form;
  const auto& order = std::get<TotalOrderSpace>(doc.game.spaces[0]);
  OutcomeDistribution on_path(8, Rational(0));
  on_path[game.outcome_id("cc1")] = on_path[game.outcome_id("cc2")] = Rational(1, 2);
  OutcomeDistribution row3(8, Rational(0));
  row3[game.outcome_id("dd11")] = row3[game.outcome_id("dd12")] = Rational(1, 2);
  OutcomeDistribution row4(8, Rational(0));
  row4[game.outcome_id("dd21")] = row4[game.outcome_id("dd22")] = Rational(1, 2);
  EXPECT_TRUE(ordeq::stochastic_dominance(order, on_path, row3));
  EXPECT_TRUE(ordeq::stochastic_dominance(order, on_path, row4));
  EXPECT_FALSE(ordeq::stochastic_dominance(order, row3, on_path));
}

TEST(StochasticDominanceProperty, EquivalentToThresholdTypes) {
  ordeq::Prng rng(4242);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = rng.between(1, 7);
    const auto order = ordeq::random_total_order(rng, n);
    const auto d1 = ordeq::random_distribution(rng, n, 3);
    const auto d2 = rng.chance(1, 4) ? d1 : ordeq::random_distribution(rng, n, 3);
    bool every_type = true;
    for (const auto& u : oracle::threshold_types(order.order)) {
      Rational e1;
      Rational e2;
      for (std::size_t o = 0; o < n; ++o) {
        e1 += d1[o] * u[o];
        e2 += d2[o] * u[o];
      }
      every_type = every_type && e1 >= e2;
    }
    ASSERT_EQ(ordeq::stochastic_dominance(order, d1, d2), every_type) << "trial " << trial;
  }
}

TEST(StochasticDominanceProperty, TotalOrderVerifyMatchesFiniteVerify) {
  ordeq::Prng rng(2468);
  for (int trial = 0; trial < 200; ++trial) {
    ordeq::RandomGameBounds bounds;
    bounds.kind = ordeq::SpaceKind::kTotalOrder;
    const auto game = ordeq::random_game(rng.next(), bounds);
    const auto profile = ordeq::random_profile(rng, game.form);
    std::vector<TypeSpaceSpec> finite;
    for (const auto& s : game.spaces) finite.emplace_back(ordeq::to_finite_space(s, game.form.num_outcomes()));
    const auto a = ordeq::verify(game.form, game.spaces, profile);
    const auto b = ordeq::verify(game.form, finite, profile);
    ASSERT_EQ(a.robust(), b.robust()) << "trial " << trial;
    if (!a.robust()) {
      ASSERT_EQ(a.violation->player, b.violation->player);
      ASSERT_EQ(a.violation->deviation, b.violation->deviation);
      ASSERT_EQ(a.violation->amount, b.violation->amount);
    }
  }
}

TEST(BestResponse, MatchesDirectMaximum) {
  ordeq::Prng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    ordeq::RandomGameBounds bounds;
    bounds.kind = ordeq::SpaceKind::kFinite;
    bounds.max_players = 3;
    const auto game = ordeq::random_game(rng.next(), bounds);
    const GameForm& form = game.form;
    const std::size_t i = rng.below(form.num_players());
    const auto u = ordeq::random_utility(rng, form.num_outcomes());
    const auto q = ordeq::random_distribution(rng, form.num_opponent_profiles(i));
    Rational best;
    for (std::size_t a = 0; a < form.num_actions(i); ++a) {
      Rational value;
      for (std::size_t k = 0; k < q.size(); ++k) value += q[k] * u[form.outcome_of(form.combine(i, a, k))];
      best = a == 0 ? value : std::max(best, value);
    }
    ASSERT_EQ(ordeq::best_response_value(form, i, u, q), best) << "trial " << trial;
  }
}

TEST(Averaging, ConstantSequenceIsTight) {
  const auto doc = fixture_game("fig4.game");
  const UtilityVector u{Rational(1), Rational(0)};
  const std::vector<Rational> q{Rational(1, 3), Rational(2, 3)};
  const auto check = ordeq::averaging_dominates(doc.game.form, 0, u, {q, q, q});
  EXPECT_TRUE(check.holds);
  EXPECT_EQ(check.lhs, check.rhs);
  EXPECT_THROW((void)ordeq::averaging_dominates(doc.game.form, 0, u, {}), Error);
}

TEST(Averaging, StrictGainFromAveraging) {
  // Matching pennies punisher alternating Left, Right: each round the deviator
  // best-responds for 1, while the average holds them to 1/2.
  const auto doc = fixture_game("fig4.game");
  const UtilityVector u{Rational(0), Rational(1)};  // player 2 likes o2
  const auto check = ordeq::averaging_dominates(doc.game.form, 1, u,
                                                {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}});
  EXPECT_EQ(check.lhs, Rational(1, 2));
  EXPECT_EQ(check.rhs, Rational(1));
  EXPECT_TRUE(check.holds);
}

TEST(AveragingProperty, AlwaysHolds) {
  ordeq::Prng rng(1000);
  for (int trial = 0; trial < 1000; ++trial) {
    ordeq::RandomGameBounds bounds;
    bounds.kind = ordeq::SpaceKind::kFinite;
    bounds.max_players = 3;
    const auto game = ordeq::random_game(rng.next(), bounds);
    const std::size_t i = rng.below(game.form.num_players());
    const auto u = ordeq::random_utility(rng, game.form.num_outcomes(), 6);
    std::vector<std::vector<Rational>> seq;
    for (std::size_t t = rng.between(1, 5); t > 0; --t) {
      seq.push_back(ordeq::random_distribution(rng, game.form.num_opponent_profiles(i)));
    }
    const auto check = ordeq::averaging_dominates(game.form, i, u, seq);
    ASSERT_TRUE(check.holds) << "trial " << trial;
    ASSERT_LE(check.lhs, check.rhs) << "trial " << trial;
  }
}

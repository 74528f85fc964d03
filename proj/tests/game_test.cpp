#include <gtest/gtest.h>

#include <functional>

#include "ordeq/error.hpp"
#include "ordeq/fixtures.hpp"
#include "ordeq/game.hpp"

using ordeq::ActionProfile;
using ordeq::Error;
using ordeq::ErrorKind;
using ordeq::GameForm;
using ordeq::OutcomePair;
using ordeq::Rational;

namespace {

/// 2 x 3 x 2 profiles; outcome = profile index mod 4.
GameForm three_player() {
  std::vector<std::size_t> map(12);
  for (std::size_t a = 0; a < 12; ++a) map[a] = a % 4;
  return GameForm({{"a", "b"}, {"x", "y", "z"}, {"l", "r"}}, {"o0", "o1", "o2", "o3"}, map);
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::kParse;
}

}  // namespace

TEST(GameForm, LexicographicIndexing) {
  const GameForm g = three_player();
  EXPECT_EQ(g.num_profiles(), 12U);
  EXPECT_EQ(g.profile_index({0, 0, 0}), 0U);
  EXPECT_EQ(g.profile_index({0, 0, 1}), 1U);
  EXPECT_EQ(g.profile_index({0, 1, 0}), 2U);
  EXPECT_EQ(g.profile_index({1, 2, 1}), 11U);
  EXPECT_EQ(g.profile_at(7), (ActionProfile{1, 0, 1}));
  EXPECT_EQ(g.num_opponent_profiles(0), 6U);
  EXPECT_EQ(g.num_opponent_profiles(1), 4U);
  EXPECT_EQ(g.num_opponent_profiles(2), 6U);
}

TEST(GameForm, OpponentsAndCombineAreConsistent) {
  const GameForm g = three_player();
  for (std::size_t a = 0; a < g.num_profiles(); ++a) {
    const ActionProfile profile = g.profile_at(a);
    EXPECT_EQ(g.profile_index(profile), a);
    for (std::size_t i = 0; i < 3; ++i) {
      const std::size_t opp = g.opponents_index(a, i);
      EXPECT_EQ(g.action_of(a, i), profile[i]);
      EXPECT_EQ(g.combine(i, profile[i], opp), a);
      ActionProfile others;
      for (std::size_t j = 0; j < 3; ++j) {
        if (j != i) others.push_back(profile[j]);
      }
      EXPECT_EQ(g.opponents_at(i, opp), others);
    }
  }
  const auto all = ordeq::profiles_of(g);
  ASSERT_EQ(all.size(), 12U);
  for (std::size_t a = 0; a < all.size(); ++a) EXPECT_EQ(all[a], g.profile_at(a));
  const auto opps = ordeq::opponents_profiles_of(g, 1);
  ASSERT_EQ(opps.size(), 4U);
  EXPECT_EQ(opps[3], (ActionProfile{1, 1}));
}

TEST(GameForm, Lookups) {
  const GameForm g = three_player();
  EXPECT_EQ(g.outcome_id("o2"), 2U);
  EXPECT_EQ(g.action_id(1, "z"), 2U);
  EXPECT_EQ(kind_of([&] { (void)g.outcome_id("nope"); }), ErrorKind::kUnknownOutcome);
  EXPECT_EQ(kind_of([&] { (void)g.action_id(0, "z"); }), ErrorKind::kValidation);
}

TEST(GameForm, ValidationFailures) {
  EXPECT_EQ(kind_of([] { GameForm({{"a"}}, {"o"}, {0}); }), ErrorKind::kValidation);
  EXPECT_EQ(kind_of([] { GameForm({{"a"}, {}}, {"o"}, {}); }), ErrorKind::kValidation);
  EXPECT_EQ(kind_of([] { GameForm({{"a", "b"}, {"x"}}, {"o"}, {0}); }), ErrorKind::kValidation);
  EXPECT_EQ(kind_of([] { GameForm({{"a"}, {"x"}}, {"o", "o"}, {0}); }), ErrorKind::kValidation);
  EXPECT_EQ(kind_of([] { GameForm({{"a"}, {"x"}}, {"o"}, {3}); }), ErrorKind::kValidation);
  EXPECT_EQ(kind_of([] { GameForm({{"a", "a"}, {"x"}}, {"o"}, {0, 0}); }), ErrorKind::kValidation);
}

TEST(GameForm, PushForwardDistributions) {
  const GameForm g({{"T", "B"}, {"L", "R"}}, {"o1", "o2"}, {0, 1, 1, 0});
  const std::vector<Rational> p{Rational(1, 2), Rational(1, 4), Rational(1, 4), Rational(0)};
  EXPECT_EQ(ordeq::outcome_distribution(g, p), (std::vector<Rational>{Rational(1, 2), Rational(1, 2)}));
  const std::vector<Rational> q{Rational(1, 3), Rational(2, 3)};
  // player 2 plays R against the row mix (1/3 T, 2/3 B): o2 w.p. 1/3, o1 w.p. 2/3
  EXPECT_EQ(ordeq::deviation_distribution(g, 1, 1, q),
            (std::vector<Rational>{Rational(2, 3), Rational(1, 3)}));
}

TEST(PreferenceRelation, ClosureIsReflexiveAndTransitive) {
  const auto rel = ordeq::partial_order_closure(4, {{0, 1}, {1, 2}});
  EXPECT_TRUE(rel.holds(0, 2));
  EXPECT_TRUE(rel.holds(3, 3));
  EXPECT_FALSE(rel.holds(2, 0));
  EXPECT_FALSE(rel.holds(0, 3));
  EXPECT_EQ(rel.count(), 4U + 3U);
  EXPECT_EQ(ordeq::transitive_closure(rel), rel);
}

TEST(PreferenceRelation, CyclesMakeOutcomesEquivalent) {
  const auto rel = ordeq::partial_order_closure(3, {{0, 1}, {1, 2}, {2, 0}});
  for (std::size_t x = 0; x < 3; ++x) {
    for (std::size_t y = 0; y < 3; ++y) EXPECT_TRUE(rel.holds(x, y));
  }
  EXPECT_EQ(kind_of([] { (void)ordeq::partial_order_closure(2, {{0, 2}}); }),
            ErrorKind::kUnknownOutcome);
}

TEST(PreferenceRelation, ClosureMatchesPathSearch) {
  ordeq::Prng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = rng.between(1, 7);
    std::vector<OutcomePair> pairs;
    for (std::size_t k = rng.below(10); k > 0; --k) pairs.push_back({rng.below(n), rng.below(n)});
    const auto rel = ordeq::partial_order_closure(n, pairs);
    for (std::size_t s = 0; s < n; ++s) {
      // depth-first search from s along better -> worse
      std::vector<bool> reach(n, false);
      std::vector<std::size_t> stack{s};
      reach[s] = true;
      while (!stack.empty()) {
        const std::size_t x = stack.back();
        stack.pop_back();
        for (const auto& pr : pairs) {
          if (pr.better == x && !reach[pr.worse]) {
            reach[pr.worse] = true;
            stack.push_back(pr.worse);
          }
        }
      }
      for (std::size_t t = 0; t < n; ++t) ASSERT_EQ(rel.holds(s, t), reach[t]);
    }
  }
}

TEST(TypeSpaceSpec, Validation) {
  using ordeq::validate_space;
  EXPECT_NO_THROW(validate_space(ordeq::TotalOrderSpace{{2, 0, 1}}, 3));
  EXPECT_EQ(kind_of([] { validate_space(ordeq::TotalOrderSpace{{0, 1}}, 3); }), ErrorKind::kValidation);
  EXPECT_EQ(kind_of([] { validate_space(ordeq::TotalOrderSpace{{0, 0, 1}}, 3); }),
            ErrorKind::kValidation);
  EXPECT_EQ(kind_of([] { validate_space(ordeq::PartialOrderSpace{{{0, 5}}}, 3); }),
            ErrorKind::kUnknownOutcome);
  EXPECT_EQ(kind_of([] {
              validate_space(ordeq::FiniteSpace{{{Rational(0), Rational(3, 2)}}}, 2);
            }),
            ErrorKind::kValidation);
  EXPECT_EQ(kind_of([] {
              validate_space(ordeq::DistributionOrderSpace{{{{Rational(1), Rational(0)},
                                                              {Rational(1, 2), Rational(1, 4)}}}},
                             2);
            }),
            ErrorKind::kValidation);
  EXPECT_EQ(ordeq::space_kind_name(ordeq::PreferenceCnfSpace{}), "preference_cnf");
  EXPECT_EQ(ordeq::chain_pairs(ordeq::TotalOrderSpace{{2, 0, 1}}),
            (std::vector<OutcomePair>{{2, 0}, {0, 1}}));
}

TEST(MediatedProfile, ValidationAndPureProfiles) {
  const GameForm g({{"T", "B"}, {"L", "C", "R"}}, {"o"}, {0, 0, 0, 0, 0, 0});
  const auto pure = ordeq::pure_profile(g, g.profile_index({1, 2}));
  EXPECT_NO_THROW(ordeq::validate_profile(g, pure));
  EXPECT_EQ(pure.p[5], Rational(1));
  EXPECT_EQ(pure.q[0], (std::vector<Rational>{Rational(0), Rational(0), Rational(1)}));
  EXPECT_EQ(pure.q[1], (std::vector<Rational>{Rational(0), Rational(1)}));

  auto bad = pure;
  bad.p[0] = Rational(1, 10);
  EXPECT_EQ(kind_of([&] { ordeq::validate_profile(g, bad); }), ErrorKind::kValidation);
  bad = pure;
  bad.q[1] = {Rational(2), Rational(-1)};
  EXPECT_EQ(kind_of([&] { ordeq::validate_profile(g, bad); }), ErrorKind::kValidation);
  bad = pure;
  bad.q.pop_back();
  EXPECT_EQ(kind_of([&] { ordeq::validate_profile(g, bad); }), ErrorKind::kValidation);
}

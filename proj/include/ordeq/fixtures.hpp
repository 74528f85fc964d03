#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ordeq/game.hpp"
#include "ordeq/io.hpp"

namespace ordeq {

/// One bundled game as listed in manifest.json.
struct FixtureEntry {
  std::string name;
  std::string description;
  std::filesystem::path game_file;
  std::optional<std::filesystem::path> profile_file;
  /// Expected answers, e.g. {"eore": "yes", "verify": "robust_equilibrium"}.
  std::map<std::string, std::string> expected;
};

/// The directory compiled into the library, overridden by $ORDEQ_FIXTURES.
std::filesystem::path default_fixture_dir();

/// Reads <dir>/manifest.json. Paths in the result are absolute or relative
/// to the working directory. Throws Error(kParse).
std::vector<FixtureEntry> load_manifest(const std::filesystem::path& dir);

GameDocument load_fixture_game(const FixtureEntry& entry);
/// Throws Error(kValidation) if the entry has no profile.
MediatedProfile load_fixture_profile(const FixtureEntry& entry, const GameForm& game);

struct FixtureCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct FixtureReport {
  std::vector<FixtureCheck> checks;
  [[nodiscard]] bool all_passed() const;
  [[nodiscard]] std::size_t failures() const;
};

/// Runs every manifest expectation plus the structural checks on the bundled
/// games. Never throws for a failing check; errors become failed entries.
FixtureReport run_fixture_suite(const std::filesystem::path& dir);

// ---------------------------------------------------------------------------
// Seeded random instances.

/// mt19937_64 with modulo draws, so streams are identical on every platform.
class Prng {
 public:
  explicit Prng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  /// Uniform-ish in [0, n); n > 0.
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  /// In [lo, hi].
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
  bool chance(std::size_t num, std::size_t den) { return below(den) < num; }

 private:
  std::mt19937_64 engine_;
};

enum class SpaceKind { kFinite, kTotalOrder, kPartialOrder, kDistributionOrder, kMixed };

struct RandomGameBounds {
  std::size_t min_players = 2;
  std::size_t max_players = 2;
  std::size_t min_actions = 1;
  std::size_t max_actions = 3;
  std::size_t min_outcomes = 2;
  std::size_t max_outcomes = 5;
  SpaceKind kind = SpaceKind::kPartialOrder;
  /// Lottery comparisons per distribution-order space.
  std::size_t max_pairs = 3;
  std::size_t max_finite_types = 3;
  /// Denominator used for random utilities and lottery weights.
  std::size_t denominator = 4;
};

/// Deterministic in (seed, bounds). Every outcome appears in the outcome map.
PreBayesianGame random_game(std::uint64_t seed, const RandomGameBounds& bounds = {});

/// Integer weights in [0, max_weight], at least one positive, normalized.
std::vector<Rational> random_distribution(Prng& rng, std::size_t size, std::size_t max_weight = 4);
/// Random p and q blocks.
MediatedProfile random_profile(Prng& rng, const GameForm& game, std::size_t max_weight = 4);
/// Values k / denominator.
UtilityVector random_utility(Prng& rng, std::size_t num_outcomes, std::size_t denominator = 4);
PartialOrderSpace random_partial_order(Prng& rng, std::size_t num_outcomes);
TotalOrderSpace random_total_order(Prng& rng, std::size_t num_outcomes);

}  // namespace ordeq

#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ordeq/game.hpp"

namespace ordeq {

/// A game file: the pre-Bayesian game plus free-form metadata.
struct GameDocument {
  std::string name;
  std::string source;
  PreBayesianGame game;
  friend bool operator==(const GameDocument&, const GameDocument&) = default;
};

/// JSON game format:
///   {"name": ..., "source": ..., "players": n,
///    "actions": [[...], ...], "outcomes": [...],
///    "outcome_map": {"a1,a2,...": outcome, ...},
///    "type_spaces": [{"kind": "finite", "types": [{outcome: rat}, ...]},
///                    {"kind": "total_order", "order": [outcome, ...]},
///                    {"kind": "partial_order", "pairs": [[o, o'], ...]},
///                    {"kind": "distribution_order", "pairs": [[{o: rat}, {o: rat}], ...]},
///                    {"kind": "preference_cnf", "clauses": [[[o, o'], ...], ...]}]}
/// Rationals are strings "<int>" or "<int>/<posint>".
///
/// Throws Error(kParse) for malformed JSON or field types and
/// Error(kValidation) for structurally invalid games; messages name the field.
GameDocument parse_game(std::string_view text);
std::string serialize_game(const GameDocument& doc);

/// {"p": {profile-key: rat}, "q": [{opponents-key: rat}, ...]}; omitted keys
/// are probability 0. With `require_q` false a missing "q" yields empty
/// punishment blocks (used for AARE targets).
MediatedProfile parse_profile(std::string_view text, const GameForm& game, bool require_q = true);
std::string serialize_profile(const MediatedProfile& profile, const GameForm& game);

/// {profile-key: rat} with omitted keys 0, e.g. an OMIRE objective.
std::vector<Rational> parse_profile_map(std::string_view text, const GameForm& game);

/// Comma-joined action names, e.g. "Top,Left".
std::string profile_key(const GameForm& game, std::size_t profile_index);
std::string opponents_key(const GameForm& game, PlayerId i, std::size_t opponents_index);
/// Throws Error(kValidation) for unknown keys.
std::size_t parse_profile_key(const GameForm& game, std::string_view key);

/// Throws Error(kParse) if the file cannot be read.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace ordeq

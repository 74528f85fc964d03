#pragma once

#include <cstddef>
#include <vector>

#include "ordeq/game.hpp"

namespace ordeq {

/// Default ceiling on 2^|O| candidate vectors for exhaustive enumeration.
inline constexpr std::size_t kDefaultEnumerationCap = std::size_t{1} << 20;

/// Whether `u` is a type in `spec`. Throws Error(kUnknownOutcome) when the
/// space mentions an outcome `u` does not cover.
bool satisfies_space(const UtilityVector& u, const TypeSpaceSpec& spec);

/// All 0/1 types of a TotalOrder (|O|+1 thresholds, all-zero first),
/// PartialOrder (upward-closed 1-sets) or PreferenceCnf space, in a fixed
/// order. Throws Error(kUnsupportedSpace) for Finite and DistributionOrder
/// and Error(kCapExceeded) when 2^|O| exceeds `cap`.
std::vector<UtilityVector> enumerate_extreme_types(const TypeSpaceSpec& spec,
                                                   std::size_t num_outcomes,
                                                   std::size_t cap = kDefaultEnumerationCap);

/// Whether every type in `spec` weakly prefers `better` to `worse`.
/// Throws Error(kUnsupportedSpace) for PreferenceCnf.
bool entails_preference(const TypeSpaceSpec& spec, std::size_t num_outcomes, OutcomeId better,
                        OutcomeId worse);

/// The pairwise constraints that carve out the 0/1 types of a distribution
/// order whose preferred sides are all point masses: delta_o >= r forces
/// u(o') = 1 => u(o) = 1 for each o' in the support of r. Throws
/// Error(kUnsupportedSpace) if some preferred side is a genuine lottery.
std::vector<OutcomePair> zero_one_restriction(const DistributionOrderSpace& spec);

/// Finite space listing the extreme types of `spec` (a Finite space is
/// returned unchanged).
FiniteSpace to_finite_space(const TypeSpaceSpec& spec, std::size_t num_outcomes,
                            std::size_t cap = kDefaultEnumerationCap);

}  // namespace ordeq

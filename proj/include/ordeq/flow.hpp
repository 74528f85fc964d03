#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ordeq/rational.hpp"

namespace ordeq {

struct FlowEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  /// std::nullopt marks an infinite-capacity edge.
  std::optional<Rational> capacity;
};

struct FlowNetwork {
  std::size_t node_count = 0;
  std::size_t source = 0;
  std::size_t sink = 1;
  std::vector<FlowEdge> edges;
};

struct FlowResult {
  Rational value;
  /// Nodes reachable from the source in the final residual graph (sorted).
  std::vector<std::size_t> source_side;
};

/// Shortest-augmenting-path max flow with exact rational capacities.
/// Throws Error(kValidation) for malformed networks, negative capacities, or
/// a source-sink path made only of infinite edges.
FlowResult max_flow(const FlowNetwork& net);

/// Sum of capacities of edges leaving `source_side`; infinite edges crossing
/// the cut make the result nullopt.
std::optional<Rational> cut_capacity(const FlowNetwork& net,
                                     const std::vector<std::size_t>& source_side);

struct Implication {
  std::size_t from = 0;  ///< if `from` is accepted ...
  std::size_t to = 0;    ///< ... then `to` must be accepted as well
};

struct ClosureInstance {
  std::vector<Rational> values;  ///< one per item
  std::vector<Implication> implications;
};

struct ClosureResult {
  std::vector<std::size_t> accepted;  ///< sorted item ids
  Rational total_value;
};

/// Maximum-weight closure via the standard min-cut reduction: source -> item
/// with capacity v for v > 0, item -> sink with capacity -v for v < 0, and an
/// uncuttable edge for every implication.
ClosureResult closure_solve(const ClosureInstance& inst);

/// The network closure_solve builds; node 0 is the source, node 1 the sink,
/// item k is node k + 2.
FlowNetwork closure_network(const ClosureInstance& inst);

}  // namespace ordeq

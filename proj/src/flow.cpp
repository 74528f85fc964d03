#include "ordeq/flow.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <string>

#include "ordeq/error.hpp"

namespace ordeq {

namespace {

struct ResidualArc {
  std::size_t to;
  std::size_t reverse;  // index of the paired arc in adjacency[to]
  Rational residual;
};

}  // namespace

FlowResult max_flow(const FlowNetwork& net) {
  if (net.source >= net.node_count || net.sink >= net.node_count) {
    throw Error(ErrorKind::kValidation, "source/sink outside the network");
  }
  if (net.source == net.sink) throw Error(ErrorKind::kValidation, "source equals sink");

  // Infinite capacities become one more than every finite capacity combined;
  // a flow reaching that value can only come from an all-infinite path.
  Rational finite_total;
  for (const auto& e : net.edges) {
    if (e.from >= net.node_count || e.to >= net.node_count) {
      throw Error(ErrorKind::kValidation, "edge endpoint outside the network");
    }
    if (e.capacity) {
      if (e.capacity->sign() < 0) throw Error(ErrorKind::kValidation, "negative capacity");
      finite_total += *e.capacity;
    }
  }
  const Rational infinity = finite_total + Rational(1);

  std::vector<std::vector<ResidualArc>> adjacency(net.node_count);
  for (const auto& e : net.edges) {
    if (e.from == e.to) continue;
    const Rational cap = e.capacity ? *e.capacity : infinity;
    adjacency[e.from].push_back({e.to, adjacency[e.to].size(), cap});
    adjacency[e.to].push_back({e.from, adjacency[e.from].size() - 1, Rational(0)});
  }

  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  Rational value;
  std::vector<std::size_t> parent_node(net.node_count);
  std::vector<std::size_t> parent_arc(net.node_count);
  while (true) {
    std::fill(parent_node.begin(), parent_node.end(), kNone);
    parent_node[net.source] = net.source;
    std::deque<std::size_t> frontier{net.source};
    while (!frontier.empty() && parent_node[net.sink] == kNone) {
      const std::size_t u = frontier.front();
      frontier.pop_front();
      for (std::size_t k = 0; k < adjacency[u].size(); ++k) {
        const auto& arc = adjacency[u][k];
        if (arc.residual.sign() > 0 && parent_node[arc.to] == kNone) {
          parent_node[arc.to] = u;
          parent_arc[arc.to] = k;
          frontier.push_back(arc.to);
        }
      }
    }
    if (parent_node[net.sink] == kNone) break;

    Rational bottleneck = infinity;
    for (std::size_t v = net.sink; v != net.source; v = parent_node[v]) {
      bottleneck = std::min(bottleneck, adjacency[parent_node[v]][parent_arc[v]].residual);
    }
    for (std::size_t v = net.sink; v != net.source; v = parent_node[v]) {
      auto& arc = adjacency[parent_node[v]][parent_arc[v]];
      arc.residual -= bottleneck;
      adjacency[v][arc.reverse].residual += bottleneck;
    }
    value += bottleneck;
    if (value >= infinity) {
      throw Error(ErrorKind::kValidation, "unbounded flow along infinite-capacity path");
    }
  }

  FlowResult result;
  result.value = std::move(value);
  for (std::size_t v = 0; v < net.node_count; ++v) {
    if (parent_node[v] != kNone) result.source_side.push_back(v);
  }
  return result;
}

std::optional<Rational> cut_capacity(const FlowNetwork& net,
                                     const std::vector<std::size_t>& source_side) {
  std::vector<bool> inside(net.node_count, false);
  for (std::size_t v : source_side) inside.at(v) = true;
  Rational total;
  for (const auto& e : net.edges) {
    if (!inside[e.from] || inside[e.to]) continue;
    if (!e.capacity) return std::nullopt;
    total += *e.capacity;
  }
  return total;
}

FlowNetwork closure_network(const ClosureInstance& inst) {
  const std::size_t items = inst.values.size();
  FlowNetwork net;
  net.node_count = items + 2;
  net.source = 0;
  net.sink = 1;
  for (std::size_t k = 0; k < items; ++k) {
    const Rational& v = inst.values[k];
    if (v.sign() > 0) net.edges.push_back({0, k + 2, v});
    if (v.sign() < 0) net.edges.push_back({k + 2, 1, -v});
  }
  for (const auto& imp : inst.implications) {
    if (imp.from >= items || imp.to >= items) {
      throw Error(ErrorKind::kValidation, "implication references unknown item");
    }
    net.edges.push_back({imp.from + 2, imp.to + 2, std::nullopt});
  }
  return net;
}

ClosureResult closure_solve(const ClosureInstance& inst) {
  // Implication edges get capacity sum |v| + 1, more than the cut {source}
  // costs, so a minimum cut never crosses one.
  FlowNetwork net = closure_network(inst);
  Rational bound(1);
  for (const auto& v : inst.values) bound += v.abs();
  for (auto& e : net.edges) {
    if (!e.capacity) e.capacity = bound;
  }
  const FlowResult flow = max_flow(net);

  ClosureResult result;
  Rational positive_total;
  for (const auto& v : inst.values) {
    if (v.sign() > 0) positive_total += v;
  }
  for (std::size_t node : flow.source_side) {
    if (node >= 2) result.accepted.push_back(node - 2);
  }
  result.total_value = positive_total - flow.value;
  return result;
}

}  // namespace ordeq

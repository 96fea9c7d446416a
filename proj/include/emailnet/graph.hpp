#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "emailnet/record.hpp"

namespace emailnet {

using NodeId = std::uint32_t;
using Weight = std::int64_t;

// Directed (sender, recipient) -> email count. Self-pairs are dropped on
// insertion; all stored counts are >= 1.
class InteractionLedger {
public:
    void add(const std::string& sender, const std::string& recipient, Weight n = 1);

    Weight at(const std::string& sender, const std::string& recipient) const;
    Weight total() const;
    bool empty() const { return counts_.empty(); }

    const std::map<std::pair<std::string, std::string>, Weight>& counts() const {
        return counts_;
    }

private:
    std::map<std::pair<std::string, std::string>, Weight> counts_;
};

// One count increment per (sender, recipient) pair for every distinct
// recipient of each record. No edges between co-recipients.
InteractionLedger build_ledger(std::span<const EmailRecord> records);

enum class HopScope { OwnerIncident, AllObserved };

std::optional<HopScope> parse_hop_scope(std::string_view name);
const char* to_string(HopScope scope);

// Undirected weighted graph. Nodes are kept in lexicographic address order;
// that order is the canonical tie-breaking order everywhere downstream.
class UWGraph {
public:
    UWGraph() = default;

    // Node ids referencing unknown addresses, self-loops, duplicate edges and
    // non-positive weights are rejected.
    static UWGraph from_edges(
        std::vector<std::string> nodes,
        const std::vector<std::tuple<std::string, std::string, Weight>>& edges);

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edge_count_; }
    const std::vector<std::string>& nodes() const { return nodes_; }
    const std::string& address(NodeId id) const { return nodes_[id]; }

    std::optional<NodeId> find(std::string_view addr) const;
    NodeId require(std::string_view addr) const;  // throws UnknownNode

    // Neighbors sorted by node id.
    std::span<const std::pair<NodeId, Weight>> neighbors(NodeId id) const;
    std::size_t degree(NodeId id) const { return adjacency_[id].size(); }
    Weight weight(NodeId u, NodeId v) const;  // 0 when not adjacent
    Weight max_incident_weight(NodeId id) const;
    Weight total_weight() const;

    // Edges as (u, v, weight) with u < v, ordered by (u, v).
    std::vector<std::tuple<NodeId, NodeId, Weight>> edges() const;

private:
    std::vector<std::string> nodes_;
    std::vector<std::vector<std::pair<NodeId, Weight>>> adjacency_;
    std::size_t edge_count_ = 0;
};

// Merges owner aliases into one node, optionally restricts to edges incident
// to the owner, and folds both directions into undirected weights.
// Throws OwnerAbsent when no ledger pair involves the owner.
UWGraph aggregate(const InteractionLedger& ledger, const OwnerSpec& owner, HopScope scope);

// Removes edges below min_weight and, when drop_isolated is set, the nodes
// left without edges. Throws EmptyGraph when no node survives.
UWGraph prune(const UWGraph& graph, Weight min_weight, bool drop_isolated);

}  // namespace emailnet

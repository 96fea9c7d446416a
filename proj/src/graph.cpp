#include "emailnet/graph.hpp"

#include <algorithm>
#include <cassert>

#include "emailnet/errors.hpp"

namespace emailnet {

void InteractionLedger::add(const std::string& sender, const std::string& recipient,
                            Weight n) {
    if (sender == recipient || n <= 0) return;
    counts_[{sender, recipient}] += n;
}

Weight InteractionLedger::at(const std::string& sender, const std::string& recipient) const {
    auto it = counts_.find({sender, recipient});
    return it == counts_.end() ? 0 : it->second;
}

Weight InteractionLedger::total() const {
    Weight sum = 0;
    for (const auto& [pair, count] : counts_) sum += count;
    return sum;
}

InteractionLedger build_ledger(std::span<const EmailRecord> records) {
    InteractionLedger ledger;
    for (const EmailRecord& record : records) {
        for (const std::string& recipient : record.recipients()) {
            ledger.add(record.sender, recipient);
        }
    }
    return ledger;
}

std::optional<HopScope> parse_hop_scope(std::string_view name) {
    if (name == "owner-incident") return HopScope::OwnerIncident;
    if (name == "all-observed") return HopScope::AllObserved;
    return std::nullopt;
}

const char* to_string(HopScope scope) {
    return scope == HopScope::OwnerIncident ? "owner-incident" : "all-observed";
}

UWGraph UWGraph::from_edges(
    std::vector<std::string> nodes,
    const std::vector<std::tuple<std::string, std::string, Weight>>& edges) {
    UWGraph graph;
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    if (!nodes.empty() && nodes.front().empty()) {
        throw_error(Errc::InvalidFormat, "empty node id");
    }
    graph.nodes_ = std::move(nodes);
    graph.adjacency_.resize(graph.nodes_.size());

    for (const auto& [u, v, w] : edges) {
        auto ui = graph.find(u);
        auto vi = graph.find(v);
        if (!ui || !vi) {
            throw_error(Errc::UnknownNode, "edge endpoint not in node set: " + u + " -- " + v);
        }
        if (*ui == *vi) {
            throw_error(Errc::InvalidFormat, "self-loop on " + u);
        }
        if (w <= 0) {
            throw_error(Errc::InvalidFormat, "non-positive edge weight on " + u + " -- " + v);
        }
        if (graph.weight(*ui, *vi) != 0) {
            throw_error(Errc::InvalidFormat, "duplicate edge " + u + " -- " + v);
        }
        graph.adjacency_[*ui].emplace_back(*vi, w);
        graph.adjacency_[*vi].emplace_back(*ui, w);
        ++graph.edge_count_;
    }
    for (auto& neighbors : graph.adjacency_) {
        std::sort(neighbors.begin(), neighbors.end());
    }
    return graph;
}

std::optional<NodeId> UWGraph::find(std::string_view addr) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), addr);
    if (it == nodes_.end() || *it != addr) return std::nullopt;
    return static_cast<NodeId>(it - nodes_.begin());
}

NodeId UWGraph::require(std::string_view addr) const {
    auto id = find(addr);
    if (!id) {
        throw_error(Errc::UnknownNode, "unknown node: " + std::string(addr));
    }
    return *id;
}

std::span<const std::pair<NodeId, Weight>> UWGraph::neighbors(NodeId id) const {
    return adjacency_[id];
}

Weight UWGraph::weight(NodeId u, NodeId v) const {
    const auto& neighbors = adjacency_[u];
    auto it = std::lower_bound(neighbors.begin(), neighbors.end(), v,
                               [](const auto& entry, NodeId id) { return entry.first < id; });
    if (it == neighbors.end() || it->first != v) return 0;
    return it->second;
}

Weight UWGraph::max_incident_weight(NodeId id) const {
    Weight best = 0;
    for (const auto& [neighbor, w] : adjacency_[id]) best = std::max(best, w);
    return best;
}

Weight UWGraph::total_weight() const {
    Weight sum = 0;
    for (NodeId u = 0; u < adjacency_.size(); ++u) {
        for (const auto& [v, w] : adjacency_[u]) {
            if (u < v) sum += w;
        }
    }
    return sum;
}

std::vector<std::tuple<NodeId, NodeId, Weight>> UWGraph::edges() const {
    std::vector<std::tuple<NodeId, NodeId, Weight>> out;
    out.reserve(edge_count_);
    for (NodeId u = 0; u < adjacency_.size(); ++u) {
        for (const auto& [v, w] : adjacency_[u]) {
            if (u < v) out.emplace_back(u, v, w);
        }
    }
    return out;
}

UWGraph aggregate(const InteractionLedger& ledger, const OwnerSpec& owner, HopScope scope) {
    // Fold owner aliases first; alias-to-alias traffic collapses to self-pairs
    // and is dropped.
    InteractionLedger merged;
    bool owner_seen = false;
    for (const auto& [pair, count] : ledger.counts()) {
        const std::string& sender = owner.merge(pair.first);
        const std::string& recipient = owner.merge(pair.second);
        if (sender == owner.label() || recipient == owner.label()) owner_seen = true;
        merged.add(sender, recipient, count);
    }
    if (!owner_seen) {
        throw_error(Errc::OwnerAbsent, "no interaction involves owner " + owner.label());
    }

    std::map<std::pair<std::string, std::string>, Weight> undirected;
    for (const auto& [pair, count] : merged.counts()) {
        if (scope == HopScope::OwnerIncident && pair.first != owner.label() &&
            pair.second != owner.label()) {
            continue;
        }
        auto key = pair.first < pair.second ? pair : std::make_pair(pair.second, pair.first);
        undirected[key] += count;
    }

    std::vector<std::string> nodes;
    std::vector<std::tuple<std::string, std::string, Weight>> edges;
    edges.reserve(undirected.size());
    for (const auto& [pair, weight] : undirected) {
        nodes.push_back(pair.first);
        nodes.push_back(pair.second);
        edges.emplace_back(pair.first, pair.second, weight);
    }
    return UWGraph::from_edges(std::move(nodes), edges);
}

UWGraph prune(const UWGraph& graph, Weight min_weight, bool drop_isolated) {
    if (min_weight < 1) {
        throw_error(Errc::ConfigInvalid, "min_weight must be >= 1");
    }
    std::vector<std::tuple<std::string, std::string, Weight>> kept;
    for (const auto& [u, v, w] : graph.edges()) {
        if (w >= min_weight) {
            kept.emplace_back(graph.address(u), graph.address(v), w);
        }
    }
    std::vector<std::string> nodes;
    if (drop_isolated) {
        for (const auto& [u, v, w] : kept) {
            nodes.push_back(u);
            nodes.push_back(v);
        }
    } else {
        nodes = graph.nodes();
    }
    if (nodes.empty()) {
        throw_error(Errc::EmptyGraph, "pruning removed every node");
    }
    return UWGraph::from_edges(std::move(nodes), kept);
}

}  // namespace emailnet

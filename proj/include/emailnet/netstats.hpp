#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "emailnet/clustering.hpp"
#include "emailnet/graph.hpp"

namespace emailnet {

// Topological summary of one community's induced subgraph. Edge weights are
// ignored throughout; these are simple-graph statistics.
struct NetStatsRow {
    std::int32_t community_index = -1;  // -1 marks the whole-graph baseline
    double clustering_coefficient = 0.0;
    double centralization = 0.0;  // Freeman degree centralization
    double avg_neighbors = 0.0;
    std::uint64_t nodes = 0;
    double network_density = 0.0;  // avg_neighbors / (nodes - 1)
};

std::vector<NetStatsRow> community_stats(const UWGraph& graph, const Partition& partition);
NetStatsRow whole_graph_stats(const UWGraph& graph);

void write_netstats_csv(const std::filesystem::path& path,
                        const std::vector<NetStatsRow>& rows);

}  // namespace emailnet

#include "emailnet/netstats.hpp"

#include <algorithm>
#include <numeric>

#include "emailnet/errors.hpp"
#include "emailnet/textio.hpp"

namespace emailnet {

namespace {

NetStatsRow stats_for(const UWGraph& graph, const std::vector<NodeId>& members,
                      std::int32_t index) {
    const std::size_t n = members.size();
    NetStatsRow row;
    row.community_index = index;
    row.nodes = n;
    if (n == 0) return row;

    // Local adjacency of the induced subgraph, weights ignored.
    std::vector<std::vector<std::size_t>> local(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& [v, w] : graph.neighbors(members[i])) {
            auto it = std::lower_bound(members.begin(), members.end(), v);
            if (it != members.end() && *it == v) {
                local[i].push_back(static_cast<std::size_t>(it - members.begin()));
            }
        }
        std::sort(local[i].begin(), local[i].end());
    }

    std::vector<std::size_t> degree(n);
    for (std::size_t i = 0; i < n; ++i) degree[i] = local[i].size();
    std::size_t degree_sum = std::accumulate(degree.begin(), degree.end(), std::size_t{0});
    row.avg_neighbors = static_cast<double>(degree_sum) / static_cast<double>(n);
    row.network_density = n >= 2 ? row.avg_neighbors / static_cast<double>(n - 1) : 0.0;

    double coefficient_sum = 0.0;
    std::size_t eligible = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (degree[i] < 2) continue;
        std::size_t triangles = 0;
        for (std::size_t a = 0; a < local[i].size(); ++a) {
            for (std::size_t b = a + 1; b < local[i].size(); ++b) {
                if (std::binary_search(local[local[i][a]].begin(), local[local[i][a]].end(),
                                       local[i][b])) {
                    ++triangles;
                }
            }
        }
        coefficient_sum += 2.0 * static_cast<double>(triangles) /
                           (static_cast<double>(degree[i]) * static_cast<double>(degree[i] - 1));
        ++eligible;
    }
    row.clustering_coefficient =
        eligible == 0 ? 0.0 : coefficient_sum / static_cast<double>(eligible);

    if (n >= 3) {
        std::size_t max_degree = *std::max_element(degree.begin(), degree.end());
        std::size_t spread = 0;
        for (std::size_t d : degree) spread += max_degree - d;
        row.centralization = static_cast<double>(spread) /
                             (static_cast<double>(n - 1) * static_cast<double>(n - 2));
    }
    return row;
}

}  // namespace

std::vector<NetStatsRow> community_stats(const UWGraph& graph, const Partition& partition) {
    require_consistent(graph, partition);
    std::vector<NetStatsRow> rows;
    rows.reserve(partition.k());
    auto clusters = partition.clusters();
    for (std::uint32_t j = 0; j < clusters.size(); ++j) {
        rows.push_back(stats_for(graph, clusters[j], static_cast<std::int32_t>(j)));
    }
    return rows;
}

NetStatsRow whole_graph_stats(const UWGraph& graph) {
    if (graph.node_count() == 0) {
        throw_error(Errc::EmptyGraph, "no nodes to summarize");
    }
    std::vector<NodeId> all(graph.node_count());
    std::iota(all.begin(), all.end(), 0);
    return stats_for(graph, all, -1);
}

void write_netstats_csv(const std::filesystem::path& path,
                        const std::vector<NetStatsRow>& rows) {
    std::string out = "Community,ClusCoefficient,Centralization,AvgNeighbors,Nodes,NetworkDensity\n";
    for (const NetStatsRow& row : rows) {
        out += std::to_string(row.community_index);
        out += ',' + format_double(row.clustering_coefficient);
        out += ',' + format_double(row.centralization);
        out += ',' + format_double(row.avg_neighbors);
        out += ',' + std::to_string(row.nodes);
        out += ',' + format_double(row.network_density);
        out += '\n';
    }
    write_file(path, out);
}

}  // namespace emailnet

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "emailnet/features.hpp"
#include "emailnet/graph.hpp"
#include "emailnet/similarity.hpp"

namespace emailnet {

struct ClusteringConfig {
    std::uint32_t k = 2;
    std::uint32_t max_iters = 100;
    std::uint64_t seed = 42;
    SimilarityParams params{};
};

// Objective right after the assignment step and right after the following
// medoid update, one entry per completed round.
struct IterationTrace {
    double after_assign = 0.0;
    double after_update = 0.0;
};

struct Partition {
    std::vector<std::uint32_t> assignment;  // node id -> cluster index in [0, k)
    std::vector<NodeId> medoids;            // cluster index -> medoid node id
    double objective = 0.0;                 // sum over nodes of CSM(node, its medoid)
    std::uint32_t iterations_run = 0;
    bool converged = false;
    std::vector<IterationTrace> trace;

    std::uint32_t k() const { return static_cast<std::uint32_t>(medoids.size()); }
    std::vector<std::vector<NodeId>> clusters() const;
};

// k-medoids local search under the blended similarity. Seeded-random first
// medoid, greedy farthest-first completion, argmax assignment, best-member
// medoid update; every tie breaks by lexicographic address order (which is
// node id order), then by lowest cluster index. Deterministic for a fixed
// (graph, features, config).
Partition cluster(const UWGraph& graph, const FeatureMatrix& features,
                  const ClusteringConfig& config);

// Throws InconsistentPartition when the partition does not fit the graph or
// violates its own invariants.
void require_consistent(const UWGraph& graph, const Partition& partition);

// Recomputes the objective from scratch.
double objective(const UWGraph& graph, const FeatureMatrix& features,
                 const SimilarityParams& params, const Partition& partition);

void write_partition_csv(const std::filesystem::path& path, const UWGraph& graph,
                         const Partition& partition);
void write_partition_json(const std::filesystem::path& path, const UWGraph& graph,
                          const FeatureMatrix& features, const SimilarityParams& params,
                          const Partition& partition);
std::string partition_json_string(const UWGraph& graph, const FeatureMatrix& features,
                                  const SimilarityParams& params, const Partition& partition);
Partition read_partition_json(const std::filesystem::path& path, const UWGraph& graph);

}  // namespace emailnet

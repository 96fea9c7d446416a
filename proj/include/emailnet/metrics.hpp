#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "emailnet/clustering.hpp"
#include "emailnet/features.hpp"
#include "emailnet/graph.hpp"
#include "emailnet/netstats.hpp"

namespace emailnet {

// Fraction of edges whose endpoints share a cluster, unweighted. An edgeless
// graph is vacuously dense (1.0).
double density(const UWGraph& graph, const Partition& partition);

// Size-weighted mean per-feature bin entropy within clusters, in bits,
// averaged over features. Zero means every cluster is constant per binned
// feature.
double entropy(const FeatureMatrix& features, const Partition& partition,
               unsigned bins = 10);

// Node -> opaque label; coverage may be partial.
using ReferenceLabeling = std::map<std::string, std::string, std::less<>>;

ReferenceLabeling read_reference_csv(const std::filesystem::path& path);

// Pairwise F1 over node pairs restricted to reference-covered nodes:
// co-clustered = predicted positive, co-labeled = actual positive.
// Throws InsufficientReference when fewer than two partition nodes are
// covered.
double f_measure(const UWGraph& graph, const Partition& partition,
                 const ReferenceLabeling& reference);

struct QualityReport {
    double density = 0.0;
    double entropy = 0.0;
    std::optional<double> f_measure;
    std::uint32_t k = 0;
    std::vector<NetStatsRow> per_community;
};

QualityReport evaluate(const UWGraph& graph, const FeatureMatrix& features,
                       const Partition& partition, unsigned bins,
                       const ReferenceLabeling* reference = nullptr);

void write_quality_json(const std::filesystem::path& path, const QualityReport& report);

struct SweepRow {
    std::uint32_t k = 0;
    double density = 0.0;
    double entropy = 0.0;
    double objective = 0.0;
    std::uint32_t iterations = 0;
    bool converged = false;
};

// One clustering run per k in [k_lo, k_hi] with the same seed and alpha.
std::vector<SweepRow> sweep_k(const UWGraph& graph, const FeatureMatrix& features,
                              std::uint32_t k_lo, std::uint32_t k_hi,
                              const ClusteringConfig& base, unsigned bins = 10);

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows);

}  // namespace emailnet

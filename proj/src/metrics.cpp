#include "emailnet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_map>

#include "json.hpp"

#include "emailnet/errors.hpp"
#include "emailnet/textio.hpp"

namespace emailnet {

double density(const UWGraph& graph, const Partition& partition) {
    require_consistent(graph, partition);
    if (graph.edge_count() == 0) {
        return 1.0;  // vacuously dense; callers may want to flag this
    }
    std::size_t intra = 0;
    for (const auto& [u, v, w] : graph.edges()) {
        if (partition.assignment[u] == partition.assignment[v]) ++intra;
    }
    return static_cast<double>(intra) / static_cast<double>(graph.edge_count());
}

double entropy(const FeatureMatrix& features, const Partition& partition, unsigned bins) {
    if (bins < 2) {
        throw_error(Errc::ConfigInvalid, "entropy needs at least 2 bins");
    }
    if (features.size() != partition.assignment.size()) {
        throw_error(Errc::InconsistentPartition, "partition does not cover the feature rows");
    }
    const std::size_t total_nodes = features.size();
    const std::size_t m = features.dim();
    auto clusters = partition.clusters();

    double result = 0.0;
    for (std::size_t f = 0; f < m; ++f) {
        for (const auto& members : clusters) {
            if (members.empty()) continue;
            std::vector<std::size_t> counts(bins, 0);
            for (NodeId u : members) {
                double value = features.row(u)[f];
                auto bin = static_cast<std::size_t>(value * bins);
                ++counts[std::min(bin, static_cast<std::size_t>(bins - 1))];
            }
            double h = 0.0;
            for (std::size_t count : counts) {
                if (count == 0) continue;
                double p = static_cast<double>(count) / static_cast<double>(members.size());
                h -= p * std::log2(p);
            }
            result += static_cast<double>(members.size()) /
                      static_cast<double>(total_nodes) * h;
        }
    }
    return result / static_cast<double>(m);
}

ReferenceLabeling read_reference_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw_error(Errc::UnreadablePath, "cannot open " + path.string());
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw_error(Errc::InvalidFormat, "empty reference CSV: " + path.string());
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> header = split_csv_line(line);
    if (header.size() != 2 || to_lower(trim(header[0])) != "address" ||
        to_lower(trim(header[1])) != "label") {
        throw_error(Errc::InvalidFormat, "reference CSV needs an address,label header");
    }
    ReferenceLabeling reference;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != 2) {
            throw_error(Errc::InvalidFormat, "ragged reference CSV row: " + line);
        }
        reference[trim(fields[0])] = trim(fields[1]);
    }
    if (reference.empty()) {
        throw_error(Errc::InvalidFormat, "reference CSV has no rows");
    }
    return reference;
}

namespace {

std::uint64_t pairs_of(std::uint64_t n) { return n * (n - 1) / 2; }

}  // namespace

double f_measure(const UWGraph& graph, const Partition& partition,
                 const ReferenceLabeling& reference) {
    require_consistent(graph, partition);

    // Tally covered nodes per cluster, per label, and per (cluster, label) cell.
    std::unordered_map<std::uint32_t, std::uint64_t> per_cluster;
    std::unordered_map<std::string, std::uint64_t> per_label;
    std::map<std::pair<std::uint32_t, std::string>, std::uint64_t> per_cell;
    std::uint64_t covered = 0;
    for (NodeId u = 0; u < graph.node_count(); ++u) {
        auto it = reference.find(graph.address(u));
        if (it == reference.end()) continue;
        ++covered;
        std::uint32_t cluster = partition.assignment[u];
        ++per_cluster[cluster];
        ++per_label[it->second];
        ++per_cell[{cluster, it->second}];
    }
    if (covered < 2) {
        throw_error(Errc::InsufficientReference,
                    "reference covers fewer than 2 partition nodes");
    }

    std::uint64_t predicted = 0, actual = 0, agreeing = 0;
    for (const auto& [cluster, count] : per_cluster) predicted += pairs_of(count);
    for (const auto& [label, count] : per_label) actual += pairs_of(count);
    for (const auto& [cell, count] : per_cell) agreeing += pairs_of(count);

    double precision = predicted == 0 ? 0.0
                                      : static_cast<double>(agreeing) /
                                            static_cast<double>(predicted);
    double recall = actual == 0 ? 0.0
                                : static_cast<double>(agreeing) /
                                      static_cast<double>(actual);
    if (precision + recall == 0.0) return 0.0;
    return 2.0 * precision * recall / (precision + recall);
}

QualityReport evaluate(const UWGraph& graph, const FeatureMatrix& features,
                       const Partition& partition, unsigned bins,
                       const ReferenceLabeling* reference) {
    QualityReport report;
    report.k = partition.k();
    report.density = density(graph, partition);
    report.entropy = entropy(features, partition, bins);
    if (reference != nullptr) {
        report.f_measure = f_measure(graph, partition, *reference);
    }
    report.per_community = community_stats(graph, partition);
    return report;
}

namespace {

nlohmann::ordered_json row_json(const NetStatsRow& row) {
    return {{"Community", row.community_index},
            {"ClusCoefficient", row.clustering_coefficient},
            {"Centralization", row.centralization},
            {"AvgNeighbors", row.avg_neighbors},
            {"Nodes", row.nodes},
            {"NetworkDensity", row.network_density}};
}

}  // namespace

void write_quality_json(const std::filesystem::path& path, const QualityReport& report) {
    nlohmann::ordered_json j;
    j["k"] = report.k;
    j["density"] = report.density;
    j["entropy"] = report.entropy;
    if (report.f_measure) {
        j["f_measure"] = *report.f_measure;
    }
    j["per_community"] = nlohmann::ordered_json::array();
    for (const NetStatsRow& row : report.per_community) {
        j["per_community"].push_back(row_json(row));
    }
    write_file(path, j.dump(2) + "\n");
}

std::vector<SweepRow> sweep_k(const UWGraph& graph, const FeatureMatrix& features,
                              std::uint32_t k_lo, std::uint32_t k_hi,
                              const ClusteringConfig& base, unsigned bins) {
    if (k_lo < 1 || k_lo > k_hi) {
        throw_error(Errc::ConfigInvalid, "bad sweep range");
    }
    if (k_hi > graph.node_count()) {
        throw_error(Errc::KTooLarge, "sweep upper bound exceeds node count");
    }
    std::vector<SweepRow> rows;
    rows.reserve(k_hi - k_lo + 1);
    for (std::uint32_t k = k_lo; k <= k_hi; ++k) {
        ClusteringConfig config = base;
        config.k = k;
        Partition partition = cluster(graph, features, config);
        SweepRow row;
        row.k = k;
        row.density = density(graph, partition);
        row.entropy = entropy(features, partition, bins);
        row.objective = partition.objective;
        row.iterations = partition.iterations_run;
        row.converged = partition.converged;
        rows.push_back(row);
    }
    return rows;
}

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows) {
    std::string out = "k,density,entropy,objective,iterations,converged\n";
    for (const SweepRow& row : rows) {
        out += std::to_string(row.k);
        out += ',' + format_double(row.density);
        out += ',' + format_double(row.entropy);
        out += ',' + format_double(row.objective);
        out += ',' + std::to_string(row.iterations);
        out += ',';
        out += row.converged ? "true" : "false";
        out += '\n';
    }
    write_file(path, out);
}

}  // namespace emailnet

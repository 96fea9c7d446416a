#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "emailnet/graph.hpp"
#include "emailnet/record.hpp"

namespace emailnet {

// Communication behavior summary for one node, computable from a single
// user's mailbox metadata alone.
struct CpiVector {
    std::int64_t sent_count = 0;        // messages sent by the node
    std::int64_t recv_count = 0;        // messages with the node in to/cc/bcc
    std::int64_t cc_count = 0;          // messages with the node in cc
    double avg_recipients_sent = 0.0;   // mean distinct recipients per sent message
    std::int64_t active_days = 0;       // distinct UTC dates of any involvement
    double reciprocity = 0.0;           // traffic balance with the mailbox owner

    std::array<double, 6> as_array() const;
};

inline constexpr std::array<const char*, 6> kCpiFeatureNames = {
    "sent_count",  "recv_count",  "cc_count",
    "avg_recipients_sent", "active_days", "reciprocity",
};

// Computes one CpiVector per requested node. Record addresses are folded
// through the owner aliases first; the owner node is reciprocal with itself
// by convention. Throws UnknownNode for nodes absent from the records.
std::map<std::string, CpiVector> extract_cpi(std::span<const EmailRecord> records,
                                             const OwnerSpec& owner,
                                             std::span<const std::string> nodes);

// Row-major matrix of per-node feature values in [0,1]. Row order is the
// lexicographic node order, matching UWGraph.
class FeatureMatrix {
public:
    FeatureMatrix() = default;

    // nodes must be sorted and unique; every entry must lie in [0,1].
    static FeatureMatrix from_rows(std::vector<std::string> nodes,
                                   const std::vector<std::vector<double>>& rows,
                                   std::vector<std::string> feature_names);

    std::size_t size() const { return nodes_.size(); }
    std::size_t dim() const { return feature_names_.size(); }
    const std::vector<std::string>& nodes() const { return nodes_; }
    const std::vector<std::string>& feature_names() const { return feature_names_; }
    std::span<const double> row(std::size_t i) const;

    std::optional<std::size_t> find(std::string_view addr) const;
    std::size_t require(std::string_view addr) const;  // throws UnknownNode

private:
    std::vector<std::string> nodes_;
    std::vector<std::string> feature_names_;
    std::vector<double> data_;
};

// Min-max normalization per feature; constant features map to all zeros.
FeatureMatrix normalize(const std::map<std::string, CpiVector>& raw);

// Throws ConfigInvalid unless the matrix rows line up with the graph nodes.
void require_aligned(const UWGraph& graph, const FeatureMatrix& features);

void write_cpi_csv(const std::filesystem::path& path,
                   const std::map<std::string, CpiVector>& raw);
void write_features_csv(const std::filesystem::path& path, const FeatureMatrix& features);
FeatureMatrix read_features_csv(const std::filesystem::path& path);

}  // namespace emailnet

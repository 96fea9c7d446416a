#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "emailnet/features.hpp"
#include "emailnet/graph.hpp"

namespace emailnet {

struct SimilarityParams {
    double alpha = 0.5;  // structural weight; 1 - alpha weighs the semantic side
};

void validate(const SimilarityParams& params);

// Generalized (min/max) weighted Jaccard over closed-neighborhood weight
// profiles. A node carries its own max incident weight (1 if isolated) in its
// profile, so adjacent nodes with disjoint neighbor sets still score > 0.
double structural_sim(const UWGraph& graph, NodeId u, NodeId v);
double structural_sim(const UWGraph& graph, std::string_view u, std::string_view v);

// Cosine similarity of two nonnegative feature rows. Two all-zero rows are
// identical (1.0); exactly one all-zero row is maximally dissimilar (0.0).
double semantic_sim(const FeatureMatrix& features, std::size_t u, std::size_t v);
double semantic_sim(const FeatureMatrix& features, std::string_view u, std::string_view v);

// Convex blend: alpha * structural + (1 - alpha) * semantic.
double csm(const UWGraph& graph, const FeatureMatrix& features,
           const SimilarityParams& params, NodeId u, NodeId v);
double csm(const UWGraph& graph, const FeatureMatrix& features,
           const SimilarityParams& params, std::string_view u, std::string_view v);

// Dense symmetric all-pairs CSM, precomputed once per clustering run.
class SimilarityMatrix {
public:
    static SimilarityMatrix compute(const UWGraph& graph, const FeatureMatrix& features,
                                    const SimilarityParams& params);

    std::size_t size() const { return n_; }
    double at(NodeId u, NodeId v) const { return data_[static_cast<std::size_t>(u) * n_ + v]; }

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

}  // namespace emailnet

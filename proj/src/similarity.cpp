#include "emailnet/similarity.hpp"

#include <algorithm>
#include <cmath>

#include "emailnet/errors.hpp"

namespace emailnet {

void validate(const SimilarityParams& params) {
    if (!(params.alpha >= 0.0 && params.alpha <= 1.0)) {
        throw_error(Errc::ConfigInvalid, "alpha must lie in [0,1]");
    }
}

namespace {

// Closed-neighborhood weight profile: the node's neighbors with their edge
// weights plus the node itself carrying its max incident weight (1 if
// isolated), sorted by node id.
std::vector<std::pair<NodeId, double>> profile(const UWGraph& graph, NodeId u) {
    auto neighbors = graph.neighbors(u);
    std::vector<std::pair<NodeId, double>> p;
    p.reserve(neighbors.size() + 1);
    double self = neighbors.empty()
                      ? 1.0
                      : static_cast<double>(graph.max_incident_weight(u));
    bool self_inserted = false;
    for (const auto& [v, w] : neighbors) {
        if (!self_inserted && u < v) {
            p.emplace_back(u, self);
            self_inserted = true;
        }
        p.emplace_back(v, static_cast<double>(w));
    }
    if (!self_inserted) p.emplace_back(u, self);
    return p;
}

}  // namespace

double structural_sim(const UWGraph& graph, NodeId u, NodeId v) {
    if (u >= graph.node_count() || v >= graph.node_count()) {
        throw_error(Errc::UnknownNode, "node id out of range");
    }
    if (u == v) return 1.0;

    auto pu = profile(graph, u);
    auto pv = profile(graph, v);
    double sum_min = 0.0;
    double sum_max = 0.0;
    std::size_t i = 0, j = 0;
    while (i < pu.size() || j < pv.size()) {
        if (j == pv.size() || (i < pu.size() && pu[i].first < pv[j].first)) {
            sum_max += pu[i].second;
            ++i;
        } else if (i == pu.size() || pv[j].first < pu[i].first) {
            sum_max += pv[j].second;
            ++j;
        } else {
            sum_min += std::min(pu[i].second, pv[j].second);
            sum_max += std::max(pu[i].second, pv[j].second);
            ++i;
            ++j;
        }
    }
    return sum_min == 0.0 ? 0.0 : sum_min / sum_max;
}

double structural_sim(const UWGraph& graph, std::string_view u, std::string_view v) {
    return structural_sim(graph, graph.require(u), graph.require(v));
}

double semantic_sim(const FeatureMatrix& features, std::size_t u, std::size_t v) {
    if (u >= features.size() || v >= features.size()) {
        throw_error(Errc::UnknownNode, "feature row out of range");
    }
    auto ru = features.row(u);
    auto rv = features.row(v);
    double dot = 0.0, nu = 0.0, nv = 0.0;
    for (std::size_t f = 0; f < ru.size(); ++f) {
        dot += ru[f] * rv[f];
        nu += ru[f] * ru[f];
        nv += rv[f] * rv[f];
    }
    if (nu == 0.0 && nv == 0.0) return 1.0;  // two all-zero rows are identical
    if (nu == 0.0 || nv == 0.0) return 0.0;
    return std::clamp(dot / (std::sqrt(nu) * std::sqrt(nv)), 0.0, 1.0);
}

double semantic_sim(const FeatureMatrix& features, std::string_view u, std::string_view v) {
    return semantic_sim(features, features.require(u), features.require(v));
}

double csm(const UWGraph& graph, const FeatureMatrix& features,
           const SimilarityParams& params, NodeId u, NodeId v) {
    validate(params);
    require_aligned(graph, features);
    if (u == v) return 1.0;
    return params.alpha * structural_sim(graph, u, v) +
           (1.0 - params.alpha) * semantic_sim(features, u, v);
}

double csm(const UWGraph& graph, const FeatureMatrix& features,
           const SimilarityParams& params, std::string_view u, std::string_view v) {
    return csm(graph, features, params, graph.require(u), graph.require(v));
}

SimilarityMatrix SimilarityMatrix::compute(const UWGraph& graph,
                                           const FeatureMatrix& features,
                                           const SimilarityParams& params) {
    validate(params);
    require_aligned(graph, features);
    SimilarityMatrix matrix;
    matrix.n_ = graph.node_count();
    matrix.data_.assign(matrix.n_ * matrix.n_, 0.0);
    for (NodeId u = 0; u < matrix.n_; ++u) {
        matrix.data_[u * matrix.n_ + u] = 1.0;
        for (NodeId v = u + 1; v < matrix.n_; ++v) {
            double value = params.alpha * structural_sim(graph, u, v) +
                           (1.0 - params.alpha) * semantic_sim(features, u, v);
            matrix.data_[u * matrix.n_ + v] = value;
            matrix.data_[v * matrix.n_ + u] = value;
        }
    }
    return matrix;
}

}  // namespace emailnet

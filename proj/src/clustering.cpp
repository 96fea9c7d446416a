#include "emailnet/clustering.hpp"

#include <algorithm>
#include <cassert>
#include <fstream>
#include <random>

#include "json.hpp"

#include "emailnet/errors.hpp"
#include "emailnet/textio.hpp"

namespace emailnet {

std::vector<std::vector<NodeId>> Partition::clusters() const {
    std::vector<std::vector<NodeId>> members(medoids.size());
    for (NodeId u = 0; u < assignment.size(); ++u) {
        members[assignment[u]].push_back(u);
    }
    return members;
}

namespace {

// Objective summed per cluster in ascending node order, then across clusters
// in index order. Keeping one summation order everywhere makes the
// monotonicity of the update step hold exactly in floating point.
double objective_sum(const SimilarityMatrix& sim,
                     const std::vector<std::uint32_t>& assignment,
                     const std::vector<NodeId>& medoids) {
    std::vector<double> per_cluster(medoids.size(), 0.0);
    for (NodeId u = 0; u < assignment.size(); ++u) {
        per_cluster[assignment[u]] += sim.at(u, medoids[assignment[u]]);
    }
    double total = 0.0;
    for (double value : per_cluster) total += value;
    return total;
}

std::vector<std::uint32_t> assign_nodes(const SimilarityMatrix& sim,
                                        const std::vector<NodeId>& medoids) {
    std::vector<std::uint32_t> assignment(sim.size(), 0);
    for (NodeId u = 0; u < sim.size(); ++u) {
        std::uint32_t best = 0;
        double best_sim = sim.at(u, medoids[0]);
        for (std::uint32_t j = 1; j < medoids.size(); ++j) {
            double s = sim.at(u, medoids[j]);
            if (s > best_sim) {
                best = j;
                best_sim = s;
            }
        }
        assignment[u] = best;
    }
    return assignment;
}

// Restores the two structural invariants ties can break: every cluster owns
// its medoid and no cluster is empty. An emptied cluster takes the
// worst-served non-medoid node as its new medoid. No-ops on non-degenerate
// inputs.
void normalize_assignment(const SimilarityMatrix& sim, std::vector<NodeId>& medoids,
                          std::vector<std::uint32_t>& assignment) {
    const std::uint32_t k = static_cast<std::uint32_t>(medoids.size());
    for (std::uint32_t round = 0; round <= 2 * k + 2; ++round) {
        bool changed = false;

        for (std::uint32_t j = 0; j < k; ++j) {
            if (assignment[medoids[j]] != j) {
                assignment[medoids[j]] = j;
                changed = true;
            }
        }

        std::vector<std::uint64_t> sizes(k, 0);
        for (std::uint32_t cluster : assignment) ++sizes[cluster];
        std::vector<bool> is_medoid(sim.size(), false);
        for (NodeId m : medoids) is_medoid[m] = true;

        for (std::uint32_t j = 0; j < k; ++j) {
            if (sizes[j] > 0) continue;
            NodeId worst = static_cast<NodeId>(sim.size());
            double worst_sim = std::numeric_limits<double>::infinity();
            for (NodeId u = 0; u < sim.size(); ++u) {
                if (is_medoid[u]) continue;
                double s = sim.at(u, medoids[assignment[u]]);
                if (s < worst_sim) {
                    worst = u;
                    worst_sim = s;
                }
            }
            if (worst == sim.size()) break;  // k == n: the pin above resolves it
            --sizes[assignment[worst]];
            is_medoid[medoids[j]] = false;
            medoids[j] = worst;
            is_medoid[worst] = true;
            assignment[worst] = j;
            ++sizes[j];
            changed = true;
        }

        if (!changed) return;
    }
    assert(false && "assignment normalization did not settle");
}

void update_medoids(const SimilarityMatrix& sim,
                    const std::vector<std::uint32_t>& assignment,
                    std::vector<NodeId>& medoids) {
    std::vector<std::vector<NodeId>> members(medoids.size());
    for (NodeId u = 0; u < assignment.size(); ++u) {
        members[assignment[u]].push_back(u);
    }
    for (std::uint32_t j = 0; j < medoids.size(); ++j) {
        NodeId best = medoids[j];
        double best_total = -1.0;
        for (NodeId candidate : members[j]) {
            double total = 0.0;
            for (NodeId m : members[j]) total += sim.at(candidate, m);
            if (total > best_total) {
                best = candidate;
                best_total = total;
            }
        }
        medoids[j] = best;  // first best wins: members ascend in id = address order
    }
}

std::vector<NodeId> init_medoids(const SimilarityMatrix& sim, std::uint32_t k,
                                 std::uint64_t seed) {
    const std::size_t n = sim.size();
    std::mt19937_64 rng(seed);
    // Engine output modulo n rather than a distribution: identical picks on
    // every platform.
    std::vector<NodeId> medoids{static_cast<NodeId>(rng() % n)};
    std::vector<bool> chosen(n, false);
    chosen[medoids[0]] = true;

    while (medoids.size() < k) {
        NodeId best = static_cast<NodeId>(n);
        double best_score = std::numeric_limits<double>::infinity();
        for (NodeId c = 0; c < n; ++c) {
            if (chosen[c]) continue;
            double max_sim = 0.0;
            for (NodeId m : medoids) max_sim = std::max(max_sim, sim.at(c, m));
            if (max_sim < best_score) {
                best = c;
                best_score = max_sim;
            }
        }
        chosen[best] = true;
        medoids.push_back(best);
    }
    return medoids;
}

}  // namespace

Partition cluster(const UWGraph& graph, const FeatureMatrix& features,
                  const ClusteringConfig& config) {
    const std::size_t n = graph.node_count();
    if (n == 0) {
        throw_error(Errc::EmptyGraph, "cannot cluster an empty graph");
    }
    if (config.k < 1 || config.max_iters < 1) {
        throw_error(Errc::ConfigInvalid, "k and max_iters must be positive");
    }
    if (config.k > n) {
        throw_error(Errc::KTooLarge, "k=" + std::to_string(config.k) +
                                         " exceeds node count " + std::to_string(n));
    }
    validate(config.params);
    require_aligned(graph, features);

    SimilarityMatrix sim = SimilarityMatrix::compute(graph, features, config.params);

    Partition partition;
    partition.medoids = init_medoids(sim, config.k, config.seed);

    std::vector<std::uint32_t> previous;
    for (std::uint32_t iter = 1; iter <= config.max_iters; ++iter) {
        partition.assignment = assign_nodes(sim, partition.medoids);
        normalize_assignment(sim, partition.medoids, partition.assignment);
        partition.iterations_run = iter;

        if (!previous.empty() && partition.assignment == previous) {
            partition.converged = true;
            break;
        }
        if (iter == config.max_iters) break;

        IterationTrace step;
        step.after_assign = objective_sum(sim, partition.assignment, partition.medoids);
        update_medoids(sim, partition.assignment, partition.medoids);
        step.after_update = objective_sum(sim, partition.assignment, partition.medoids);
        partition.trace.push_back(step);
        previous = partition.assignment;
    }

    partition.objective = objective_sum(sim, partition.assignment, partition.medoids);
    return partition;
}

void require_consistent(const UWGraph& graph, const Partition& partition) {
    const std::size_t n = graph.node_count();
    if (partition.assignment.size() != n || partition.medoids.empty()) {
        throw_error(Errc::InconsistentPartition, "partition does not cover the graph");
    }
    const std::uint32_t k = partition.k();
    std::vector<bool> seen_medoid(n, false);
    for (NodeId m : partition.medoids) {
        if (m >= n || seen_medoid[m]) {
            throw_error(Errc::InconsistentPartition, "medoids must be distinct graph nodes");
        }
        seen_medoid[m] = true;
    }
    std::vector<std::uint64_t> sizes(k, 0);
    for (std::uint32_t cluster : partition.assignment) {
        if (cluster >= k) {
            throw_error(Errc::InconsistentPartition, "cluster index out of range");
        }
        ++sizes[cluster];
    }
    for (std::uint32_t j = 0; j < k; ++j) {
        if (sizes[j] == 0) {
            throw_error(Errc::InconsistentPartition,
                        "cluster " + std::to_string(j) + " is empty");
        }
        if (partition.assignment[partition.medoids[j]] != j) {
            throw_error(Errc::InconsistentPartition,
                        "medoid of cluster " + std::to_string(j) + " lives elsewhere");
        }
    }
}

double objective(const UWGraph& graph, const FeatureMatrix& features,
                 const SimilarityParams& params, const Partition& partition) {
    require_consistent(graph, partition);
    validate(params);
    require_aligned(graph, features);
    SimilarityMatrix sim = SimilarityMatrix::compute(graph, features, params);
    return objective_sum(sim, partition.assignment, partition.medoids);
}

void write_partition_csv(const std::filesystem::path& path, const UWGraph& graph,
                         const Partition& partition) {
    require_consistent(graph, partition);
    std::string out = "address,cluster\n";
    for (NodeId u = 0; u < graph.node_count(); ++u) {
        out += csv_escape(graph.address(u));
        out += ',' + std::to_string(partition.assignment[u]) + '\n';
    }
    write_file(path, out);
}

std::string partition_json_string(const UWGraph& graph, const FeatureMatrix& features,
                                  const SimilarityParams& params,
                                  const Partition& partition) {
    require_consistent(graph, partition);
    SimilarityMatrix sim = SimilarityMatrix::compute(graph, features, params);

    nlohmann::ordered_json j;
    j["k"] = partition.k();
    j["objective"] = partition.objective;
    j["iterations"] = partition.iterations_run;
    j["converged"] = partition.converged;

    auto clusters = nlohmann::ordered_json::array();
    std::vector<std::uint64_t> sizes(partition.k(), 0);
    for (std::uint32_t cluster : partition.assignment) ++sizes[cluster];
    for (std::uint32_t idx = 0; idx < partition.k(); ++idx) {
        clusters.push_back({{"index", idx},
                            {"medoid", graph.address(partition.medoids[idx])},
                            {"size", sizes[idx]}});
    }
    j["clusters"] = std::move(clusters);

    auto nodes = nlohmann::ordered_json::array();
    for (NodeId u = 0; u < graph.node_count(); ++u) {
        std::uint32_t cluster = partition.assignment[u];
        nodes.push_back({{"address", graph.address(u)},
                         {"cluster", cluster},
                         {"csm_to_medoid", sim.at(u, partition.medoids[cluster])}});
    }
    j["nodes"] = std::move(nodes);
    return j.dump(2) + "\n";
}

void write_partition_json(const std::filesystem::path& path, const UWGraph& graph,
                          const FeatureMatrix& features, const SimilarityParams& params,
                          const Partition& partition) {
    write_file(path, partition_json_string(graph, features, params, partition));
}

Partition read_partition_json(const std::filesystem::path& path, const UWGraph& graph) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw_error(Errc::InvalidFormat, "bad partition JSON: " + std::string(e.what()));
    }
    Partition partition;
    try {
        partition.objective = j.at("objective").get<double>();
        partition.iterations_run = j.at("iterations").get<std::uint32_t>();
        partition.converged = j.at("converged").get<bool>();

        std::uint32_t k = j.at("k").get<std::uint32_t>();
        partition.medoids.resize(k);
        std::vector<bool> seen_cluster(k, false);
        for (const auto& cluster : j.at("clusters")) {
            std::uint32_t idx = cluster.at("index").get<std::uint32_t>();
            if (idx >= k || seen_cluster[idx]) {
                throw_error(Errc::InvalidFormat, "bad cluster index in partition JSON");
            }
            seen_cluster[idx] = true;
            partition.medoids[idx] = graph.require(cluster.at("medoid").get<std::string>());
        }
        if (std::find(seen_cluster.begin(), seen_cluster.end(), false) != seen_cluster.end()) {
            throw_error(Errc::InvalidFormat, "partition JSON misses a cluster entry");
        }

        partition.assignment.assign(graph.node_count(), 0);
        std::vector<bool> seen(graph.node_count(), false);
        for (const auto& node : j.at("nodes")) {
            NodeId id = graph.require(node.at("address").get<std::string>());
            partition.assignment[id] = node.at("cluster").get<std::uint32_t>();
            seen[id] = true;
        }
        if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
            throw_error(Errc::InconsistentPartition, "partition does not cover the graph");
        }
    } catch (const nlohmann::json::exception& e) {
        throw_error(Errc::InvalidFormat, "bad partition JSON: " + std::string(e.what()));
    }
    require_consistent(graph, partition);
    return partition;
}

}  // namespace emailnet

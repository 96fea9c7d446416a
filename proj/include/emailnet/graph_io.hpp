#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "emailnet/graph.hpp"

namespace emailnet {

// GraphML dialect: node id = address, integer edge attribute "weight".
// The reader accepts exactly what the writer emits, which is also the entry
// point for clustering externally supplied graphs.
void write_graphml(std::ostream& out, const UWGraph& graph);
void write_graphml(const std::filesystem::path& path, const UWGraph& graph);
std::string graphml_string(const UWGraph& graph);

UWGraph read_graphml(std::istream& in);
UWGraph read_graphml(const std::filesystem::path& path);

// DOT export with the weight as edge label; rendering is external.
void write_dot(std::ostream& out, const UWGraph& graph);
void write_dot(const std::filesystem::path& path, const UWGraph& graph);

void write_node_list(const std::filesystem::path& path, const UWGraph& graph);

}  // namespace emailnet

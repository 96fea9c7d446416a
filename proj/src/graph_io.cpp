#include "emailnet/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "emailnet/errors.hpp"
#include "emailnet/textio.hpp"

namespace emailnet {

namespace {

std::string xml_escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string xml_unescape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '&') {
            out += text[i];
            continue;
        }
        std::size_t end = text.find(';', i);
        std::string_view entity = end == std::string_view::npos
                                      ? std::string_view{}
                                      : text.substr(i + 1, end - i - 1);
        if (entity == "amp") out += '&';
        else if (entity == "lt") out += '<';
        else if (entity == "gt") out += '>';
        else if (entity == "quot") out += '"';
        else if (entity == "apos") out += '\'';
        else { out += text[i]; continue; }
        i = end;
    }
    return out;
}

struct XmlTag {
    std::string_view attrs;   // raw attribute region of the opening tag
    std::string_view body;    // inner text, empty for self-closing tags
    std::size_t next = 0;     // scan position after the element
};

// Finds the next <name ...> element at or after pos. Good enough for the
// dialect this module writes; not a general XML parser.
std::optional<XmlTag> next_tag(std::string_view xml, std::string_view name, std::size_t pos) {
    std::string open = "<" + std::string(name);
    while (true) {
        std::size_t start = xml.find(open, pos);
        if (start == std::string_view::npos) return std::nullopt;
        char following = start + open.size() < xml.size() ? xml[start + open.size()] : '\0';
        if (following != ' ' && following != '>' && following != '/' &&
            following != '\t' && following != '\n') {
            pos = start + open.size();
            continue;
        }
        std::size_t close = xml.find('>', start);
        if (close == std::string_view::npos) return std::nullopt;
        XmlTag tag;
        bool self_closing = xml[close - 1] == '/';
        tag.attrs = xml.substr(start + open.size(),
                               close - start - open.size() - (self_closing ? 1 : 0));
        if (self_closing) {
            tag.next = close + 1;
        } else {
            std::string terminator = "</" + std::string(name) + ">";
            std::size_t end = xml.find(terminator, close);
            if (end == std::string_view::npos) {
                throw_error(Errc::InvalidFormat, "unterminated <" + std::string(name) + ">");
            }
            tag.body = xml.substr(close + 1, end - close - 1);
            tag.next = end + terminator.size();
        }
        return tag;
    }
}

std::optional<std::string> attribute(std::string_view attrs, std::string_view name) {
    std::size_t pos = 0;
    while (pos < attrs.size()) {
        std::size_t eq = attrs.find('=', pos);
        if (eq == std::string_view::npos) return std::nullopt;
        std::string key = trim(attrs.substr(pos, eq - pos));
        std::size_t quote = attrs.find_first_of("\"'", eq);
        if (quote == std::string_view::npos) return std::nullopt;
        std::size_t end = attrs.find(attrs[quote], quote + 1);
        if (end == std::string_view::npos) return std::nullopt;
        if (key == name) {
            return xml_unescape(attrs.substr(quote + 1, end - quote - 1));
        }
        pos = end + 1;
    }
    return std::nullopt;
}

}  // namespace

void write_graphml(std::ostream& out, const UWGraph& graph) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
    out << "  <key id=\"w\" for=\"edge\" attr.name=\"weight\" attr.type=\"int\"/>\n";
    out << "  <graph id=\"G\" edgedefault=\"undirected\">\n";
    for (const std::string& node : graph.nodes()) {
        out << "    <node id=\"" << xml_escape(node) << "\"/>\n";
    }
    for (const auto& [u, v, w] : graph.edges()) {
        out << "    <edge source=\"" << xml_escape(graph.address(u)) << "\" target=\""
            << xml_escape(graph.address(v)) << "\">\n";
        out << "      <data key=\"w\">" << w << "</data>\n";
        out << "    </edge>\n";
    }
    out << "  </graph>\n";
    out << "</graphml>\n";
}

void write_graphml(const std::filesystem::path& path, const UWGraph& graph) {
    std::ostringstream buffer;
    write_graphml(buffer, graph);
    write_file(path, buffer.str());
}

std::string graphml_string(const UWGraph& graph) {
    std::ostringstream buffer;
    write_graphml(buffer, graph);
    return buffer.str();
}

UWGraph read_graphml(std::istream& in) {
    std::ostringstream buffer;
    buffer << in.rdbuf();
    std::string xml = buffer.str();

    // Locate the id of the edge attribute named "weight".
    std::string weight_key = "w";
    std::size_t pos = 0;
    while (auto tag = next_tag(xml, "key", pos)) {
        auto attr_name = attribute(tag->attrs, "attr.name");
        auto target = attribute(tag->attrs, "for");
        auto id = attribute(tag->attrs, "id");
        if (attr_name == "weight" && target == "edge" && id) {
            weight_key = *id;
        }
        pos = tag->next;
    }

    std::vector<std::string> nodes;
    pos = 0;
    while (auto tag = next_tag(xml, "node", pos)) {
        auto id = attribute(tag->attrs, "id");
        if (!id || id->empty()) {
            throw_error(Errc::InvalidFormat, "graphml node without id");
        }
        nodes.push_back(*id);
        pos = tag->next;
    }

    std::vector<std::tuple<std::string, std::string, Weight>> edges;
    pos = 0;
    while (auto tag = next_tag(xml, "edge", pos)) {
        auto source = attribute(tag->attrs, "source");
        auto target = attribute(tag->attrs, "target");
        if (!source || !target) {
            throw_error(Errc::InvalidFormat, "graphml edge without endpoints");
        }
        Weight weight = 1;
        std::size_t data_pos = 0;
        std::string_view body = tag->body;
        while (auto data = next_tag(body, "data", data_pos)) {
            if (attribute(data->attrs, "key") == weight_key) {
                std::string value = trim(data->body);
                auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), weight);
                if (ec != std::errc{} || ptr != value.data() + value.size()) {
                    throw_error(Errc::InvalidFormat, "bad edge weight '" + value + "'");
                }
            }
            data_pos = data->next;
        }
        edges.emplace_back(*source, *target, weight);
        pos = tag->next;
    }

    if (nodes.empty()) {
        throw_error(Errc::InvalidFormat, "graphml declares no nodes");
    }
    return UWGraph::from_edges(std::move(nodes), edges);
}

UWGraph read_graphml(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw_error(Errc::UnreadablePath, "cannot open " + path.string());
    }
    return read_graphml(in);
}

void write_dot(std::ostream& out, const UWGraph& graph) {
    out << "graph G {\n";
    for (const std::string& node : graph.nodes()) {
        out << "  \"" << node << "\";\n";
    }
    for (const auto& [u, v, w] : graph.edges()) {
        out << "  \"" << graph.address(u) << "\" -- \"" << graph.address(v)
            << "\" [label=" << w << ", weight=" << w << "];\n";
    }
    out << "}\n";
}

void write_dot(const std::filesystem::path& path, const UWGraph& graph) {
    std::ostringstream buffer;
    write_dot(buffer, graph);
    write_file(path, buffer.str());
}

void write_node_list(const std::filesystem::path& path, const UWGraph& graph) {
    std::string out;
    for (const std::string& node : graph.nodes()) {
        out += node;
        out += '\n';
    }
    write_file(path, out);
}

}  // namespace emailnet

#include "emailnet/features.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "emailnet/errors.hpp"
#include "emailnet/textio.hpp"

namespace emailnet {

std::array<double, 6> CpiVector::as_array() const {
    return {static_cast<double>(sent_count), static_cast<double>(recv_count),
            static_cast<double>(cc_count),   avg_recipients_sent,
            static_cast<double>(active_days), reciprocity};
}

std::map<std::string, CpiVector> extract_cpi(std::span<const EmailRecord> records,
                                             const OwnerSpec& owner,
                                             std::span<const std::string> nodes) {
    struct Tally {
        std::int64_t sent = 0;
        std::int64_t recv = 0;
        std::int64_t cc = 0;
        std::int64_t recipients_over_sent = 0;
        std::set<std::chrono::sys_days> days;
        std::int64_t to_owner = 0;
        std::int64_t from_owner = 0;
    };
    std::unordered_map<std::string, Tally> tallies;

    for (const EmailRecord& record : records) {
        const std::string& sender = owner.merge(record.sender);
        std::chrono::sys_days day = std::chrono::floor<std::chrono::days>(record.timestamp);

        std::vector<std::string> merged_recipients;
        for (const std::string& addr : record.recipients()) {
            const std::string& merged = owner.merge(addr);
            if (std::find(merged_recipients.begin(), merged_recipients.end(), merged) ==
                merged_recipients.end()) {
                merged_recipients.push_back(merged);
            }
        }

        Tally& sender_tally = tallies[sender];
        ++sender_tally.sent;
        sender_tally.recipients_over_sent +=
            static_cast<std::int64_t>(merged_recipients.size());
        sender_tally.days.insert(day);

        for (const std::string& recipient : merged_recipients) {
            Tally& tally = tallies[recipient];
            ++tally.recv;
            tally.days.insert(day);
            if (sender == owner.label() && recipient != owner.label()) {
                ++tally.from_owner;
            }
            if (recipient == owner.label() && sender != owner.label()) {
                ++tallies[sender].to_owner;
            }
        }

        std::unordered_set<std::string> merged_cc;
        for (const std::string& addr : record.cc) {
            merged_cc.insert(owner.merge(addr));
        }
        for (const std::string& addr : merged_cc) {
            ++tallies[addr].cc;
        }
    }

    std::map<std::string, CpiVector> result;
    for (const std::string& node : nodes) {
        auto it = tallies.find(node);
        if (it == tallies.end()) {
            throw_error(Errc::UnknownNode, "node never appears in records: " + node);
        }
        const Tally& tally = it->second;
        CpiVector v;
        v.sent_count = tally.sent;
        v.recv_count = tally.recv;
        v.cc_count = tally.cc;
        v.avg_recipients_sent =
            tally.sent == 0 ? 0.0
                            : static_cast<double>(tally.recipients_over_sent) /
                                  static_cast<double>(tally.sent);
        v.active_days = static_cast<std::int64_t>(tally.days.size());
        if (node == owner.label()) {
            v.reciprocity = 1.0;  // the owner is trivially reciprocal with itself
        } else {
            double lo = static_cast<double>(std::min(tally.to_owner, tally.from_owner));
            double hi = static_cast<double>(std::max<std::int64_t>(
                1, std::max(tally.to_owner, tally.from_owner)));
            v.reciprocity = lo / hi;
        }
        result[node] = v;
    }
    return result;
}

FeatureMatrix FeatureMatrix::from_rows(std::vector<std::string> nodes,
                                       const std::vector<std::vector<double>>& rows,
                                       std::vector<std::string> feature_names) {
    if (nodes.size() != rows.size()) {
        throw_error(Errc::InvalidFormat, "feature row count does not match node count");
    }
    if (!std::is_sorted(nodes.begin(), nodes.end()) ||
        std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end()) {
        throw_error(Errc::InvalidFormat, "feature nodes must be sorted and unique");
    }
    if (feature_names.empty()) {
        throw_error(Errc::InvalidFormat, "feature matrix needs at least one feature");
    }
    FeatureMatrix matrix;
    matrix.nodes_ = std::move(nodes);
    matrix.feature_names_ = std::move(feature_names);
    matrix.data_.reserve(matrix.nodes_.size() * matrix.feature_names_.size());
    for (const std::vector<double>& row : rows) {
        if (row.size() != matrix.feature_names_.size()) {
            throw_error(Errc::InvalidFormat, "ragged feature row");
        }
        for (double value : row) {
            if (!(value >= 0.0 && value <= 1.0)) {
                throw_error(Errc::InvalidFormat,
                            "feature value outside [0,1]: " + format_double(value));
            }
            matrix.data_.push_back(value);
        }
    }
    return matrix;
}

std::span<const double> FeatureMatrix::row(std::size_t i) const {
    return {data_.data() + i * dim(), dim()};
}

std::optional<std::size_t> FeatureMatrix::find(std::string_view addr) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), addr);
    if (it == nodes_.end() || *it != addr) return std::nullopt;
    return static_cast<std::size_t>(it - nodes_.begin());
}

std::size_t FeatureMatrix::require(std::string_view addr) const {
    auto id = find(addr);
    if (!id) {
        throw_error(Errc::UnknownNode, "no feature row for: " + std::string(addr));
    }
    return *id;
}

FeatureMatrix normalize(const std::map<std::string, CpiVector>& raw) {
    if (raw.empty()) {
        throw_error(Errc::InvalidFormat, "cannot normalize an empty feature set");
    }
    constexpr std::size_t dim = kCpiFeatureNames.size();
    std::array<double, dim> lo{}, hi{};
    lo.fill(std::numeric_limits<double>::infinity());
    hi.fill(-std::numeric_limits<double>::infinity());
    for (const auto& [node, vec] : raw) {
        std::array<double, dim> values = vec.as_array();
        for (std::size_t f = 0; f < dim; ++f) {
            lo[f] = std::min(lo[f], values[f]);
            hi[f] = std::max(hi[f], values[f]);
        }
    }

    std::vector<std::string> nodes;
    std::vector<std::vector<double>> rows;
    nodes.reserve(raw.size());
    rows.reserve(raw.size());
    for (const auto& [node, vec] : raw) {
        std::array<double, dim> values = vec.as_array();
        std::vector<double> row(dim);
        for (std::size_t f = 0; f < dim; ++f) {
            row[f] = hi[f] == lo[f] ? 0.0 : (values[f] - lo[f]) / (hi[f] - lo[f]);
        }
        nodes.push_back(node);
        rows.push_back(std::move(row));
    }
    return FeatureMatrix::from_rows(
        std::move(nodes), rows,
        std::vector<std::string>(kCpiFeatureNames.begin(), kCpiFeatureNames.end()));
}

void require_aligned(const UWGraph& graph, const FeatureMatrix& features) {
    if (graph.nodes() != features.nodes()) {
        throw_error(Errc::ConfigInvalid, "feature rows do not match graph nodes");
    }
}

void write_cpi_csv(const std::filesystem::path& path,
                   const std::map<std::string, CpiVector>& raw) {
    std::string out = "address";
    for (const char* name : kCpiFeatureNames) {
        out += ',';
        out += name;
    }
    out += '\n';
    for (const auto& [node, vec] : raw) {
        out += csv_escape(node);
        out += ',' + std::to_string(vec.sent_count);
        out += ',' + std::to_string(vec.recv_count);
        out += ',' + std::to_string(vec.cc_count);
        out += ',' + format_double(vec.avg_recipients_sent);
        out += ',' + std::to_string(vec.active_days);
        out += ',' + format_double(vec.reciprocity);
        out += '\n';
    }
    write_file(path, out);
}

void write_features_csv(const std::filesystem::path& path, const FeatureMatrix& features) {
    std::string out = "address";
    for (const std::string& name : features.feature_names()) {
        out += ',';
        out += name;
    }
    out += '\n';
    for (std::size_t i = 0; i < features.size(); ++i) {
        out += csv_escape(features.nodes()[i]);
        for (double value : features.row(i)) {
            out += ',';
            out += format_double(value);
        }
        out += '\n';
    }
    write_file(path, out);
}

FeatureMatrix read_features_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw_error(Errc::UnreadablePath, "cannot open " + path.string());
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw_error(Errc::InvalidFormat, "empty feature CSV: " + path.string());
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> header = split_csv_line(line);
    if (header.size() < 2 || to_lower(trim(header[0])) != "address") {
        throw_error(Errc::InvalidFormat, "feature CSV must start with an address column");
    }
    std::vector<std::string> names(header.begin() + 1, header.end());

    std::vector<std::pair<std::string, std::vector<double>>> entries;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            throw_error(Errc::InvalidFormat, "ragged feature CSV row: " + line);
        }
        std::vector<double> row;
        row.reserve(names.size());
        for (std::size_t i = 1; i < fields.size(); ++i) {
            std::string field = trim(fields[i]);
            double value = 0.0;
            auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
            if (ec != std::errc{} || ptr != field.data() + field.size()) {
                throw_error(Errc::InvalidFormat, "bad feature value '" + field + "'");
            }
            row.push_back(value);
        }
        entries.emplace_back(trim(fields[0]), std::move(row));
    }
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<std::string> nodes;
    std::vector<std::vector<double>> rows;
    for (auto& [node, row] : entries) {
        nodes.push_back(node);
        rows.push_back(std::move(row));
    }
    return FeatureMatrix::from_rows(std::move(nodes), rows, std::move(names));
}

}  // namespace emailnet

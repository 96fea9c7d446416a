#include "emailnet/ingest.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

#include "emailnet/address.hpp"
#include "emailnet/errors.hpp"
#include "emailnet/textio.hpp"

namespace emailnet {

const char* to_string(SkipReason reason) {
    switch (reason) {
        case SkipReason::MissingSender: return "MissingSender";
        case SkipReason::NoRecipients: return "NoRecipients";
        case SkipReason::UnparsableDate: return "UnparsableDate";
        case SkipReason::Duplicate: return "Duplicate";
        case SkipReason::MalformedRow: return "MalformedRow";
        case SkipReason::UnreadableFile: return "UnreadableFile";
    }
    return "Unknown";
}

void IngestDiagnostics::count_skip(SkipReason reason) {
    ++skipped;
    ++reasons[to_string(reason)];
    if (reason == SkipReason::Duplicate) ++duplicates;
}

std::string IngestDiagnostics::to_json() const {
    nlohmann::ordered_json j;
    j["parsed"] = parsed;
    j["skipped"] = skipped;
    j["reasons"] = nlohmann::ordered_json::object();
    for (const auto& [reason, count] : reasons) j["reasons"][reason] = count;
    j["duplicates"] = duplicates;
    return j.dump(2) + "\n";
}

namespace {

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

std::string synthesize_message_id(const EmailRecord& record) {
    std::string material = record.sender;
    material += '|';
    material += format_timestamp(record.timestamp);
    for (const std::string& addr : record.recipients()) {
        material += '|';
        material += addr;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "synth-%016llx",
                  static_cast<unsigned long long>(fnv1a64(material)));
    return buf;
}

// Header block split and unfolding. Returns (name, value) pairs in order.
std::vector<std::pair<std::string, std::string>> parse_headers(std::string_view raw) {
    std::vector<std::string> lines;
    std::string current;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        char c = raw[i];
        if (c == '\r') continue;
        if (c == '\n') {
            if (current.empty()) break;  // blank line ends the header block
            lines.push_back(std::move(current));
            current.clear();
        } else {
            current += c;
        }
    }
    if (!current.empty()) lines.push_back(std::move(current));

    std::vector<std::string> unfolded;
    for (std::string& line : lines) {
        if ((line[0] == ' ' || line[0] == '\t') && !unfolded.empty()) {
            unfolded.back() += ' ';
            unfolded.back() += trim(line);
        } else {
            unfolded.push_back(std::move(line));
        }
    }

    std::vector<std::pair<std::string, std::string>> headers;
    for (const std::string& line : unfolded) {
        std::size_t colon = line.find(':');
        if (colon == std::string::npos) continue;
        headers.emplace_back(to_lower(trim(std::string_view(line).substr(0, colon))),
                             trim(std::string_view(line).substr(colon + 1)));
    }
    return headers;
}

const std::string* find_header(const std::vector<std::pair<std::string, std::string>>& headers,
                               std::string_view name) {
    for (const auto& [key, value] : headers) {
        if (key == name) return &value;
    }
    return nullptr;
}

}  // namespace

ParseOutcome parse_email(std::string_view raw) {
    auto headers = parse_headers(raw);

    EmailRecord record;
    const std::string* from = find_header(headers, "from");
    if (from) {
        auto senders = parse_address_list(*from);
        if (!senders.empty()) record.sender = senders.front();
    }
    if (record.sender.empty()) {
        return {std::nullopt, SkipReason::MissingSender};
    }

    if (const std::string* value = find_header(headers, "to")) {
        record.to = parse_address_list(*value);
    }
    if (const std::string* value = find_header(headers, "cc")) {
        record.cc = parse_address_list(*value);
    }
    if (const std::string* value = find_header(headers, "bcc")) {
        record.bcc = parse_address_list(*value);
    }
    if (record.to.empty() && record.cc.empty() && record.bcc.empty()) {
        return {std::nullopt, SkipReason::NoRecipients};
    }

    const std::string* date = find_header(headers, "date");
    if (!date) {
        return {std::nullopt, SkipReason::UnparsableDate};
    }
    auto timestamp = parse_rfc2822_date(*date);
    if (!timestamp) {
        return {std::nullopt, SkipReason::UnparsableDate};
    }
    record.timestamp = *timestamp;

    if (const std::string* id = find_header(headers, "message-id")) {
        std::string trimmed = trim(*id);
        if (trimmed.size() >= 2 && trimmed.front() == '<' && trimmed.back() == '>') {
            trimmed = trim(std::string_view(trimmed).substr(1, trimmed.size() - 2));
        }
        record.message_id = trimmed;
    }
    if (record.message_id.empty()) {
        record.message_id = synthesize_message_id(record);
    }
    return {std::move(record), SkipReason::MalformedRow};
}

namespace {

std::vector<std::string> split_semicolon_list(std::string_view text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(';', start);
        if (end == std::string_view::npos) end = text.size();
        std::string entry = trim(text.substr(start, end - start));
        if (!entry.empty()) out.push_back(std::move(entry));
        start = end + 1;
    }
    return out;
}

// Canonicalizes and dedups one recipient column of a CSV row.
std::vector<std::string> csv_recipient_list(std::string_view field) {
    std::vector<std::string> out;
    for (const std::string& token : split_semicolon_list(field)) {
        auto addr = canonicalize_address(token);
        if (!addr) continue;
        if (std::find(out.begin(), out.end(), *addr) == out.end()) {
            out.push_back(std::move(*addr));
        }
    }
    return out;
}

ParseOutcome parse_csv_row(const std::vector<std::string>& fields,
                           const std::vector<std::size_t>& column_of) {
    // column_of maps {id, sender, to, cc, bcc, timestamp} onto field indices.
    EmailRecord record;
    auto sender = canonicalize_address(fields[column_of[1]]);
    if (!sender) {
        return {std::nullopt, SkipReason::MissingSender};
    }
    record.sender = std::move(*sender);

    record.to = csv_recipient_list(fields[column_of[2]]);
    record.cc = csv_recipient_list(fields[column_of[3]]);
    record.bcc = csv_recipient_list(fields[column_of[4]]);
    if (record.to.empty() && record.cc.empty() && record.bcc.empty()) {
        return {std::nullopt, SkipReason::NoRecipients};
    }

    auto timestamp = parse_iso_timestamp(fields[column_of[5]]);
    if (!timestamp) {
        return {std::nullopt, SkipReason::UnparsableDate};
    }
    record.timestamp = *timestamp;

    record.message_id = trim(fields[column_of[0]]);
    if (record.message_id.empty()) {
        record.message_id = synthesize_message_id(record);
    }
    return {std::move(record), SkipReason::MalformedRow};
}

void scan_csv(const std::filesystem::path& path, ScanResult& result,
              std::unordered_set<std::string>& seen_ids) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw_error(Errc::UnreadablePath, "cannot open " + path.string());
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw_error(Errc::InvalidFormat, "empty CSV log: " + path.string());
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();

    static constexpr std::array<std::string_view, 6> kColumns = {
        "message_id", "sender", "to", "cc", "bcc", "timestamp"};
    std::vector<std::string> header = split_csv_line(line);
    std::vector<std::size_t> column_of(kColumns.size());
    for (std::size_t i = 0; i < kColumns.size(); ++i) {
        auto it = std::find_if(header.begin(), header.end(), [&](const std::string& h) {
            return to_lower(trim(h)) == kColumns[i];
        });
        if (it == header.end()) {
            throw_error(Errc::InvalidFormat,
                        "CSV log missing column '" + std::string(kColumns[i]) + "'");
        }
        column_of[i] = static_cast<std::size_t>(it - header.begin());
    }

    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            result.diagnostics.count_skip(SkipReason::MalformedRow);
            continue;
        }
        ParseOutcome outcome = parse_csv_row(fields, column_of);
        if (!outcome.ok()) {
            result.diagnostics.count_skip(outcome.reason);
            continue;
        }
        if (!seen_ids.insert(outcome.record->message_id).second) {
            result.diagnostics.count_skip(SkipReason::Duplicate);
            continue;
        }
        result.records.push_back(std::move(*outcome.record));
        ++result.diagnostics.parsed;
    }
}

void scan_directory(const std::filesystem::path& root, ScanResult& result,
                    std::unordered_set<std::string>& seen_ids) {
    std::vector<std::filesystem::path> files;
    std::error_code ec;
    for (auto it = std::filesystem::recursive_directory_iterator(root, ec);
         it != std::filesystem::recursive_directory_iterator(); it.increment(ec)) {
        if (ec) {
            throw_error(Errc::UnreadablePath, "cannot traverse " + root.string());
        }
        if (!it->is_regular_file()) continue;
        if (it->path().filename().string().starts_with('.')) continue;
        files.push_back(it->path());
    }
    if (ec) {
        throw_error(Errc::UnreadablePath, "cannot traverse " + root.string());
    }
    std::sort(files.begin(), files.end(),
              [](const auto& a, const auto& b) { return a.generic_string() < b.generic_string(); });

    for (const std::filesystem::path& file : files) {
        std::string raw;
        try {
            raw = read_file(file);
        } catch (const Error&) {
            result.diagnostics.count_skip(SkipReason::UnreadableFile);
            continue;
        }
        ParseOutcome outcome = parse_email(raw);
        if (!outcome.ok()) {
            result.diagnostics.count_skip(outcome.reason);
            continue;
        }
        if (!seen_ids.insert(outcome.record->message_id).second) {
            result.diagnostics.count_skip(SkipReason::Duplicate);
            continue;
        }
        result.records.push_back(std::move(*outcome.record));
        ++result.diagnostics.parsed;
    }
}

}  // namespace

ScanResult scan_corpus(const std::filesystem::path& root) {
    ScanResult result;
    std::unordered_set<std::string> seen_ids;

    std::error_code ec;
    if (std::filesystem::is_directory(root, ec)) {
        scan_directory(root, result, seen_ids);
    } else if (std::filesystem::is_regular_file(root, ec) &&
               to_lower(root.extension().string()) == ".csv") {
        scan_csv(root, result, seen_ids);
    } else {
        throw_error(Errc::UnreadablePath,
                    "corpus root is neither a directory nor a .csv file: " + root.string());
    }

    std::sort(result.records.begin(), result.records.end(),
              [](const EmailRecord& a, const EmailRecord& b) {
                  if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
                  return a.message_id < b.message_id;
              });
    return result;
}

void write_records_csv(const std::filesystem::path& path,
                       const std::vector<EmailRecord>& records) {
    std::string out = "message_id,sender,to,cc,bcc,timestamp\n";
    auto join = [](const std::vector<std::string>& list) {
        std::string joined;
        for (std::size_t i = 0; i < list.size(); ++i) {
            if (i) joined += ';';
            joined += list[i];
        }
        return joined;
    };
    for (const EmailRecord& record : records) {
        out += csv_escape(record.message_id);
        out += ',';
        out += record.sender;
        out += ',';
        out += join(record.to);
        out += ',';
        out += join(record.cc);
        out += ',';
        out += join(record.bcc);
        out += ',';
        out += format_timestamp(record.timestamp);
        out += '\n';
    }
    write_file(path, out);
}

void write_diagnostics_json(const std::filesystem::path& path,
                            const IngestDiagnostics& diagnostics) {
    write_file(path, diagnostics.to_json());
}

}  // namespace emailnet

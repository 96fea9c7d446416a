#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "emailnet/record.hpp"

namespace emailnet {

enum class SkipReason {
    MissingSender,
    NoRecipients,
    UnparsableDate,
    Duplicate,
    MalformedRow,
    UnreadableFile,
};

const char* to_string(SkipReason reason);

struct IngestDiagnostics {
    std::uint64_t parsed = 0;
    std::uint64_t skipped = 0;  // duplicates are tallied here as well
    std::uint64_t duplicates = 0;
    std::map<std::string, std::uint64_t> reasons;

    void count_skip(SkipReason reason);
    std::string to_json() const;
};

struct ParseOutcome {
    std::optional<EmailRecord> record;
    SkipReason reason = SkipReason::MalformedRow;

    bool ok() const { return record.has_value(); }
};

// Parses one raw message: header block, blank line, body (body ignored).
// Continuation lines are unfolded; recognized headers are Message-ID, From,
// To, Cc, Bcc and Date, case-insensitively. A missing Message-ID is
// synthesized from a content hash of (sender, timestamp, sorted recipients).
ParseOutcome parse_email(std::string_view raw);

struct ScanResult {
    std::vector<EmailRecord> records;  // sorted by (timestamp, message_id)
    IngestDiagnostics diagnostics;
};

// root is either a directory tree of plain-text messages or a .csv log with
// columns message_id,sender,to,cc,bcc,timestamp (lists ';'-separated,
// timestamps ISO-8601 UTC). Unreadable roots abort; bad files and rows are
// skipped and counted. Duplicate message ids keep the first occurrence in
// scan order.
ScanResult scan_corpus(const std::filesystem::path& root);

// Writes records in the same CSV schema scan_corpus accepts, so an ingest
// run round-trips through its own output.
void write_records_csv(const std::filesystem::path& path,
                       const std::vector<EmailRecord>& records);

void write_diagnostics_json(const std::filesystem::path& path,
                            const IngestDiagnostics& diagnostics);

}  // namespace emailnet

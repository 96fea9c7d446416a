#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace emailnet {

using Timestamp = std::chrono::sys_seconds;

struct EmailRecord {
    std::string message_id;
    std::string sender;
    std::vector<std::string> to;
    std::vector<std::string> cc;
    std::vector<std::string> bcc;
    Timestamp timestamp{};

    // Distinct union of to/cc/bcc, sorted. An address listed both in To and
    // Cc still counts once here.
    std::vector<std::string> recipients() const;

    bool operator==(const EmailRecord&) const = default;
};

// One person may appear under several alias addresses. The lexicographically
// smallest alias labels the merged node everywhere downstream.
class OwnerSpec {
public:
    explicit OwnerSpec(std::vector<std::string> addresses);

    const std::vector<std::string>& addresses() const { return addresses_; }
    const std::string& label() const { return addresses_.front(); }
    bool contains(std::string_view addr) const;

    // Maps owner aliases onto the owner label, passes everything else through.
    const std::string& merge(const std::string& addr) const;

private:
    std::vector<std::string> addresses_;  // sorted, unique, canonical
};

std::string format_timestamp(Timestamp ts);  // 2002-01-14T16:00:00Z

// ISO-8601 with an explicit zone designator (Z or numeric offset).
std::optional<Timestamp> parse_iso_timestamp(std::string_view text);

// RFC-2822 style header date, e.g. "Mon, 14 Jan 2002 08:00:00 -0800 (PST)".
// Zone-less or otherwise malformed dates yield nullopt.
std::optional<Timestamp> parse_rfc2822_date(std::string_view text);

}  // namespace emailnet

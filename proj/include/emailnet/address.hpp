#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace emailnet {

// A canonical address is a lowercased local@domain with exactly one '@',
// no surrounding whitespace and no display name or angle brackets.
bool is_canonical_address(std::string_view addr);

// Extracts the address from `Name <a@b>` or bare `a@b` and canonicalizes it.
// Returns nullopt when no usable address is present.
std::optional<std::string> canonicalize_address(std::string_view raw);

// Splits a comma separated header value (quote and angle-bracket aware),
// canonicalizes each entry and drops within-list duplicates. Entries that
// do not contain a usable address are dropped silently.
std::vector<std::string> parse_address_list(std::string_view value);

}  // namespace emailnet

#include "emailnet/address.hpp"

#include <algorithm>
#include <cctype>

#include "emailnet/textio.hpp"

namespace emailnet {

namespace {

bool valid_address_body(std::string_view addr) {
    if (addr.empty()) return false;
    std::size_t at = addr.find('@');
    if (at == std::string_view::npos || at == 0 || at + 1 == addr.size()) return false;
    if (addr.find('@', at + 1) != std::string_view::npos) return false;
    for (char c : addr) {
        if (std::isspace(static_cast<unsigned char>(c))) return false;
        if (c == '<' || c == '>' || c == ',' || c == '"') return false;
    }
    return true;
}

}  // namespace

bool is_canonical_address(std::string_view addr) {
    if (!valid_address_body(addr)) return false;
    return std::none_of(addr.begin(), addr.end(), [](unsigned char c) {
        return std::isupper(c);
    });
}

std::optional<std::string> canonicalize_address(std::string_view raw) {
    std::string token = trim(raw);
    std::size_t open = token.rfind('<');
    if (open != std::string::npos) {
        std::size_t close = token.find('>', open);
        if (close == std::string::npos) return std::nullopt;
        token = trim(std::string_view(token).substr(open + 1, close - open - 1));
    } else if (token.size() >= 2 && token.front() == '"' && token.back() == '"') {
        token = trim(std::string_view(token).substr(1, token.size() - 2));
    }
    std::string lowered = to_lower(token);
    if (!valid_address_body(lowered)) return std::nullopt;
    return lowered;
}

std::vector<std::string> parse_address_list(std::string_view value) {
    std::vector<std::string> entries;
    std::string current;
    bool quoted = false;
    bool bracketed = false;
    for (char c : value) {
        if (c == '"') {
            quoted = !quoted;
            current += c;
        } else if (!quoted && c == '<') {
            bracketed = true;
            current += c;
        } else if (!quoted && c == '>') {
            bracketed = false;
            current += c;
        } else if (!quoted && !bracketed && c == ',') {
            entries.push_back(std::move(current));
            current.clear();
        } else {
            current += c;
        }
    }
    entries.push_back(std::move(current));

    std::vector<std::string> addresses;
    for (const std::string& entry : entries) {
        auto addr = canonicalize_address(entry);
        if (!addr) continue;
        if (std::find(addresses.begin(), addresses.end(), *addr) == addresses.end()) {
            addresses.push_back(std::move(*addr));
        }
    }
    return addresses;
}

}  // namespace emailnet

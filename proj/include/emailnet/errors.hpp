#pragma once

#include <stdexcept>
#include <string>

namespace emailnet {

// Error codes double as CLI exit codes, so every failure mode keeps a
// distinct nonzero value.
enum class Errc {
    ConfigInvalid = 2,
    MissingArtifact = 3,
    UnreadablePath = 4,
    OwnerAbsent = 5,
    EmptyGraph = 6,
    KTooLarge = 7,
    InsufficientReference = 8,
    UnknownNode = 9,
    InconsistentPartition = 10,
    InvalidFormat = 11,
};

const char* to_string(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void throw_error(Errc code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace emailnet

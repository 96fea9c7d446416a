#include "emailnet/errors.hpp"

namespace emailnet {

const char* to_string(Errc code) {
    switch (code) {
        case Errc::ConfigInvalid: return "ConfigInvalid";
        case Errc::MissingArtifact: return "MissingArtifact";
        case Errc::UnreadablePath: return "UnreadablePath";
        case Errc::OwnerAbsent: return "OwnerAbsent";
        case Errc::EmptyGraph: return "EmptyGraph";
        case Errc::KTooLarge: return "KTooLarge";
        case Errc::InsufficientReference: return "InsufficientReference";
        case Errc::UnknownNode: return "UnknownNode";
        case Errc::InconsistentPartition: return "InconsistentPartition";
        case Errc::InvalidFormat: return "InvalidFormat";
    }
    return "Unknown";
}

}  // namespace emailnet

#include "ustatboot/error.hpp"

namespace ustatboot {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidParameter: return "invalid-parameter";
        case ErrorKind::InvalidInput: return "invalid-input";
        case ErrorKind::InsufficientData: return "insufficient-data";
        case ErrorKind::InvalidBlockLength: return "invalid-block-length";
        case ErrorKind::InsufficientReplicates: return "insufficient-replicates";
        case ErrorKind::InvalidLag: return "invalid-lag";
        case ErrorKind::InvalidScale: return "invalid-scale";
        case ErrorKind::InvalidSubsample: return "invalid-subsample";
        case ErrorKind::NonstationaryConfig: return "nonstationary-config";
        case ErrorKind::Config: return "config";
    }
    return "unknown";
}

void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, std::string(to_string(kind)) + ": " + what);
}

}  // namespace ustatboot

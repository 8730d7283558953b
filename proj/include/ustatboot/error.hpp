#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ustatboot {

enum class ErrorKind {
    InvalidParameter,
    InvalidInput,
    InsufficientData,
    InvalidBlockLength,
    InsufficientReplicates,
    InvalidLag,
    InvalidScale,
    InvalidSubsample,
    NonstationaryConfig,
    Config,
};

[[nodiscard]] std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so that
/// callers (CLI, Python bindings) can map it without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace ustatboot

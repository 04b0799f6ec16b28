#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace adelic {

// Domain-level failure with a stable machine-readable code ("RamifiedPrime",
// "NotASubgroup", ...). The CLI maps these to exit code 1.
class DomainError : public std::runtime_error {
public:
    DomainError(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(std::string code, const std::string& message) {
    throw DomainError(std::move(code), message);
}

}  // namespace adelic

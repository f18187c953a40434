// Error taxonomy shared across modules. Everything is a runtime_error
// subclass so call sites can catch broadly or by condition.
#pragma once

#include <stdexcept>
#include <string>

namespace meshpon {

struct SchedulingInPast : std::runtime_error {
    explicit SchedulingInPast(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidRate : std::runtime_error {
    explicit InvalidRate(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidPrbCount : std::runtime_error {
    explicit InvalidPrbCount(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidLoad : std::runtime_error {
    explicit InvalidLoad(const std::string& what) : std::runtime_error(what) {}
};

struct Unreachable : std::runtime_error {
    explicit Unreachable(const std::string& what) : std::runtime_error(what) {}
};

struct IncompletePacket : std::runtime_error {
    explicit IncompletePacket(const std::string& what) : std::runtime_error(what) {}
};

struct EmptyWindow : std::runtime_error {
    explicit EmptyWindow(const std::string& what) : std::runtime_error(what) {}
};

struct GridMismatch : std::runtime_error {
    explicit GridMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace meshpon

#ifndef SUPTOP_ERRORS_HPP
#define SUPTOP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace suptop {

/// Malformed user input (bad complex file, repeated vertices, mismatched hosts, ...).
struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// A construction exceeded the configured cell guard.
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// A model violates a structural requirement (non-free action, bad cover, no Thom class, ...).
struct ModelError : std::runtime_error {
    explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace suptop

#endif

#pragma once

#include <stdexcept>
#include <string>

namespace hinfty {

/// Bad arguments: dimension mismatch, out-of-range parameters.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical check failed (non-isometry, off-sheet point, divergence).
class InvariantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& msg)
{
    if (!cond)
        throw ConfigError(msg);
}

} // namespace hinfty

#pragma once

#include <stdexcept>

namespace nlobs {

/// Invalid parameters supplied by the caller (bad window, λ > Λ, obstacle support too wide, ...).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Inputs whose shapes do not fit together (grid mismatch, empty member list, empty mask).
class StructuralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace nlobs

#pragma once

#include <stdexcept>
#include <string>

namespace coarsekit {

/// Library-wide error. Messages always name the witness that triggered the
/// rejection (vertex pair, triple, bound, ...) so callers can surface it.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace coarsekit

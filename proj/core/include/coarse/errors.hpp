#pragma once

#include <stdexcept>
#include <string>

namespace coarse {

// Caller handed us parameters or data outside an operation's domain
// (non-metric matrix, odd n*k, threshold above the diameter, ...).
// The CLI maps this family to exit code 2.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem trouble or unparseable input files. CLI exit code 3.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace coarse

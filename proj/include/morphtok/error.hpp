#pragma once

#include <stdexcept>
#include <string>

namespace morphtok {

/// Bad or missing input data: unreadable files, malformed records,
/// violated preconditions on supplied values. The CLI maps it to exit 2.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid arguments or configuration. The CLI maps it to exit 1.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace morphtok

#pragma once

#include <stdexcept>
#include <string>

namespace seqends {

/// Raised when an operation's inputs violate its documented preconditions
/// (bad grids, window overruns, malformed files, invalid witnesses).
/// The CLI maps this to exit status 2.
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace seqends

#pragma once

#include <stdexcept>
#include <string>

namespace sgr {

/// Failures of the data itself: bad topology, invalid embeddings, mismatched inputs.
/// The CLI maps these to exit status 1.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input is not genus-zero / watertight / manifold, or is otherwise unusable.
class TopologyError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// File-system and parse failures. The CLI maps these to exit status 2.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sgr

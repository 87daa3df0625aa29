#pragma once

#include <stdexcept>
#include <string>

namespace calabi {

// Thrown when an iterative scheme exhausts its budget without meeting its
// stopping rule (series truncation, panel budget, tail search).
class convergence_error : public std::runtime_error {
 public:
  explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a semi-infinite integral cannot be truncated below the cap.
class truncation_error : public convergence_error {
 public:
  explicit truncation_error(const std::string& what) : convergence_error(what) {}
};

// Thrown by classifiers when the supplied boundary data contradicts the
// asserted problem type.
class inconsistency_error : public std::runtime_error {
 public:
  explicit inconsistency_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace calabi

#pragma once

#include <stdexcept>
#include <string>

namespace sagin {

// Bad configuration document, bad option value or bad CLI argument.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A model quantity is undefined for the given state (e.g. UAV compression
// assigned to a GT with zero CPU share).
class ModelError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// No latency-feasible point exists for a problem that must return one.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sagin

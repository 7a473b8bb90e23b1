#pragma once

#include <stdexcept>
#include <string>

namespace bibliorank {

// Input data is malformed or references unknown entities. CLI exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A requested result is mathematically undefined for the given data
// (empty pool, zero variance, ...). CLI exit code 3.
class ComputationError : public std::runtime_error {
 public:
  explicit ComputationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bibliorank

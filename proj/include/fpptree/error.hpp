#pragma once

#include <stdexcept>
#include <string>

namespace fpptree {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A graph violates simplicity, symmetry or connectivity, or a file is malformed.
class InvalidGraph : public Error {
 public:
  using Error::Error;
};

// An exact computation would exceed its configured size or work budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// A precondition on an argument does not hold.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// An experiment configuration document is malformed or inconsistent.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace fpptree

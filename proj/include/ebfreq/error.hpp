#pragma once

#include <stdexcept>
#include <string>

namespace ebfreq {

// Invalid argument to a numerical routine (nonpositive shape, count out of range, ...).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed or inconsistent input data. Messages always name the offending marker or line.
class data_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A prior model that cannot be evaluated for the requested input.
class model_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ebfreq

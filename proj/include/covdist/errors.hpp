#pragma once

#include <iostream>
#include <stdexcept>
#include <string>

namespace covdist {

// Malformed arguments: dimension mismatch, bad structure request, parse failure.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Arguments outside the mathematical domain (non-PSD covariance, non-PD log).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline void warn(const std::string& msg) { std::clog << "covdist: warning: " << msg << '\n'; }

}  // namespace covdist

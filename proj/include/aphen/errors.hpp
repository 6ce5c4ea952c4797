#ifndef APHEN_ERRORS_HPP
#define APHEN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace aphen {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A flat parameter vector does not match the expected factor layout.
class LayoutError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

/// A metric was requested outside of its domain of definition.
class DomainError : public Error {
 public:
  using Error::Error;
};

class MetricError : public Error {
 public:
  using Error::Error;
};

class UnsupportedOrderError : public Error {
 public:
  using Error::Error;
};

}  // namespace aphen

#endif  // APHEN_ERRORS_HPP

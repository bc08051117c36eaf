#pragma once

#include <stdexcept>
#include <string>

namespace kfs {

// Base for every error raised by the library. Messages are meant to be shown
// to the user as-is.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DatasetError : public Error {
 public:
  using Error::Error;
};

class CriterionError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace kfs

#pragma once

#include <stdexcept>
#include <string>

namespace fairgen {

// Every failure raised by the library derives from Error. The category
// decides the process exit code in the command-line tool.
enum class ErrorCategory {
  kConfig,    // invalid settings, missing/unreadable config-level files
  kArgument,  // precondition violated by a caller
  kLoad,      // a data file is missing or unreadable
  kParse,     // a data file is malformed
  kInput,     // inputs are inconsistent with each other
  kTraining,  // a model cannot be estimated from the given data
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorCategory::kConfig, what) {}
};

class ArgumentError : public Error {
 public:
  explicit ArgumentError(const std::string& what) : Error(ErrorCategory::kArgument, what) {}
};

class LoadError : public Error {
 public:
  explicit LoadError(const std::string& what) : Error(ErrorCategory::kLoad, what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(ErrorCategory::kParse, what) {}
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(ErrorCategory::kInput, what) {}
};

class TrainingError : public Error {
 public:
  explicit TrainingError(const std::string& what) : Error(ErrorCategory::kTraining, what) {}
};

}  // namespace fairgen

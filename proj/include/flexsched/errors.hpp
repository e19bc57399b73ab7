#pragma once

#include <stdexcept>
#include <string>

namespace flexsched {

// Bad user input of any kind; the CLI maps this family to exit code 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& file, int line, const std::string& message)
      : InputError(file + ":" + std::to_string(line) + ": " + message), file_(file), line_(line) {}
  const std::string& file() const { return file_; }
  int line() const { return line_; }

 private:
  std::string file_;
  int line_;
};

class ValidationError : public InputError {
 public:
  ValidationError(const std::string& entity, const std::string& message)
      : InputError(entity + ": " + message), entity_(entity) {}
  const std::string& entity() const { return entity_; }

 private:
  std::string entity_;
};

class ReferenceError : public InputError {
 public:
  ReferenceError(const std::string& entity, const std::string& message)
      : InputError(entity + ": " + message), entity_(entity) {}
  const std::string& entity() const { return entity_; }

 private:
  std::string entity_;
};

// A post-condition the library itself should have guaranteed did not hold.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace flexsched

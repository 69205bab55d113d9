#pragma once

#include <stdexcept>
#include <string>

namespace va {

// Error taxonomy used across the library.  Contract violations are
// programming errors at call sites; validation/parse errors are data
// problems; io errors wrap filesystem failures.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ContractError : public Error {
public:
  explicit ContractError(const std::string& msg) : Error("contract violation: " + msg) {}
};

class ValidationError : public Error {
public:
  explicit ValidationError(const std::string& msg) : Error("validation error: " + msg) {}
};

class ParseError : public Error {
public:
  ParseError(const std::string& file, long line, const std::string& msg)
      : Error("parse error: " + file + ":" + std::to_string(line) + ": " + msg) {}
};

class IoError : public Error {
public:
  explicit IoError(const std::string& msg) : Error("io error: " + msg) {}
};

class DivergenceError : public Error {
public:
  DivergenceError(int epoch, const std::string& msg)
      : Error("divergence at epoch " + std::to_string(epoch) + ": " + msg), epoch_(epoch) {}
  int epoch() const { return epoch_; }

private:
  int epoch_;
};

}  // namespace va

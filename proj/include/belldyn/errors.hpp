#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace belldyn {

// Base of all library errors. Two branches: UsageError for bad requests
// (rejected inputs, unknown names, malformed text) and NumericalError for
// violated numerical invariants (a state that stopped being a state).
// The CLI maps UsageError to exit code 1 and NumericalError to exit code 2.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

class UsageError : public Error {
  public:
    explicit UsageError(const std::string &msg) : Error(msg) {}
};

class NumericalError : public Error {
  public:
    explicit NumericalError(const std::string &msg) : Error(msg) {}
};

class ParamOutOfRange : public UsageError {
  public:
    explicit ParamOutOfRange(const std::string &msg) : UsageError(msg) {}
};

class IterationCapExceeded : public UsageError {
  public:
    explicit IterationCapExceeded(const std::string &msg) : UsageError(msg) {}
};

class UnsupportedCombination : public UsageError {
  public:
    explicit UnsupportedCombination(const std::string &msg) : UsageError(msg) {}
};

class UnknownPreset : public UsageError {
  public:
    explicit UnknownPreset(const std::string &msg) : UsageError(msg) {}
};

class EmptyInput : public UsageError {
  public:
    explicit EmptyInput(const std::string &msg) : UsageError(msg) {}
};

class IOFailure : public UsageError {
  public:
    explicit IOFailure(const std::string &msg) : UsageError(msg) {}
};

// Lexical/grammatical failure in a channel-spec string. Carries the byte
// offset of the failure and the set of tokens that would have been accepted.
class ParseError : public UsageError {
  public:
    ParseError(const std::string &msg, std::size_t offset,
               std::vector<std::string> expected)
        : UsageError(msg), offset_(offset), expected_(std::move(expected)) {}

    std::size_t offset() const { return offset_; }
    const std::vector<std::string> &expected() const { return expected_; }

  private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

// Grammatically valid channel spec with an inconsistent meaning
// (duplicate side, missing rate, zero repetitions, rate outside [0,1]).
class SemanticError : public UsageError {
  public:
    explicit SemanticError(const std::string &msg) : UsageError(msg) {}
};

class PhysicalityViolation : public NumericalError {
  public:
    explicit PhysicalityViolation(const std::string &msg) : NumericalError(msg) {}
};

class NotHermitian : public NumericalError {
  public:
    explicit NotHermitian(const std::string &msg) : NumericalError(msg) {}
};

class NotBellDiagonal : public NumericalError {
  public:
    explicit NotBellDiagonal(const std::string &msg) : NumericalError(msg) {}
};

} // namespace belldyn

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mscs {

// Argument outside the mathematical domain of an operation (e.g. lambda not in (1,2)).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Unknown function / problem / case name.
class LookupError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Objective or constraint produced a non-finite value.
// index() is the constraint index, or npos for the objective itself.
class EvaluationError : public std::runtime_error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  EvaluationError(const std::string& what, std::size_t index = npos)
      : std::runtime_error(what), index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file. line() is 1-based, 0 when the error is not tied to a line.
class IngestionError : public std::runtime_error {
 public:
  IngestionError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? what + " (line " + std::to_string(line) + ")" : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A trial was aborted by an evaluation failure.
class TrialAborted : public std::runtime_error {
 public:
  TrialAborted(const std::string& cause, std::size_t iteration, std::size_t fe_used)
      : std::runtime_error("trial aborted at iteration " + std::to_string(iteration) +
                           " after " + std::to_string(fe_used) + " evaluations: " + cause),
        iteration_(iteration),
        fe_used_(fe_used) {}

  std::size_t iteration() const noexcept { return iteration_; }
  std::size_t fe_used() const noexcept { return fe_used_; }

 private:
  std::size_t iteration_;
  std::size_t fe_used_;
};

}  // namespace mscs

#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace sigpat {

// Transaction / item / support counts. Large enough for the biggest FIMI
// benchmarks (N ~ 5e5, P ~ 4.5e4).
using Count = std::uint32_t;

// Itemset counts. Testable-pattern counts reach ~6e15 on dense benchmarks.
using PatternCount = std::uint64_t;

// Input could not be parsed; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Data is structurally valid but statistically unusable (e.g. all labels
// equal, so the minority class is empty and every minimum p-value is 1).
class DegenerateDataError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace sigpat

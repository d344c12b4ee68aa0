#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "fixsat/formula.hpp"

namespace fixsat {

/// Malformed or unsupported DIMACS input. line() is 1-based, 0 when the
/// problem is not tied to a line (e.g. a clause count mismatch at EOF).
class DimacsError : public std::runtime_error {
public:
  DimacsError(const std::string& what, std::size_t line)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

/// Parses "p cnf n m" followed by m zero-terminated clauses. Comment lines
/// start with 'c'. The clause width is inferred and must be the same for
/// every clause; literal order and repetitions are preserved.
Formula parse_dimacs(std::string_view text);
Formula read_dimacs(std::istream& in);

std::string write_dimacs(const Formula& formula);
void write_dimacs(std::ostream& out, const Formula& formula);

}  // namespace fixsat

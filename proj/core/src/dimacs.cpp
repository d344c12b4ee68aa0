#include "fixsat/dimacs.hpp"

#include <charconv>
#include <istream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

namespace fixsat {
namespace {

class Tokenizer {
public:
  explicit Tokenizer(std::string_view text) : text_(text) {}

  // Skips whitespace and comment lines; returns the next token or nullopt.
  std::optional<std::string_view> next() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
        at_line_start_ = true;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        ++pos_;
      } else if (c == 'c' && at_line_start_) {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
    if (pos_ >= text_.size()) return std::nullopt;
    at_line_start_ = false;
    const std::size_t begin = pos_;
    while (pos_ < text_.size() && text_[pos_] != ' ' && text_[pos_] != '\t' && text_[pos_] != '\n' &&
           text_[pos_] != '\r') {
      ++pos_;
    }
    return text_.substr(begin, pos_ - begin);
  }

  std::size_t line() const { return line_; }

private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  bool at_line_start_ = true;
};

template <typename T>
T parse_number(std::string_view token, const Tokenizer& tok, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw DimacsError("expected " + std::string(what) + ", got '" + std::string(token) + "'", tok.line());
  }
  return value;
}

}  // namespace

Formula parse_dimacs(std::string_view text) {
  Tokenizer tok(text);

  auto p = tok.next();
  if (!p || *p != "p") throw DimacsError("missing 'p cnf' header", p ? tok.line() : 0);
  auto fmt = tok.next();
  if (!fmt || *fmt != "cnf") throw DimacsError("expected 'cnf' after 'p'", tok.line());
  auto n_tok = tok.next();
  if (!n_tok) throw DimacsError("header is missing the variable count", tok.line());
  const auto n = parse_number<std::int64_t>(*n_tok, tok, "variable count");
  auto m_tok = tok.next();
  if (!m_tok) throw DimacsError("header is missing the clause count", tok.line());
  const auto m = parse_number<std::int64_t>(*m_tok, tok, "clause count");
  if (n < 0 || n > INT32_MAX) throw DimacsError("variable count out of range", tok.line());
  if (m < 0 || static_cast<std::uint64_t>(m) >= Formula::kMaxClauses) {
    throw DimacsError("clause count out of range", tok.line());
  }

  std::vector<Lit> literals;
  std::size_t width = 0;
  std::size_t clauses = 0;
  std::size_t current = 0;
  while (auto t = tok.next()) {
    const auto value = parse_number<std::int64_t>(*t, tok, "literal");
    if (value == 0) {
      if (current == 0) throw DimacsError("empty clause", tok.line());
      if (clauses == 0) {
        width = current;
      } else if (current != width) {
        throw DimacsError("non-uniform clause width: clause " + std::to_string(clauses + 1) + " has " +
                              std::to_string(current) + " literals, expected " + std::to_string(width),
                          tok.line());
      }
      ++clauses;
      current = 0;
      continue;
    }
    if (value < -n || value > n) {
      throw DimacsError("literal " + std::to_string(value) + " exceeds the declared " + std::to_string(n) +
                            " variables",
                        tok.line());
    }
    if (clauses >= static_cast<std::size_t>(m)) throw DimacsError("more clauses than declared", tok.line());
    literals.push_back(Lit(static_cast<std::int32_t>(value)));
    ++current;
  }
  if (current != 0) throw DimacsError("last clause is not terminated by 0", tok.line());
  if (clauses != static_cast<std::size_t>(m)) {
    throw DimacsError("header declares " + std::to_string(m) + " clauses, found " + std::to_string(clauses), 0);
  }
  if (width > Formula::kMaxWidth) throw DimacsError("clause width exceeds supported maximum", 0);
  return Formula(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(width), std::move(literals));
}

Formula read_dimacs(std::istream& in) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_dimacs(text);
}

void write_dimacs(std::ostream& out, const Formula& formula) {
  out << "p cnf " << formula.num_vars() << ' ' << formula.num_clauses() << '\n';
  std::string line;
  char buf[16];
  for (std::size_t i = 0; i < formula.num_clauses(); ++i) {
    line.clear();
    for (Lit l : formula.clause(i)) {
      auto [end, ec] = std::to_chars(buf, buf + sizeof buf, l.dimacs());
      line.append(buf, end);
      line.push_back(' ');
    }
    line.append("0\n");
    out << line;
  }
}

std::string write_dimacs(const Formula& formula) {
  std::ostringstream out;
  write_dimacs(out, formula);
  return out.str();
}

}  // namespace fixsat

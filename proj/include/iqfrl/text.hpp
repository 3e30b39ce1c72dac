#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace iqfrl {

/// Error raised by every text-format reader; carries the 1-based position of the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string &message, std::size_t line, std::size_t column, std::string token);

  std::size_t line() const { return _line; }
  std::size_t column() const { return _column; }
  const std::string &token() const { return _token; }

 private:
  std::size_t _line;
  std::size_t _column;
  std::string _token;
};

struct Token {
  std::string_view text;
  std::size_t column = 1;
};

/// Splits a line on whitespace (and commas when requested), keeping 1-based columns.
std::vector<Token> tokenize(std::string_view line, bool commaSeparates = false);

/// Shortest representation that parses back to the same double.
std::string formatDouble(double x);

double parseDouble(const Token &tok, std::size_t line);
long long parseInteger(const Token &tok, std::size_t line);

/// Lines of a document with comments ('#' to end of line) stripped; blank lines are skipped.
struct SourceLine {
  std::size_t number = 0;
  std::string_view text;
};
std::vector<SourceLine> meaningfulLines(std::string_view doc);

/// Sequential access to the meaningful lines of a document with positioned error reporting.
class LineReader {
 public:
  explicit LineReader(std::string_view text, bool commaSeparates = false);

  bool done() const { return _pos >= _lines.size(); }

  /// Tokens of the next line; throws when the document ends early.
  std::vector<Token> next(const char *expecting);

  /// Line number of the most recently consumed line.
  std::size_t line() const { return _line; }

  [[noreturn]] void fail(const std::string &message, const Token &tok) const;
  void expectWord(const std::vector<Token> &toks, std::size_t i, std::string_view word) const;
  const Token &at(const std::vector<Token> &toks, std::size_t i, const char *what) const;
  void expectEnd(const std::vector<Token> &toks, std::size_t n) const;

  double number(const std::vector<Token> &toks, std::size_t i, const char *what) const;
  long long integer(const std::vector<Token> &toks, std::size_t i, const char *what) const;

 private:
  std::vector<SourceLine> _lines;
  bool _commaSeparates;
  std::size_t _pos = 0;
  std::size_t _line = 0;
};

std::string readFile(const std::string &path);
void writeFile(const std::string &path, std::string_view content);

}  // namespace iqfrl

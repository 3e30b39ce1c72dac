#include "iqfrl/text.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

namespace iqfrl {

ParseError::ParseError(const std::string &message, std::size_t line, std::size_t column, std::string token)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message +
                         (token.empty() ? std::string() : " (near '" + token + "')")),
      _line(line),
      _column(column),
      _token(std::move(token)) {}

std::vector<Token> tokenize(std::string_view line, bool commaSeparates) {
  std::vector<Token> out;
  auto isSep = [&](char c) { return c == ' ' || c == '\t' || c == '\r' || (commaSeparates && c == ','); };
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && isSep(line[i])) ++i;
    if (i >= line.size()) break;
    std::size_t start = i;
    while (i < line.size() && !isSep(line[i])) ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

std::string formatDouble(double x) {
  std::array<char, 32> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

double parseDouble(const Token &tok, std::size_t line) {
  double v = 0.0;
  const char *first = tok.text.data();
  const char *last = first + tok.text.size();
  if (!tok.text.empty() && *first == '+') ++first;
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) {
    throw ParseError("expected a number", line, tok.column, std::string(tok.text));
  }
  return v;
}

long long parseInteger(const Token &tok, std::size_t line) {
  long long v = 0;
  const char *first = tok.text.data();
  const char *last = first + tok.text.size();
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) {
    throw ParseError("expected an integer", line, tok.column, std::string(tok.text));
  }
  return v;
}

std::vector<SourceLine> meaningfulLines(std::string_view doc) {
  std::vector<SourceLine> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= doc.size()) {
    std::size_t end = doc.find('\n', pos);
    if (end == std::string_view::npos) end = doc.size();
    ++number;
    std::string_view line = doc.substr(pos, end - pos);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) out.push_back({number, line});
    if (end == doc.size()) break;
    pos = end + 1;
  }
  return out;
}

LineReader::LineReader(std::string_view text, bool commaSeparates)
    : _lines(meaningfulLines(text)), _commaSeparates(commaSeparates) {}

std::vector<Token> LineReader::next(const char *expecting) {
  if (done()) {
    std::size_t line = _lines.empty() ? 1 : _lines.back().number + 1;
    throw ParseError(std::string("unexpected end of document, expected ") + expecting, line, 1, "");
  }
  _line = _lines[_pos].number;
  return tokenize(_lines[_pos++].text, _commaSeparates);
}

void LineReader::fail(const std::string &message, const Token &tok) const {
  throw ParseError(message, _line, tok.column, std::string(tok.text));
}

namespace {

std::size_t columnAfter(const std::vector<Token> &toks) {
  return toks.empty() ? 1 : toks.back().column + toks.back().text.size();
}

}  // namespace

void LineReader::expectWord(const std::vector<Token> &toks, std::size_t i, std::string_view word) const {
  if (i >= toks.size()) throw ParseError("expected '" + std::string(word) + "'", _line, columnAfter(toks), "");
  if (toks[i].text != word) fail("expected '" + std::string(word) + "'", toks[i]);
}

const Token &LineReader::at(const std::vector<Token> &toks, std::size_t i, const char *what) const {
  if (i >= toks.size()) throw ParseError(std::string("expected ") + what, _line, columnAfter(toks), "");
  return toks[i];
}

void LineReader::expectEnd(const std::vector<Token> &toks, std::size_t n) const {
  if (toks.size() > n) fail("unexpected trailing token", toks[n]);
}

double LineReader::number(const std::vector<Token> &toks, std::size_t i, const char *what) const {
  return parseDouble(at(toks, i, what), _line);
}

long long LineReader::integer(const std::vector<Token> &toks, std::size_t i, const char *what) const {
  return parseInteger(at(toks, i, what), _line);
}

std::string readFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void writeFile(const std::string &path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace iqfrl

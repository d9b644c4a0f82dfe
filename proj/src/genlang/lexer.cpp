#include <cctype>
#include <charconv>

#include "dichogen/genlang.hpp"

namespace dichogen::lang {

namespace {

std::string kind_prefix(ParseError::Kind kind) {
  switch (kind) {
    case ParseError::Kind::Lexical: return "lexical error";
    case ParseError::Kind::Syntax: return "syntax error";
    case ParseError::Kind::Arity: return "arity error";
  }
  return "error";
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

ParseError::ParseError(Kind kind, std::size_t offset, const std::string& message)
    : std::runtime_error(kind_prefix(kind) + " at offset " + std::to_string(offset) + ": " +
                         message),
      kind_(kind),
      offset_(offset) {}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
      std::int64_t value = 0;
      const auto [ptr, ec] = std::from_chars(src.data() + start, src.data() + i, value);
      if (ec != std::errc{}) {
        throw ParseError(ParseError::Kind::Lexical, start,
                         "integer literal " + std::string(src.substr(start, i - start)) +
                             " does not fit in 64 bits");
      }
      tokens.push_back({TokenKind::Int, std::string(src.substr(start, i - start)), start});
      continue;
    }
    if (is_ident_start(c)) {
      while (i < src.size() && is_ident_char(src[i])) ++i;
      tokens.push_back({TokenKind::Ident, std::string(src.substr(start, i - start)), start});
      continue;
    }
    switch (c) {
      case '(': tokens.push_back({TokenKind::LParen, "(", start}); ++i; continue;
      case ')': tokens.push_back({TokenKind::RParen, ")", start}); ++i; continue;
      case '[': tokens.push_back({TokenKind::LBracket, "[", start}); ++i; continue;
      case ']': tokens.push_back({TokenKind::RBracket, "]", start}); ++i; continue;
      case ',': tokens.push_back({TokenKind::Comma, ",", start}); ++i; continue;
      case '+': case '-': case '*': case '\\': case '^': case '%':
        tokens.push_back({TokenKind::Op, std::string(1, c), start});
        ++i;
        continue;
      default: break;
    }
    const bool has_eq = i + 1 < src.size() && src[i + 1] == '=';
    if (c == '<' || c == '>') {
      tokens.push_back({TokenKind::Op, has_eq ? std::string{c, '='} : std::string(1, c), start});
      i += has_eq ? 2 : 1;
      continue;
    }
    if ((c == '=' || c == '!') && has_eq) {
      tokens.push_back({TokenKind::Op, std::string{c, '='}, start});
      i += 2;
      continue;
    }
    throw ParseError(ParseError::Kind::Lexical, start,
                     std::string("unexpected character '") + c + "'");
  }
  return tokens;
}

}  // namespace dichogen::lang

#pragma once

// The generator-definition language: integer expressions in x and y.
//
//   expr    := sum { "%" sum }
//   sum     := prod { ("+"|"-") prod }
//   prod    := unary { ("*"|"\") unary }        "\" is floor division
//   unary   := "-" unary | power
//   power   := atom [ "^" INT ]
//   atom    := INT | "x" | "y" | "(" expr ")"
//            | "abs" "(" expr ")" | "gcd" "(" expr "," expr ")"
//            | "altsum" "(" expr ")" | "fdiv" "(" expr "," expr ")"
//            | "if" "(" cond "," expr "," expr ")" | "A" "[" expr "," expr "]"
//   cond    := expr cmpop expr                  cmpop: == != < <= > >=
//
// All arithmetic is exact on 64-bit integers; overflow is an evaluation error.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dichogen/genkernel.hpp"

namespace dichogen::lang {

enum class TokenKind { Int, Ident, Op, LParen, RParen, Comma, LBracket, RBracket };

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t pos;  // character offset into the source

  friend bool operator==(const Token&, const Token&) = default;
};

class ParseError : public std::runtime_error {
 public:
  enum class Kind { Lexical, Syntax, Arity };

  ParseError(Kind kind, std::size_t offset, const std::string& message);

  Kind kind() const { return kind_; }
  std::size_t offset() const { return offset_; }

 private:
  Kind kind_;
  std::size_t offset_;
};

std::vector<Token> tokenize(std::string_view src);

enum class NodeKind {
  Const, VarX, VarY, Neg, Add, Sub, Mul, Pow, Mod, FloorDiv,
  Abs, Gcd, AltSum, MatIndex, If, Cmp,
};

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

/// Expression tree. Const and Pow keep their integer in `literal`; Cmp keeps
/// its operator in `cmp`. If has children (Cmp, then, else).
struct Ast {
  NodeKind kind = NodeKind::Const;
  std::vector<Ast> children;
  std::int64_t literal = 0;
  CmpOp cmp = CmpOp::Eq;

  friend bool operator==(const Ast&, const Ast&) = default;
};

Ast parse(std::string_view src);

/// Compact constructor notation, e.g. "Mod(Add(Add(x,y),1),7)".
std::string to_string(const Ast& ast);

bool uses_matrix(const Ast& ast);

using Matrix = std::vector<std::vector<Value>>;

/// Runtime failure while evaluating f(x, y).
class EvalError : public std::runtime_error {
 public:
  EvalError(Value x, Value y, const std::string& message);

  Value x() const { return x_; }
  Value y() const { return y_; }

 private:
  Value x_;
  Value y_;
};

/// Mod returns the residue in [0, |m|); fdiv floors the exact quotient; the
/// matrix is indexed 1-based as A[row, column].
Value eval_ast(const Ast& ast, Value x, Value y, const Matrix* matrix = nullptr);

/// d1 - d2 + d3 - ... over the decimal digits of |n|, most significant first.
Value altsum(Value n);

/// A generator definition as written by a user or taken from the registry.
struct SpecConfig {
  std::string expr;
  Value a = 0;
  Value b = 0;
  std::optional<Value> modulus;               // alphabet {0, ..., m - 1}
  std::optional<std::vector<Value>> alphabet;  // explicit alphabet, overrides modulus
  std::optional<Matrix> matrix;

  friend bool operator==(const SpecConfig&, const SpecConfig&) = default;
};

/// Malformed or invalid spec document.
class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Declared alphabet plus the seeds, sorted; nullopt when none is declared.
std::optional<std::vector<Value>> effective_alphabet(const SpecConfig& config);

/// Parses the expression and checks the matrix; throws ParseError or SpecError.
void validate(const SpecConfig& config);

/// Parses and validates, then wraps the expression as a generator.
GeneratorSpec compile(const SpecConfig& config);

struct BuiltinInfo {
  std::string name;
  std::string formula;  // as printed for humans
  SpecConfig config;
};

const std::vector<BuiltinInfo>& builtin_registry();

/// Throws SpecError listing the available keys for an unknown name.
SpecConfig builtin(std::string_view name);

/// Reads either a JSON object or "key = value" lines. A text document whose
/// first entry has no key is taken as the expression.
SpecConfig parse_spec_document(std::string_view text);

/// Reads and validates a spec file; throws SpecError or ParseError.
SpecConfig load_spec(const std::filesystem::path& path);

std::string to_json(const SpecConfig& config);

}  // namespace dichogen::lang

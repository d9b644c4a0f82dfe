#include <charconv>

#include "dichogen/genlang.hpp"

namespace dichogen::lang {

namespace {

Ast make(NodeKind kind, std::vector<Ast> children = {}) {
  Ast node;
  node.kind = kind;
  node.children = std::move(children);
  return node;
}

Ast make_const(std::int64_t value) {
  Ast node;
  node.kind = NodeKind::Const;
  node.literal = value;
  return node;
}

class Parser {
 public:
  Parser(std::string_view src) : tokens_(tokenize(src)), end_(src.size()) {}

  Ast parse_all() {
    Ast result = expr();
    if (!at_end()) syntax_error(peek().pos, "unexpected '" + peek().text + "'");
    return result;
  }

 private:
  bool at_end() const { return next_ >= tokens_.size(); }
  const Token& peek() const { return tokens_[next_]; }
  std::size_t here() const { return at_end() ? end_ : peek().pos; }

  bool peek_op(std::string_view op) const {
    return !at_end() && peek().kind == TokenKind::Op && peek().text == op;
  }
  bool peek_kind(TokenKind kind) const { return !at_end() && peek().kind == kind; }

  [[noreturn]] void syntax_error(std::size_t pos, const std::string& message) const {
    throw ParseError(ParseError::Kind::Syntax, pos, message);
  }

  const Token& expect(TokenKind kind, std::string_view what) {
    if (!peek_kind(kind)) {
      syntax_error(here(), "expected " + std::string(what) +
                               (at_end() ? " but input ended" : " before '" + peek().text + "'"));
    }
    return tokens_[next_++];
  }

  Ast expr() {
    Ast lhs = sum();
    while (peek_op("%")) {
      ++next_;
      lhs = make(NodeKind::Mod, {std::move(lhs), sum()});
    }
    return lhs;
  }

  Ast sum() {
    Ast lhs = prod();
    while (peek_op("+") || peek_op("-")) {
      const NodeKind kind = peek().text == "+" ? NodeKind::Add : NodeKind::Sub;
      ++next_;
      lhs = make(kind, {std::move(lhs), prod()});
    }
    return lhs;
  }

  Ast prod() {
    Ast lhs = unary();
    while (peek_op("*") || peek_op("\\")) {
      const NodeKind kind = peek().text == "*" ? NodeKind::Mul : NodeKind::FloorDiv;
      ++next_;
      lhs = make(kind, {std::move(lhs), unary()});
    }
    return lhs;
  }

  Ast unary() {
    if (peek_op("-")) {
      ++next_;
      return make(NodeKind::Neg, {unary()});
    }
    return power();
  }

  Ast power() {
    Ast base = atom();
    if (!peek_op("^")) return base;
    ++next_;
    const Token& exponent = expect(TokenKind::Int, "a nonnegative integer exponent");
    Ast node = make(NodeKind::Pow, {std::move(base), make_const(to_int(exponent))});
    node.literal = node.children[1].literal;
    return node;
  }

  static std::int64_t to_int(const Token& token) {
    std::int64_t value = 0;
    std::from_chars(token.text.data(), token.text.data() + token.text.size(), value);
    return value;
  }

  Ast atom() {
    if (at_end()) syntax_error(end_, "expected an operand but input ended");
    const Token& token = peek();
    switch (token.kind) {
      case TokenKind::Int:
        ++next_;
        return make_const(to_int(token));
      case TokenKind::LParen: {
        ++next_;
        Ast inner = expr();
        expect(TokenKind::RParen, "')'");
        return inner;
      }
      case TokenKind::Ident:
        return identifier();
      default:
        syntax_error(token.pos, "unexpected '" + token.text + "'");
    }
  }

  Ast identifier() {
    const Token name = tokens_[next_++];
    if (name.text == "x") return make(NodeKind::VarX);
    if (name.text == "y") return make(NodeKind::VarY);
    if (name.text == "A") {
      expect(TokenKind::LBracket, "'[' after A");
      std::vector<Ast> args = arguments(TokenKind::RBracket, "']'", false);
      check_arity(name, args, 2);
      return make(NodeKind::MatIndex, std::move(args));
    }
    struct Function {
      std::string_view name;
      NodeKind kind;
      std::size_t arity;
    };
    static constexpr Function functions[] = {
        {"abs", NodeKind::Abs, 1},           {"gcd", NodeKind::Gcd, 2},
        {"altsum", NodeKind::AltSum, 1},     {"fdiv", NodeKind::FloorDiv, 2},
        {"if", NodeKind::If, 3},
    };
    for (const Function& fn : functions) {
      if (name.text != fn.name) continue;
      expect(TokenKind::LParen, "'(' after " + name.text);
      std::vector<Ast> args = arguments(TokenKind::RParen, "')'", fn.kind == NodeKind::If);
      check_arity(name, args, fn.arity);
      return make(fn.kind, std::move(args));
    }
    syntax_error(name.pos, "unknown identifier '" + name.text + "'");
  }

  // Comma-separated arguments up to the closing token. For `if` the first
  // argument is a comparison.
  std::vector<Ast> arguments(TokenKind close, std::string_view close_text, bool first_is_cond) {
    std::vector<Ast> args;
    args.push_back(first_is_cond ? condition() : expr());
    while (peek_kind(TokenKind::Comma)) {
      ++next_;
      args.push_back(expr());
    }
    expect(close, "',' or " + std::string(close_text));
    return args;
  }

  void check_arity(const Token& name, const std::vector<Ast>& args, std::size_t arity) const {
    if (args.size() == arity) return;
    throw ParseError(ParseError::Kind::Arity, name.pos,
                     name.text + " expects " + std::to_string(arity) + " argument" +
                         (arity == 1 ? "" : "s") + ", got " + std::to_string(args.size()));
  }

  Ast condition() {
    Ast lhs = expr();
    struct Comparison {
      std::string_view text;
      CmpOp op;
    };
    static constexpr Comparison comparisons[] = {
        {"==", CmpOp::Eq}, {"!=", CmpOp::Ne}, {"<", CmpOp::Lt},
        {"<=", CmpOp::Le}, {">", CmpOp::Gt},  {">=", CmpOp::Ge},
    };
    for (const Comparison& c : comparisons) {
      if (!peek_op(c.text)) continue;
      ++next_;
      Ast node = make(NodeKind::Cmp, {std::move(lhs), expr()});
      node.cmp = c.op;
      return node;
    }
    syntax_error(here(), "expected a comparison operator in the if condition");
  }

  std::vector<Token> tokens_;
  std::size_t end_;
  std::size_t next_ = 0;
};

const char* kind_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::Const: return "Const";
    case NodeKind::VarX: return "x";
    case NodeKind::VarY: return "y";
    case NodeKind::Neg: return "Neg";
    case NodeKind::Add: return "Add";
    case NodeKind::Sub: return "Sub";
    case NodeKind::Mul: return "Mul";
    case NodeKind::Pow: return "Pow";
    case NodeKind::Mod: return "Mod";
    case NodeKind::FloorDiv: return "FloorDiv";
    case NodeKind::Abs: return "Abs";
    case NodeKind::Gcd: return "Gcd";
    case NodeKind::AltSum: return "AltSum";
    case NodeKind::MatIndex: return "MatIndex";
    case NodeKind::If: return "If";
    case NodeKind::Cmp: return "Cmp";
  }
  return "?";
}

const char* cmp_text(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return "==";
    case CmpOp::Ne: return "!=";
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
  }
  return "?";
}

}  // namespace

Ast parse(std::string_view src) { return Parser(src).parse_all(); }

std::string to_string(const Ast& ast) {
  switch (ast.kind) {
    case NodeKind::Const: return std::to_string(ast.literal);
    case NodeKind::VarX: return "x";
    case NodeKind::VarY: return "y";
    default: break;
  }
  std::string out = kind_name(ast.kind);
  if (ast.kind == NodeKind::Cmp) out += std::string("[") + cmp_text(ast.cmp) + "]";
  out += '(';
  for (std::size_t i = 0; i < ast.children.size(); ++i) {
    if (i) out += ',';
    out += to_string(ast.children[i]);
  }
  out += ')';
  return out;
}

bool uses_matrix(const Ast& ast) {
  if (ast.kind == NodeKind::MatIndex) return true;
  for (const Ast& child : ast.children) {
    if (uses_matrix(child)) return true;
  }
  return false;
}

}  // namespace dichogen::lang

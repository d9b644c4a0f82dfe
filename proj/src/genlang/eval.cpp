#include <limits>
#include <numeric>

#include "dichogen/genlang.hpp"

namespace dichogen::lang {

EvalError::EvalError(Value x, Value y, const std::string& message)
    : std::runtime_error("evaluation error at (x=" + std::to_string(x) +
                         ", y=" + std::to_string(y) + "): " + message),
      x_(x),
      y_(y) {}

Value altsum(Value n) {
  // Magnitude as unsigned so that INT64_MIN is handled.
  std::uint64_t magnitude = n < 0 ? 0 - static_cast<std::uint64_t>(n) : static_cast<std::uint64_t>(n);
  std::vector<int> digits;
  do {
    digits.push_back(static_cast<int>(magnitude % 10));
    magnitude /= 10;
  } while (magnitude > 0);
  Value sum = 0;
  int sign = 1;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it, sign = -sign) sum += sign * *it;
  return sum;
}

namespace {

class Evaluator {
 public:
  Evaluator(Value x, Value y, const Matrix* matrix) : x_(x), y_(y), matrix_(matrix) {}

  Value operator()(const Ast& node) const {
    const auto& c = node.children;
    switch (node.kind) {
      case NodeKind::Const: return node.literal;
      case NodeKind::VarX: return x_;
      case NodeKind::VarY: return y_;
      case NodeKind::Neg: return checked_sub(0, (*this)(c[0]));
      case NodeKind::Add: return checked_add((*this)(c[0]), (*this)(c[1]));
      case NodeKind::Sub: return checked_sub((*this)(c[0]), (*this)(c[1]));
      case NodeKind::Mul: return checked_mul((*this)(c[0]), (*this)(c[1]));
      case NodeKind::Pow: return power((*this)(c[0]), c[1].literal);
      case NodeKind::Mod: return modulo((*this)(c[0]), (*this)(c[1]));
      case NodeKind::FloorDiv: return floor_div((*this)(c[0]), (*this)(c[1]));
      case NodeKind::Abs: {
        const Value v = (*this)(c[0]);
        return v < 0 ? checked_sub(0, v) : v;
      }
      case NodeKind::Gcd: return gcd((*this)(c[0]), (*this)(c[1]));
      case NodeKind::AltSum: return altsum((*this)(c[0]));
      case NodeKind::MatIndex: return lookup((*this)(c[0]), (*this)(c[1]));
      case NodeKind::If: return truth(c[0]) ? (*this)(c[1]) : (*this)(c[2]);
      case NodeKind::Cmp: return truth(node) ? 1 : 0;
    }
    fail("unknown node");
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw EvalError(x_, y_, message); }

  bool truth(const Ast& cmp) const {
    const Value lhs = (*this)(cmp.children[0]);
    const Value rhs = (*this)(cmp.children[1]);
    switch (cmp.cmp) {
      case CmpOp::Eq: return lhs == rhs;
      case CmpOp::Ne: return lhs != rhs;
      case CmpOp::Lt: return lhs < rhs;
      case CmpOp::Le: return lhs <= rhs;
      case CmpOp::Gt: return lhs > rhs;
      case CmpOp::Ge: return lhs >= rhs;
    }
    return false;
  }

  Value checked_add(Value p, Value q) const {
    Value r;
    if (__builtin_add_overflow(p, q, &r)) fail("integer overflow in addition");
    return r;
  }
  Value checked_sub(Value p, Value q) const {
    Value r;
    if (__builtin_sub_overflow(p, q, &r)) fail("integer overflow in subtraction");
    return r;
  }
  Value checked_mul(Value p, Value q) const {
    Value r;
    if (__builtin_mul_overflow(p, q, &r)) fail("integer overflow in multiplication");
    return r;
  }

  Value power(Value base, std::int64_t exponent) const {
    Value result = 1;
    while (exponent > 0) {
      if (exponent & 1) result = checked_mul(result, base);
      exponent >>= 1;
      if (exponent > 0) base = checked_mul(base, base);
    }
    return result;
  }

  Value modulo(Value p, Value m) const {
    if (m == 0) fail("modulo by zero");
    if (m == 1 || m == -1) return 0;
    Value r = p % m;
    if (r < 0) r = m < 0 ? r - m : r + m;
    return r;
  }

  Value floor_div(Value p, Value q) const {
    if (q == 0) fail("division by zero");
    if (p == std::numeric_limits<Value>::min() && q == -1) fail("integer overflow in division");
    Value d = p / q;
    if (p % q != 0 && ((p < 0) != (q < 0))) --d;
    return d;
  }

  Value gcd(Value p, Value q) const {
    const auto magnitude = [](Value v) {
      return v < 0 ? 0 - static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v);
    };
    const std::uint64_t g = std::gcd(magnitude(p), magnitude(q));
    if (g > static_cast<std::uint64_t>(std::numeric_limits<Value>::max())) {
      fail("integer overflow in gcd");
    }
    return static_cast<Value>(g);
  }

  Value lookup(Value row, Value column) const {
    if (!matrix_) fail("A[x,y] used without a matrix");
    const auto rows = static_cast<Value>(matrix_->size());
    if (row < 1 || row > rows) {
      fail("matrix row " + std::to_string(row) + " outside 1.." + std::to_string(rows));
    }
    const auto& r = (*matrix_)[static_cast<std::size_t>(row - 1)];
    const auto columns = static_cast<Value>(r.size());
    if (column < 1 || column > columns) {
      fail("matrix column " + std::to_string(column) + " outside 1.." + std::to_string(columns));
    }
    return r[static_cast<std::size_t>(column - 1)];
  }

  Value x_;
  Value y_;
  const Matrix* matrix_;
};

}  // namespace

Value eval_ast(const Ast& ast, Value x, Value y, const Matrix* matrix) {
  return Evaluator(x, y, matrix)(ast);
}

}  // namespace dichogen::lang

#pragma once

// Exact arithmetic on the natural binary tree: levels, abscissas, the binary
// evolution scheme and the inorder supports of a node.
//
// Nodes are labeled breadth first by 1, 2, 3, ...; the two artificial
// endpoints 0 and 1/2 live one level above the root. Everything in this header
// is exact integer arithmetic on arbitrary-precision integers.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace dichogen {

using BigInt = boost::multiprecision::cpp_int;

/// Extended natural index: one of the endpoints 0 and 1/2, or a tree node n >= 1.
class ExtNat {
 public:
  enum class Tag { Zero, Half, Node };

  static ExtNat zero() { return ExtNat(Tag::Zero, 0); }
  static ExtNat half() { return ExtNat(Tag::Half, 0); }
  /// Throws std::domain_error for n < 1.
  static ExtNat node(BigInt n);

  Tag tag() const { return tag_; }
  bool is_zero() const { return tag_ == Tag::Zero; }
  bool is_half() const { return tag_ == Tag::Half; }
  bool is_node() const { return tag_ == Tag::Node; }
  /// Node label; throws std::logic_error on an endpoint.
  const BigInt& value() const;

  /// Twice the numeric value (0 -> 0, 1/2 -> 1, n -> 2n), for exact comparison.
  BigInt doubled() const;

  std::string to_string() const;

  friend bool operator==(const ExtNat&, const ExtNat&) = default;

 private:
  ExtNat(Tag tag, BigInt value) : tag_(tag), value_(std::move(value)) {}

  Tag tag_;
  BigInt value_;
};

std::ostream& operator<<(std::ostream& os, const ExtNat& n);

/// Exact dyadic rational num / 2^exp in [0, 1], kept in lowest terms.
class Dyadic {
 public:
  /// Reduces to canonical form. Throws std::domain_error outside [0, 1].
  Dyadic(BigInt num, std::uint64_t exp);

  const BigInt& num() const { return num_; }
  std::uint64_t exp() const { return exp_; }

  friend bool operator==(const Dyadic&, const Dyadic&) = default;
  friend bool operator<(const Dyadic& lhs, const Dyadic& rhs);

  std::string to_string() const;

 private:
  BigInt num_;
  std::uint64_t exp_;
};

/// 2-adic valuation. The valuation of 0 is infinite (|0|_2 = 0); it is a
/// distinct state, never encoded as a large exponent.
class Valuation {
 public:
  static Valuation infinite() { return Valuation(); }
  static Valuation finite(std::uint64_t m) { return Valuation(m); }

  bool is_infinite() const { return !exponent_.has_value(); }
  /// Throws std::logic_error when infinite.
  std::uint64_t exponent() const;

  friend bool operator==(const Valuation&, const Valuation&) = default;

 private:
  Valuation() = default;
  explicit Valuation(std::uint64_t m) : exponent_(m) {}
  std::optional<std::uint64_t> exponent_;
};

struct OddPart {
  BigInt odd;
  Valuation valuation;
};

/// n = odd * 2^valuation; for n = 0 returns odd = 1 and an infinite valuation.
OddPart odd_and_val(const BigInt& n);

/// k with 2^k <= n < 2^(k+1). Throws std::domain_error for n < 1.
std::uint64_t level(const BigInt& n);

Dyadic abscissa(const ExtNat& n);
ExtNat abscissa_inv(const Dyadic& d);

/// Entry i of the evolution scheme row k, with i = 0 and i = 2^(k+1) naming the
/// endpoints. Throws std::out_of_range for i outside [0, 2^(k+1)].
ExtNat escheme_entry(std::uint64_t k, const BigInt& i);

ExtNat left_support(const BigInt& n);
ExtNat right_support(const BigInt& n);

/// (b1, a1, b2, a2, ..., bm, am, b(m+1)). Throws std::invalid_argument unless
/// |b| == |a| + 1.
template <class T>
std::vector<T> interleave(const std::vector<T>& a, const std::vector<T>& b);

/// Level k of the tree in natural order; k = -1 gives (0, 1/2).
std::vector<ExtNat> level_row(std::int64_t k);

/// The evolution scheme row E(*, k) built by repeated interleaving; k = -1
/// gives the empty word.
std::vector<ExtNat> escheme_row(std::int64_t k);

/// The same row computed entry by entry from the closed formula.
std::vector<ExtNat> escheme_row_by_formula(std::int64_t k);

/// Inorder comparison: A(n) < A(m).
bool inorder_less(const ExtNat& n, const ExtNat& m);

/// 1-based position of n inside E(*, h). Throws std::domain_error when
/// level(n) > h.
BigInt position_in_row(const BigInt& n, std::uint64_t h);

std::uint64_t hamming_weight(const BigInt& n);

/// First `count` terms of E(*,0) E(*,1) E(*,2) ... (OEIS A131987).
std::vector<BigInt> scheme_concat(std::size_t count);

/// First `count` terms of u with u(2n) = n, u(2n+1) = u(n) (OEIS A025480).
std::vector<BigInt> zero_joined_scheme(std::size_t count);

// -- template definitions ---------------------------------------------------

template <class T>
std::vector<T> interleave(const std::vector<T>& a, const std::vector<T>& b) {
  if (b.size() != a.size() + 1) {
    throw std::invalid_argument("interleave: expected |b| = |a| + 1, got |a| = " +
                                std::to_string(a.size()) +
                                ", |b| = " + std::to_string(b.size()));
  }
  std::vector<T> out;
  out.reserve(a.size() + b.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    out.push_back(b[j]);
    out.push_back(a[j]);
  }
  out.push_back(b.back());
  return out;
}

}  // namespace dichogen

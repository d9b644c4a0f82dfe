#include "dichogen/numtree.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace dichogen {

namespace {

BigInt pow2(std::uint64_t k) {
  BigInt p = 1;
  p <<= k;
  return p;
}

bool is_power_of_two(const BigInt& n) {
  return n > 0 && boost::multiprecision::lsb(n) == boost::multiprecision::msb(n);
}

}  // namespace

ExtNat ExtNat::node(BigInt n) {
  if (n < 1) {
    throw std::domain_error("ExtNat::node: tree nodes are labeled from 1, got " +
                            n.str());
  }
  return ExtNat(Tag::Node, std::move(n));
}

const BigInt& ExtNat::value() const {
  if (tag_ != Tag::Node) throw std::logic_error("ExtNat::value on an endpoint");
  return value_;
}

BigInt ExtNat::doubled() const {
  switch (tag_) {
    case Tag::Zero: return 0;
    case Tag::Half: return 1;
    case Tag::Node: return value_ * 2;
  }
  return 0;
}

std::string ExtNat::to_string() const {
  switch (tag_) {
    case Tag::Zero: return "0";
    case Tag::Half: return "1/2";
    case Tag::Node: return value_.str();
  }
  return {};
}

std::ostream& operator<<(std::ostream& os, const ExtNat& n) {
  return os << n.to_string();
}

Dyadic::Dyadic(BigInt num, std::uint64_t exp) : num_(std::move(num)), exp_(exp) {
  if (num_ < 0 || num_ > pow2(exp_)) {
    throw std::domain_error("Dyadic: " + num_.str() + "/2^" + std::to_string(exp_) +
                            " is outside [0, 1]");
  }
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  const std::uint64_t twos = std::min<std::uint64_t>(boost::multiprecision::lsb(num_), exp_);
  num_ >>= twos;
  exp_ -= twos;
}

bool operator<(const Dyadic& lhs, const Dyadic& rhs) {
  return (lhs.num_ << rhs.exp_) < (rhs.num_ << lhs.exp_);
}

std::string Dyadic::to_string() const {
  if (exp_ == 0) return num_.str();
  return num_.str() + "/" + pow2(exp_).str();
}

std::uint64_t Valuation::exponent() const {
  if (!exponent_) throw std::logic_error("Valuation::exponent: valuation of 0 is infinite");
  return *exponent_;
}

OddPart odd_and_val(const BigInt& n) {
  if (n < 0) throw std::domain_error("odd_and_val: negative argument");
  if (n == 0) return {1, Valuation::infinite()};
  const std::uint64_t m = boost::multiprecision::lsb(n);
  return {n >> m, Valuation::finite(m)};
}

std::uint64_t level(const BigInt& n) {
  if (n < 1) {
    throw std::domain_error("level: defined for n >= 1 (the endpoints sit at level -1), got " +
                            n.str());
  }
  return boost::multiprecision::msb(n);
}

Dyadic abscissa(const ExtNat& n) {
  switch (n.tag()) {
    case ExtNat::Tag::Zero: return Dyadic(0, 0);
    case ExtNat::Tag::Half: return Dyadic(1, 0);
    case ExtNat::Tag::Node: break;
  }
  const std::uint64_t k = level(n.value());
  const BigInt j = n.value() - pow2(k);
  return Dyadic(2 * j + 1, k + 1);
}

ExtNat abscissa_inv(const Dyadic& d) {
  // A^-1(a / 2^k) = 2^(k-1) |a|_2 + (odd(a) - 1) / 2
  const BigInt& a = d.num();
  const std::uint64_t k = d.exp();
  if (a == 0) return ExtNat::zero();
  if (a == pow2(k)) return ExtNat::half();
  const OddPart op = odd_and_val(a);
  const std::uint64_t m = op.valuation.exponent();  // m < k since 0 < a < 2^k
  return ExtNat::node(pow2(k - 1 - m) + (op.odd - 1) / 2);
}

ExtNat escheme_entry(std::uint64_t k, const BigInt& i) {
  const BigInt end = pow2(k + 1);
  if (i < 0 || i > end) {
    throw std::out_of_range("escheme_entry: index " + i.str() + " outside [0, " + end.str() +
                            "] for level " + std::to_string(k));
  }
  if (i == 0) return ExtNat::zero();
  if (i == end) return ExtNat::half();
  // E(*, k, i) = 2^k |i|_2 + (odd(i) - 1) / 2, with 2^k |i|_2 = 2^(k - m)
  const OddPart op = odd_and_val(i);
  return ExtNat::node(pow2(k - op.valuation.exponent()) + (op.odd - 1) / 2);
}

ExtNat left_support(const BigInt& n) {
  if (n < 1) throw std::domain_error("left_support: n must be >= 1");
  const BigInt ls = (odd_and_val(n).odd - 1) / 2;
  return ls == 0 ? ExtNat::zero() : ExtNat::node(ls);
}

ExtNat right_support(const BigInt& n) {
  if (n < 1) throw std::domain_error("right_support: n must be >= 1");
  const BigInt next = n + 1;
  if (is_power_of_two(next)) return ExtNat::half();
  return left_support(next);
}

std::vector<ExtNat> level_row(std::int64_t k) {
  if (k < -1) throw std::domain_error("level_row: level must be >= -1");
  if (k == -1) return {ExtNat::zero(), ExtNat::half()};
  std::vector<ExtNat> row;
  row.reserve(std::size_t{1} << k);
  const BigInt first = pow2(static_cast<std::uint64_t>(k));
  for (BigInt n = first; n < 2 * first; ++n) row.push_back(ExtNat::node(n));
  return row;
}

std::vector<ExtNat> escheme_row(std::int64_t k) {
  if (k < -1) throw std::domain_error("escheme_row: level must be >= -1");
  std::vector<ExtNat> row;
  for (std::int64_t level = 0; level <= k; ++level) row = interleave(row, level_row(level));
  return row;
}

std::vector<ExtNat> escheme_row_by_formula(std::int64_t k) {
  if (k < -1) throw std::domain_error("escheme_row_by_formula: level must be >= -1");
  std::vector<ExtNat> row;
  if (k == -1) return row;
  const auto uk = static_cast<std::uint64_t>(k);
  const BigInt end = pow2(uk + 1);
  row.reserve((std::size_t{1} << (uk + 1)) - 1);
  for (BigInt i = 1; i < end; ++i) row.push_back(escheme_entry(uk, i));
  return row;
}

bool inorder_less(const ExtNat& n, const ExtNat& m) { return abscissa(n) < abscissa(m); }

BigInt position_in_row(const BigInt& n, std::uint64_t h) {
  const std::uint64_t k = level(n);
  if (k > h) {
    throw std::domain_error("position_in_row: " + n.str() + " sits on level " +
                            std::to_string(k) + " > " + std::to_string(h));
  }
  const BigInt j = n - pow2(k);
  return (2 * j + 1) << (h - k);
}

std::uint64_t hamming_weight(const BigInt& n) {
  if (n < 0) throw std::domain_error("hamming_weight: negative argument");
  const auto& backend = n.backend();
  std::uint64_t weight = 0;
  for (std::size_t i = 0; i < backend.size(); ++i) {
    weight += static_cast<std::uint64_t>(std::popcount(backend.limbs()[i]));
  }
  return weight;
}

std::vector<BigInt> scheme_concat(std::size_t count) {
  std::vector<BigInt> out;
  out.reserve(count);
  for (std::uint64_t k = 0; out.size() < count; ++k) {
    const BigInt end = pow2(k + 1);
    for (BigInt i = 1; i < end && out.size() < count; ++i) {
      out.push_back(escheme_entry(k, i).value());
    }
  }
  return out;
}

std::vector<BigInt> zero_joined_scheme(std::size_t count) {
  std::vector<BigInt> u;
  u.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (i % 2 == 0) {
      u.emplace_back(i / 2);
    } else {
      u.push_back(u[(i - 1) / 2]);
    }
  }
  return u;
}

}  // namespace dichogen

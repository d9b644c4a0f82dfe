#pragma once

// Dichotomic generators: a binary operation f on an alphabet plus two seeds
// a, b. The seeds sit at the endpoints of [0, 1]; every dyadic midpoint is
// filled with f(left neighbor, right neighbor).

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dichogen/numtree.hpp"

namespace dichogen {

using Value = std::int64_t;
using Word = std::vector<Value>;

struct BinaryOp {
  std::function<Value(Value, Value)> eval;
  /// Finite alphabet, when known. Needed for the exhaustive certificates.
  std::optional<std::vector<Value>> alphabet;

  Value operator()(Value x, Value y) const { return eval(x, y); }
};

struct GeneratorSpec {
  BinaryOp op;
  Value a = 0;
  Value b = 0;
};

/// One-sided generator: f(x, y) = phi(x).
struct OneSidedSpec {
  std::function<Value(Value)> phi;
  Value a = 0;
};

/// Memoized evaluation of g = f_ab over the extended naturals:
/// g(0) = a, g(1/2) = b, g(n) = f(g(Ls(n)), g(Rs(n))).
///
/// The cache is keyed by node label and owned by the evaluator, so one
/// instance per thread of work.
template <class T>
class BasicEvaluator {
 public:
  using Op = std::function<T(const T&, const T&)>;

  BasicEvaluator(Op op, T a, T b) : op_(std::move(op)), a_(std::move(a)), b_(std::move(b)) {}

  const T& operator()(const ExtNat& n) {
    if (n.is_zero()) return a_;
    if (n.is_half()) return b_;
    return node(n.value());
  }

  std::size_t cache_size() const { return memo_.size(); }

 private:
  const T& node(const BigInt& n) {
    if (auto it = memo_.find(n); it != memo_.end()) return it->second;
    // Supports lie on strictly lower levels, so the recursion depth is at most
    // level(n) + 1.
    const T& left = (*this)(left_support(n));
    const T& right = (*this)(right_support(n));
    return memo_.emplace(n, op_(left, right)).first->second;
  }

  Op op_;
  T a_;
  T b_;
  std::map<BigInt, T> memo_;
};

/// Evaluation session for an integer generator.
class EvalSession {
 public:
  explicit EvalSession(const GeneratorSpec& spec);

  Value eval(const ExtNat& n) { return evaluator_(n); }
  /// E(g, infinity, n) = E(g, level(n), n).
  Value einf(const BigInt& n);

  std::size_t cache_size() const { return evaluator_.cache_size(); }

 private:
  BasicEvaluator<Value> evaluator_;
};

Value eval_g(const GeneratorSpec& spec, const ExtNat& n);

/// E(f_ab, k): 2^(k+1) - 1 values; empty for k = -1.
Word row(const GeneratorSpec& spec, std::int64_t k);

/// a . E(f_ab, k) . b
Word extended_row(const GeneratorSpec& spec, std::int64_t k);

/// Value at index n of the dichotomic fill of [lo, hi] seeded with a at lo and
/// b at hi, obtained by bisection without touching any other index.
/// `evaluations`, when given, is incremented once per call to `op`.
Value dicho_access_interval(const BinaryOp& op, const BigInt& lo, const BigInt& hi, Value a,
                            Value b, const BigInt& n, std::uint64_t* evaluations = nullptr);

/// extended_row(spec, k)[i] for i in [0, 2^(k+1)], using at most k + 1
/// evaluations of f. Throws std::out_of_range for i outside that range.
Value dicho_access(const GeneratorSpec& spec, std::uint64_t k, const BigInt& i,
                   std::uint64_t* evaluations = nullptr);

Value einf(const GeneratorSpec& spec, const BigInt& n);

/// Sorts S in inorder and maps g over it. Throws std::invalid_argument on an
/// empty set.
Word evolution_on_set(const GeneratorSpec& spec, const std::set<BigInt>& nodes);

// -- continuativity ---------------------------------------------------------

enum class Certificate { FixedPoint, OneSided, Absorption, EmpiricalOnly, NotContinuative };

enum class AbsorptionCheck {
  NotNeeded,      // an earlier certificate already applied
  Holds,
  Fails,
  CannotCertify,  // no declared alphabet, or f is not closed over it
};

/// First level whose row does not continue the previous one.
struct PrefixViolation {
  std::int64_t level = 0;   // row(level) does not start with row(level - 1)
  std::size_t index = 0;    // 1-based position of the first mismatch
};

struct ContinuativityReport {
  Certificate certificate = Certificate::EmpiricalOnly;
  std::optional<PrefixViolation> witness;
  std::int64_t checked_level = 0;
  AbsorptionCheck absorption = AbsorptionCheck::NotNeeded;
  /// Extended rows a.E(g,k).b are prefix nested iff f(a, b) = b.
  bool extended_continuative = false;
};

const char* to_string(Certificate c);
const char* to_string(AbsorptionCheck c);

/// Certificates are tried in the order FixedPoint, OneSided, Absorption; the
/// rows E(g, 0..check_level) are compared for prefix nesting in every case.
ContinuativityReport continuativity(const GeneratorSpec& spec, std::int64_t check_level);

// -- one-sided generators ---------------------------------------------------

/// (phi_a(0), ..., phi_a(count - 1)) from phi_a(2j) = phi_a(j),
/// phi_a(2j + 1) = phi(phi_a(j)).
Word one_sided_prefix(const OneSidedSpec& spec, std::size_t count);

/// phi iterated hamming_weight(n) times on a.
Value one_sided_closed(const OneSidedSpec& spec, const BigInt& n);

/// The two-sided generator (f, a, b) with f(x, y) = phi(x); b defaults to a.
GeneratorSpec as_generator(const OneSidedSpec& spec, std::optional<Value> b = std::nullopt);

// -- the natural binary tree as a generator ---------------------------------

/// f(x, y) = 2y if x < y, 2x + 1 if x > y, seeded with 0 and 1/2.
ExtNat identity_tree_op(const ExtNat& x, const ExtNat& y);

/// f_ab(n) for the identity tree generator; equals n.
ExtNat identity_tree_value(const ExtNat& n);

// -- sequence fitting -------------------------------------------------------

struct FitConflict {
  enum class Kind {
    Contradiction,   // the same argument pair is forced to two values
    RepeatedValue,   // the sequence repeats a value (distinctness violated)
  };
  Kind kind;
  Value x = 0;
  Value y = 0;
  Value kept = 0;      // Contradiction: first assignment; RepeatedValue: the value
  Value rejected = 0;  // Contradiction: later assignment; RepeatedValue: unused
  std::size_t first_index = 0;
  std::size_t second_index = 0;
};

struct PartialOpTable {
  std::map<std::pair<Value, Value>, Value> entries;
  /// Assignments in the order the bisection visited them.
  std::vector<std::pair<std::pair<Value, Value>, Value>> visit_order;
  std::vector<FitConflict> conflicts;

  std::optional<Value> lookup(Value x, Value y) const;
};

/// Table of f making seq the dichotomic fill of [0, |seq| - 1] seeded with
/// its first and last elements. First assignment wins on contradictions.
/// Throws std::invalid_argument when |seq| < 2.
PartialOpTable fit_generator(const Word& seq);

/// Replays a fitted table through the bisection over [0, |seq| - 1].
/// Throws std::out_of_range if the bisection needs an entry the table lacks.
Word replay_fit(const PartialOpTable& table, Value first, Value last, std::size_t length);

}  // namespace dichogen

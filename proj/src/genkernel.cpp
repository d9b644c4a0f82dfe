#include "dichogen/genkernel.hpp"

#include <algorithm>
#include <cassert>

namespace dichogen {

namespace {

BigInt pow2(std::uint64_t k) {
  BigInt p = 1;
  p <<= k;
  return p;
}

// Dichotomic fill of a buffer of length 2^(k+1) + 1 seeded at both ends. Each
// pass halves the stride and inserts f(left, right) at every new midpoint.
Word fill_extended(const GeneratorSpec& spec, std::int64_t k) {
  if (k < -1) throw std::domain_error("row: level must be >= -1");
  const std::size_t span = std::size_t{1} << (k + 1);
  Word buf(span + 1);
  buf.front() = spec.a;
  buf.back() = spec.b;
  for (std::size_t stride = span / 2; stride >= 1; stride /= 2) {
    for (std::size_t i = stride; i < span; i += 2 * stride) {
      buf[i] = spec.op(buf[i - stride], buf[i + stride]);
    }
  }
  return buf;
}

bool closed_over(const BinaryOp& op, const std::vector<Value>& alphabet, Value a, Value b) {
  const std::set<Value> members(alphabet.begin(), alphabet.end());
  if (!members.contains(a) || !members.contains(b)) return false;
  for (Value x : alphabet) {
    for (Value y : alphabet) {
      if (!members.contains(op(x, y))) return false;
    }
  }
  return true;
}

bool ignores_second_argument(const BinaryOp& op, const std::vector<Value>& alphabet) {
  for (Value x : alphabet) {
    const Value reference = op(x, alphabet.front());
    for (Value y : alphabet) {
      if (op(x, y) != reference) return false;
    }
  }
  return true;
}

}  // namespace

EvalSession::EvalSession(const GeneratorSpec& spec)
    : evaluator_([op = spec.op](const Value& x, const Value& y) { return op(x, y); }, spec.a,
                 spec.b) {}

Value EvalSession::einf(const BigInt& n) { return eval(escheme_entry(level(n), n)); }

Value eval_g(const GeneratorSpec& spec, const ExtNat& n) { return EvalSession(spec).eval(n); }

Word row(const GeneratorSpec& spec, std::int64_t k) {
  Word buf = fill_extended(spec, k);
  return Word(buf.begin() + 1, buf.end() - 1);
}

Word extended_row(const GeneratorSpec& spec, std::int64_t k) { return fill_extended(spec, k); }

Value dicho_access_interval(const BinaryOp& op, const BigInt& lo, const BigInt& hi, Value a,
                            Value b, const BigInt& n, std::uint64_t* evaluations) {
  if (n < lo || n > hi) {
    throw std::out_of_range("dicho_access: index " + n.str() + " outside [" + lo.str() + ", " +
                            hi.str() + "]");
  }
  BigInt left = lo;
  BigInt right = hi;
  while (true) {
    if (n == left) return a;
    if (n == right) return b;
    const BigInt mid = (left + right) / 2;
    const Value x = op(a, b);
    if (evaluations) ++*evaluations;
    if (n == mid) return x;
    if (n < mid) {
      right = mid;
      b = x;
    } else {
      left = mid;
      a = x;
    }
  }
}

Value dicho_access(const GeneratorSpec& spec, std::uint64_t k, const BigInt& i,
                   std::uint64_t* evaluations) {
  return dicho_access_interval(spec.op, 0, pow2(k + 1), spec.a, spec.b, i, evaluations);
}

Value einf(const GeneratorSpec& spec, const BigInt& n) { return EvalSession(spec).einf(n); }

Word evolution_on_set(const GeneratorSpec& spec, const std::set<BigInt>& nodes) {
  if (nodes.empty()) throw std::invalid_argument("evolution_on_set: empty node set");
  std::vector<ExtNat> ordered;
  ordered.reserve(nodes.size());
  for (const BigInt& n : nodes) ordered.push_back(ExtNat::node(n));
  std::sort(ordered.begin(), ordered.end(), inorder_less);
  EvalSession session(spec);
  Word out;
  out.reserve(ordered.size());
  for (const ExtNat& n : ordered) out.push_back(session.eval(n));
  return out;
}

const char* to_string(Certificate c) {
  switch (c) {
    case Certificate::FixedPoint: return "FixedPoint";
    case Certificate::OneSided: return "OneSided";
    case Certificate::Absorption: return "Absorption";
    case Certificate::EmpiricalOnly: return "EmpiricalOnly";
    case Certificate::NotContinuative: return "NotContinuative";
  }
  return "?";
}

const char* to_string(AbsorptionCheck c) {
  switch (c) {
    case AbsorptionCheck::NotNeeded: return "NotNeeded";
    case AbsorptionCheck::Holds: return "Holds";
    case AbsorptionCheck::Fails: return "Fails";
    case AbsorptionCheck::CannotCertify: return "CannotCertify";
  }
  return "?";
}

ContinuativityReport continuativity(const GeneratorSpec& spec, std::int64_t check_level) {
  if (check_level < 0) throw std::domain_error("continuativity: check level must be >= 0");
  ContinuativityReport report;
  report.checked_level = check_level;

  const Value fab = spec.op(spec.a, spec.b);
  report.extended_continuative = fab == spec.b;

  std::optional<Certificate> proven;
  if (fab == spec.b) {
    proven = Certificate::FixedPoint;
  } else if (!spec.op.alphabet || spec.op.alphabet->empty() ||
             !closed_over(spec.op, *spec.op.alphabet, spec.a, spec.b)) {
    report.absorption = AbsorptionCheck::CannotCertify;
  } else if (ignores_second_argument(spec.op, *spec.op.alphabet)) {
    proven = Certificate::OneSided;
  } else {
    const auto& alphabet = *spec.op.alphabet;
    const bool absorbs = std::all_of(alphabet.begin(), alphabet.end(),
                                     [&](Value x) { return spec.op(x, fab) == spec.op(x, spec.b); });
    report.absorption = absorbs ? AbsorptionCheck::Holds : AbsorptionCheck::Fails;
    if (absorbs) proven = Certificate::Absorption;
  }

  Word previous = row(spec, 0);
  for (std::int64_t k = 1; k <= check_level && !report.witness; ++k) {
    Word current = row(spec, k);
    const auto [p, c] = std::mismatch(previous.begin(), previous.end(), current.begin());
    if (p != previous.end()) {
      report.witness = PrefixViolation{k, static_cast<std::size_t>(p - previous.begin()) + 1};
    }
    previous = std::move(current);
  }

  if (proven) {
    // Each certificate is a theorem; a violation means f is not what it claims.
    if (report.witness) {
      throw std::logic_error(std::string("continuativity: ") + to_string(*proven) +
                             " certificate contradicted at level " +
                             std::to_string(report.witness->level));
    }
    report.certificate = *proven;
  } else {
    report.certificate =
        report.witness ? Certificate::NotContinuative : Certificate::EmpiricalOnly;
  }
  return report;
}

Word one_sided_prefix(const OneSidedSpec& spec, std::size_t count) {
  Word u;
  u.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    if (n == 0) {
      u.push_back(spec.a);
    } else if (n % 2 == 0) {
      u.push_back(u[n / 2]);
    } else {
      u.push_back(spec.phi(u[n / 2]));
    }
  }
  return u;
}

Value one_sided_closed(const OneSidedSpec& spec, const BigInt& n) {
  Value v = spec.a;
  for (std::uint64_t i = hamming_weight(n); i > 0; --i) v = spec.phi(v);
  return v;
}

GeneratorSpec as_generator(const OneSidedSpec& spec, std::optional<Value> b) {
  GeneratorSpec g;
  g.op.eval = [phi = spec.phi](Value x, Value) { return phi(x); };
  g.a = spec.a;
  g.b = b.value_or(spec.a);
  return g;
}

ExtNat identity_tree_op(const ExtNat& x, const ExtNat& y) {
  // Values compared as rationals; 1/2 is doubled to 1 and 0 to 0.
  const BigInt x2 = x.doubled();
  const BigInt y2 = y.doubled();
  if (x2 < y2) {
    return y2 == 0 ? ExtNat::zero() : ExtNat::node(y2);  // 2y
  }
  if (x2 > y2) {
    return ExtNat::node(x2 + 1);  // 2x + 1
  }
  // Supports of a node are never equal, so this branch is unreachable.
  assert(false && "identity_tree_op: equal arguments");
  throw std::logic_error("identity_tree_op: equal arguments " + x.to_string());
}

ExtNat identity_tree_value(const ExtNat& n) {
  BasicEvaluator<ExtNat> g(identity_tree_op, ExtNat::zero(), ExtNat::half());
  return g(n);
}

std::optional<Value> PartialOpTable::lookup(Value x, Value y) const {
  if (auto it = entries.find({x, y}); it != entries.end()) return it->second;
  return std::nullopt;
}

PartialOpTable fit_generator(const Word& seq) {
  if (seq.size() < 2) {
    throw std::invalid_argument("fit_generator: need at least two elements, got " +
                                std::to_string(seq.size()));
  }
  PartialOpTable table;

  std::map<Value, std::size_t> first_seen;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    auto [it, fresh] = first_seen.emplace(seq[i], i);
    if (!fresh) {
      table.conflicts.push_back({FitConflict::Kind::RepeatedValue, 0, 0, seq[i], 0, it->second, i});
    }
  }

  // Breadth-first over the bisection intervals [i, j] with j - i >= 2.
  std::vector<std::pair<std::size_t, std::size_t>> frontier{{0, seq.size() - 1}};
  while (!frontier.empty()) {
    std::vector<std::pair<std::size_t, std::size_t>> next;
    for (auto [i, j] : frontier) {
      if (j - i < 2) continue;
      const std::size_t mid = (i + j) / 2;
      const std::pair<Value, Value> key{seq[i], seq[j]};
      const Value value = seq[mid];
      auto [it, fresh] = table.entries.emplace(key, value);
      if (fresh) {
        table.visit_order.push_back({key, value});
      } else if (it->second != value) {
        table.conflicts.push_back(
            {FitConflict::Kind::Contradiction, key.first, key.second, it->second, value, i, j});
      }
      next.emplace_back(i, mid);
      next.emplace_back(mid, j);
    }
    frontier = std::move(next);
  }
  return table;
}

Word replay_fit(const PartialOpTable& table, Value first, Value last, std::size_t length) {
  if (length < 2) throw std::invalid_argument("replay_fit: length must be >= 2");
  BinaryOp op;
  op.eval = [&table](Value x, Value y) {
    if (auto v = table.lookup(x, y)) return *v;
    throw std::out_of_range("replay_fit: no table entry for f(" + std::to_string(x) + ", " +
                            std::to_string(y) + ")");
  };
  Word out;
  out.reserve(length);
  const BigInt hi = length - 1;
  for (std::size_t n = 0; n < length; ++n) {
    out.push_back(dicho_access_interval(op, 0, hi, first, last, n));
  }
  return out;
}

}  // namespace dichogen

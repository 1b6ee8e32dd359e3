#pragma once

// Arithmetic constraints over little-endian binary counters, compiled to
// clauses by blocking every falsifying assignment of the scope.  An M-bit
// group (a_1 a_2 ... a_M) denotes sum of 2^(i-1) over true a_i.

#include <functional>

#include "widthred/core.hpp"

namespace widthred {

struct VarGroup {
  std::vector<int> bits;  // bits[0] is least significant
  std::string role;

  long long value_under(const std::vector<bool> &assignment) const {
    long long v = 0;
    for (size_t i = 0; i < bits.size(); ++i)
      if (assignment[static_cast<size_t>(bits[i])]) v += 1LL << i;
    return v;
  }
};

struct ConstraintSpec {
  std::vector<int> scope;  // ordered; assignment bit i corresponds to scope[i]
  std::function<bool(unsigned long long)> predicate;
  std::string kind;
};

namespace detail {

inline void append_group(std::vector<int> &scope, const VarGroup &g) {
  scope.insert(scope.end(), g.bits.begin(), g.bits.end());
}

inline long long group_value(unsigned long long row, size_t offset, size_t width) {
  long long v = 0;
  for (size_t i = 0; i < width; ++i)
    if (row >> (offset + i) & 1ULL) v += 1LL << i;
  return v;
}

}  // namespace detail

// (s)_2 = (a)_2 + (b)_2, exact integer arithmetic (no wrap-around).
inline ConstraintSpec eq_sum(const VarGroup &s, const VarGroup &a, const VarGroup &b) {
  ConstraintSpec c;
  detail::append_group(c.scope, s);
  detail::append_group(c.scope, a);
  detail::append_group(c.scope, b);
  size_t ws = s.bits.size(), wa = a.bits.size(), wb = b.bits.size();
  c.predicate = [ws, wa, wb](unsigned long long row) {
    return detail::group_value(row, 0, ws) ==
           detail::group_value(row, ws, wa) + detail::group_value(row, ws + wa, wb);
  };
  c.kind = "eq-sum";
  return c;
}

// (s)_2 = (a)_2
inline ConstraintSpec eq(const VarGroup &s, const VarGroup &a) {
  ConstraintSpec c;
  detail::append_group(c.scope, s);
  detail::append_group(c.scope, a);
  size_t ws = s.bits.size(), wa = a.bits.size();
  c.predicate = [ws, wa](unsigned long long row) {
    return detail::group_value(row, 0, ws) == detail::group_value(row, ws, wa);
  };
  c.kind = "eq";
  return c;
}

// (s)_2 >= k
inline ConstraintSpec geq_const(const VarGroup &s, long long k) {
  ConstraintSpec c;
  detail::append_group(c.scope, s);
  size_t ws = s.bits.size();
  c.predicate = [ws, k](unsigned long long row) { return detail::group_value(row, 0, ws) >= k; };
  c.kind = "geq-const";
  return c;
}

// (a)_2 + (b)_2 <= k
inline ConstraintSpec sum_leq_const(const VarGroup &a, const VarGroup &b, long long k) {
  ConstraintSpec c;
  detail::append_group(c.scope, a);
  detail::append_group(c.scope, b);
  size_t wa = a.bits.size(), wb = b.bits.size();
  c.predicate = [wa, wb, k](unsigned long long row) {
    return detail::group_value(row, 0, wa) + detail::group_value(row, wa, wb) <= k;
  };
  c.kind = "sum-leq-const";
  return c;
}

inline ConstraintSpec custom_constraint(std::vector<int> scope,
                                        std::function<bool(unsigned long long)> predicate,
                                        std::string kind = "custom-table") {
  return ConstraintSpec{std::move(scope), std::move(predicate), std::move(kind)};
}

constexpr int kDefaultScopeCap = 24;

// Enumerates all 2^|scope| assignments and emits one blocking clause per
// falsifying row.  Emitted clauses are satisfied exactly when the predicate
// holds, and every clause stays inside the scope.
inline std::vector<Clause> compile_constraint(const ConstraintSpec &spec,
                                              int scope_cap = kDefaultScopeCap) {
  const size_t w = spec.scope.size();
  if (static_cast<int>(w) > scope_cap)
    fail("compile_constraint: scope of " + std::to_string(w) + " variables exceeds cap " +
         std::to_string(scope_cap) + " (" + spec.kind + ")");
  {
    std::vector<int> sorted = spec.scope;
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 0; i + 1 < sorted.size(); ++i)
      if (sorted[i] == sorted[i + 1]) fail("compile_constraint: repeated scope variable");
  }
  std::vector<Clause> out;
  for (unsigned long long row = 0; row < (1ULL << w); ++row) {
    if (spec.predicate(row)) continue;
    Clause c;
    c.lits.reserve(w);
    for (size_t i = 0; i < w; ++i)
      c.lits.push_back(Literal{spec.scope[i], (row >> i & 1ULL) != 0});
    out.push_back(std::move(c));
  }
  return out;
}

// Enumerates the falsifying rows only (used where each row becomes an
// independent-set clause gadget rather than a clause).
inline std::vector<unsigned long long> falsifying_rows(const ConstraintSpec &spec,
                                                       int scope_cap = kDefaultScopeCap) {
  const size_t w = spec.scope.size();
  if (static_cast<int>(w) > scope_cap)
    fail("falsifying_rows: scope exceeds cap (" + spec.kind + ")");
  std::vector<unsigned long long> rows;
  for (unsigned long long row = 0; row < (1ULL << w); ++row)
    if (!spec.predicate(row)) rows.push_back(row);
  return rows;
}

}  // namespace widthred

#pragma once

// Comparative statements `p OP q || T` in canonical form u r OP u s || T.
//
//   U  variables on which p and q agree (value u)
//   R  remaining variables of p (value r),  S  remaining variables of q (value s)
//   T  variables held equal between the two sides
//   W  everything else; W-variables must be less important than R and S
//
// For X in R∩S we always have r(X) != s(X), and every variable with a
// single-valued domain is placed in T, which makes the representation unique.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lexpref/core_model.hpp"

namespace lexpref {

enum class StatementKind {
  NonStrict,         // p >= q || T
  FullyStrict,       // p >> q || T
  WeaklyStrict,      // p > q || T
  NegatedNonStrict,  // not (p >= q || T), only with R = S
};

inline const char* kind_name(StatementKind k) {
  switch (k) {
    case StatementKind::NonStrict: return "non-strict";
    case StatementKind::FullyStrict: return "fully-strict";
    case StatementKind::WeaklyStrict: return "weakly-strict";
    case StatementKind::NegatedNonStrict: return "negated-non-strict";
  }
  return "?";
}

class PrefStatement {
 public:
  StatementKind kind() const { return kind_; }
  // For NegatedNonStrict, the parts describe the inner non-strict statement.
  const PartialAssignment& u() const { return u_; }
  const PartialAssignment& r() const { return r_; }
  const PartialAssignment& s() const { return s_; }
  const VarSet& U() const { return u_.scope(); }
  const VarSet& R() const { return r_.scope(); }
  const VarSet& S() const { return s_.scope(); }
  const VarSet& T() const { return t_; }
  const VarSet& W() const { return w_; }
  const VarSet& r_and_s() const { return r_and_s_; }
  const VarSet& r_or_s() const { return r_or_s_; }
  const VarSet& t_or_u() const { return t_or_u_; }

  bool negated() const { return kind_ == StatementKind::NegatedNonStrict; }
  std::size_t universe() const { return t_.universe(); }

  // Same parts, different kind. NegatedNonStrict still requires R = S.
  PrefStatement with_kind(StatementKind k) const {
    if (k == StatementKind::NegatedNonStrict && !(R() == S()))
      throw InvalidInput("negation is only available for statements with R = S");
    PrefStatement c = *this;
    c.kind_ = k;
    return c;
  }

  // p and q as written: u∪r and u∪s.
  PartialAssignment left(const VariableSpace& space) const { return merged(space, r_); }
  PartialAssignment right(const VariableSpace& space) const { return merged(space, s_); }

  friend bool operator==(const PrefStatement& a, const PrefStatement& b) {
    return a.kind_ == b.kind_ && a.u_ == b.u_ && a.r_ == b.r_ && a.s_ == b.s_ && a.t_ == b.t_;
  }

 private:
  friend PrefStatement canonicalize(const VariableSpace&, const PartialAssignment&, const PartialAssignment&,
                                    const VarSet&, StatementKind);

  PartialAssignment merged(const VariableSpace& space, const PartialAssignment& side) const {
    auto e = u_.entries();
    e.insert(e.end(), side.entries().begin(), side.entries().end());
    return PartialAssignment::from_entries(space, std::move(e));
  }

  StatementKind kind_ = StatementKind::NonStrict;
  PartialAssignment u_, r_, s_;
  VarSet t_, w_, r_and_s_, r_or_s_, t_or_u_;
};

inline PrefStatement canonicalize(const VariableSpace& space, const PartialAssignment& p, const PartialAssignment& q,
                                  const VarSet& held, StatementKind kind) {
  const std::size_t n = space.size();
  if (p.scope().universe() != n || q.scope().universe() != n || held.universe() != n)
    throw InvalidInput("statement parts over a different variable space");
  if (held.intersects(p.scope() | q.scope()))
    throw InvalidInput("held-constant variables overlap the compared assignments");

  const VarSet singletons = space.singleton_variables();
  VarSet agree(n);
  for (const auto& [x, v] : p.entries())
    if (q.contains(x) && q.at(x) == v) agree.insert(x);

  PrefStatement st;
  st.kind_ = kind;
  st.t_ = held | singletons;
  st.u_ = p.restrict_to(agree - singletons);
  st.r_ = p.restrict_to(p.scope() - agree - singletons);
  st.s_ = q.restrict_to(q.scope() - agree - singletons);
  st.r_and_s_ = st.R() & st.S();
  st.r_or_s_ = st.R() | st.S();
  st.t_or_u_ = st.t_ | st.U();
  st.w_ = space.all() - st.r_or_s_ - st.t_or_u_;
  if (kind == StatementKind::NegatedNonStrict && !(st.R() == st.S()))
    throw InvalidInput("negation is only available for statements with R = S");
  return st;
}

// `a OP b` between complete outcomes.
inline PrefStatement outcome_statement(const VariableSpace& space, const Outcome& a, const Outcome& b,
                                       StatementKind kind) {
  return canonicalize(space, as_assignment(space, a), as_assignment(space, b), space.empty_set(), kind);
}

// Whether some lex model satisfies the statement on its own.
inline bool statement_consistent(const PrefStatement& phi) {
  switch (phi.kind()) {
    case StatementKind::NonStrict: return true;
    case StatementKind::FullyStrict: return !phi.r_and_s().empty();
    case StatementKind::WeaklyStrict: return !phi.r_or_s().empty();
    case StatementKind::NegatedNonStrict: return !(phi.R() | phi.W()).empty();
  }
  return false;
}

// Stage walk for the non-strict reading p >= q || T. Only the relevant
// stages are inspected: those outside T∪U up to and including the first one
// in (R∩S)∪W.
inline bool satisfies_nonstrict(const LexModel& pi, const PrefStatement& phi) {
  for (const auto& st : pi.stages()) {
    const VarId x = st.variable();
    if (phi.t_or_u().contains(x)) continue;
    if (phi.W().contains(x)) return false;
    const bool in_r = phi.R().contains(x);
    const bool in_s = phi.S().contains(x);
    if (in_r && in_s) return st.prefers(phi.r().at(x), phi.s().at(x));
    if (in_r && st.top() != phi.r().at(x)) return false;
    if (in_s && st.bottom() != phi.s().at(x)) return false;
  }
  return true;
}

inline bool satisfies(const LexModel& pi, const PrefStatement& phi) {
  if (pi.universe() != phi.universe()) throw InvalidInput("model and statement over different variable spaces");
  switch (phi.kind()) {
    case StatementKind::NonStrict: return satisfies_nonstrict(pi, phi);
    case StatementKind::FullyStrict:
      return phi.r_and_s().intersects(pi.variables()) && satisfies_nonstrict(pi, phi);
    case StatementKind::WeaklyStrict:
      return phi.r_or_s().intersects(pi.variables()) && satisfies_nonstrict(pi, phi);
    case StatementKind::NegatedNonStrict: return !satisfies_nonstrict(pi, phi);
  }
  return false;
}

// Some extension-or-equal of `pi` satisfies `phi`. Requires an individually
// consistent statement.
inline bool satisfies_star(const LexModel& pi, const PrefStatement& phi) {
  if (!statement_consistent(phi)) throw InvalidInput("satisfies_star needs an individually consistent statement");
  if (pi.universe() != phi.universe()) throw InvalidInput("model and statement over different variable spaces");
  if (phi.negated()) return !satisfies_nonstrict(pi, phi) || !pi.variables().intersects(phi.S());
  return satisfies_nonstrict(pi, phi);
}

// The value pairs (alpha(Y), beta(Y)) over statement pairs that agree on A.
inline std::vector<std::pair<ValueId, ValueId>> projection(const VariableSpace& space, const PrefStatement& phi,
                                                           const VarSet& A, VarId y) {
  if (A.contains(y)) throw InvalidInput("projection variable must lie outside the agreement set");
  std::vector<std::pair<ValueId, ValueId>> out;
  if (phi.r_and_s().intersects(A)) return out;
  const auto d = static_cast<ValueId>(space.domain_size(y));
  for (ValueId a = 0; a < d; ++a)
    for (ValueId b = 0; b < d; ++b) {
      if (phi.T().contains(y) && a != b) continue;
      if (phi.U().contains(y) && (a != phi.u().at(y) || b != phi.u().at(y))) continue;
      if (phi.R().contains(y) && a != phi.r().at(y)) continue;
      if (phi.S().contains(y) && b != phi.s().at(y)) continue;
      out.emplace_back(a, b);
    }
  return out;
}

// Every outcome of the space, in lexicographic index order.
inline std::vector<Outcome> all_outcomes(const VariableSpace& space, std::uint64_t cap = 10000) {
  if (space.outcome_count(cap) > cap) throw CapExceeded("outcome space exceeds enumeration cap");
  std::vector<Outcome> out;
  std::vector<ValueId> cur(space.size(), 0);
  while (true) {
    out.emplace_back(cur);
    std::size_t i = space.size();
    while (i > 0) {
      --i;
      if (++cur[i] < space.domain_size(static_cast<VarId>(i))) break;
      cur[i] = 0;
      if (i == 0) return out;
    }
    if (space.size() == 0) return out;
  }
}

// The pair set of the statement: alpha extends u r, beta extends u s, and
// they agree on T. Test-scale only.
inline std::vector<std::pair<Outcome, Outcome>> pairs(const VariableSpace& space, const PrefStatement& phi,
                                                      std::uint64_t cap = 10000) {
  const auto outcomes = all_outcomes(space, cap);
  std::vector<std::pair<Outcome, Outcome>> out;
  for (const auto& a : outcomes) {
    if (!phi.u().agrees_with(a) || !phi.r().agrees_with(a)) continue;
    for (const auto& b : outcomes) {
      if (!phi.u().agrees_with(b) || !phi.s().agrees_with(b)) continue;
      bool same_t = true;
      phi.T().for_each([&](VarId x) { same_t = same_t && a[x] == b[x]; });
      if (same_t) out.emplace_back(a, b);
    }
  }
  return out;
}

// The negation as a member of the language, when one exists: a non-strict
// statement with R = S negates to its NegatedNonStrict form and back; a strict
// statement with R = S and empty W is the negation of the swapped non-strict
// statement.
inline std::optional<PrefStatement> negation(const VariableSpace& space, const PrefStatement& phi) {
  switch (phi.kind()) {
    case StatementKind::NonStrict:
      if (phi.R() == phi.S()) return phi.with_kind(StatementKind::NegatedNonStrict);
      return std::nullopt;
    case StatementKind::NegatedNonStrict: return phi.with_kind(StatementKind::NonStrict);
    case StatementKind::FullyStrict:
    case StatementKind::WeaklyStrict:
      if (phi.R() == phi.S() && phi.W().empty())
        return canonicalize(space, phi.right(space), phi.left(space), phi.T() - space.singleton_variables(),
                            StatementKind::NonStrict);
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace lexpref

#pragma once

// Shared fixtures and hand-rolled random generators for the test suites.

#include <cstdint>
#include <string>
#include <vector>

#include "lexpref/lexpref.hpp"

namespace lexpref::testing {

struct Flight {
  VariableSpace space;
  VarId airline, time, klass;
  Outcome alpha, beta, gamma, delta;
  std::vector<PrefStatement> gamma_set;  // {alpha > beta, beta >= gamma}

  Flight() {
    airline = space.add_variable("airline", {"KLM", "LAN"});
    time = space.add_variable("time", {"day", "night"});
    klass = space.add_variable("class", {"economy", "business"});
    alpha = Outcome({0, 0, 0});
    beta = Outcome({0, 1, 1});
    gamma = Outcome({1, 0, 0});
    delta = Outcome({1, 1, 1});
    gamma_set = {outcome_statement(space, alpha, beta, StatementKind::WeaklyStrict),
                 outcome_statement(space, beta, gamma, StatementKind::NonStrict)};
  }

  TotalValueOrder order(VarId x, std::vector<ValueId> r) const { return TotalValueOrder(x, std::move(r)); }

  // (airline, KLM > LAN), (time, day > night), (class, business > economy)
  LexModel exhibited() const {
    LexModel pi(3);
    pi.append(order(airline, {0, 1}));
    pi.append(order(time, {0, 1}));
    pi.append(order(klass, {1, 0}));
    return pi;
  }
  AlternativeSet alternatives() const { return AlternativeSet({alpha, beta, gamma, delta}); }
};

inline VariableSpace random_space(Rng& rng, std::size_t nmin, std::size_t nmax, std::size_t dmin, std::size_t dmax) {
  VariableSpace space;
  const auto n = rng.between(nmin, nmax);
  for (std::size_t i = 0; i < n; ++i) {
    const auto d = rng.between(dmin, dmax);
    std::vector<std::string> values;
    for (std::size_t v = 0; v < d; ++v) values.push_back("v" + std::to_string(v));
    space.add_variable("x" + std::to_string(i), values);
  }
  return space;
}

inline TotalValueOrder random_order(Rng& rng, VarId x, std::size_t d) {
  std::vector<ValueId> r(d);
  for (std::size_t v = 0; v < d; ++v) r[v] = static_cast<ValueId>(v);
  rng.shuffle(r);
  return TotalValueOrder(x, std::move(r));
}

// A random lex model over a random subset of variables, `len` stages or random length.
inline LexModel random_model(Rng& rng, const VariableSpace& space, std::size_t len = SIZE_MAX) {
  std::vector<VarId> vars(space.size());
  for (std::size_t i = 0; i < vars.size(); ++i) vars[i] = static_cast<VarId>(i);
  rng.shuffle(vars);
  if (len == SIZE_MAX) len = rng.below(space.size() + 1);
  LexModel pi(space.size());
  for (std::size_t i = 0; i < len && i < vars.size(); ++i)
    pi.append(random_order(rng, vars[i], space.domain_size(vars[i])));
  return pi;
}

// A model over variables disjoint from `avoid`.
inline LexModel random_model_avoiding(Rng& rng, const VariableSpace& space, const VarSet& avoid) {
  std::vector<VarId> vars;
  for (VarId x = 0; x < space.size(); ++x)
    if (!avoid.contains(x)) vars.push_back(x);
  rng.shuffle(vars);
  const auto len = rng.below(vars.size() + 1);
  LexModel pi(space.size());
  for (std::size_t i = 0; i < len; ++i) pi.append(random_order(rng, vars[i], space.domain_size(vars[i])));
  return pi;
}

inline Outcome random_outcome(Rng& rng, const VariableSpace& space) {
  std::vector<ValueId> v(space.size());
  for (VarId x = 0; x < space.size(); ++x) v[x] = static_cast<ValueId>(rng.below(space.domain_size(x)));
  return Outcome(std::move(v));
}

inline StatementKind random_kind(Rng& rng) {
  static constexpr StatementKind kinds[] = {StatementKind::NonStrict, StatementKind::FullyStrict,
                                            StatementKind::WeaklyStrict, StatementKind::NegatedNonStrict};
  return kinds[rng.below(4)];
}

// Unconstrained statement of the given kind: every variable independently
// lands in T, U, R-only, S-only, R∩S or W. Negated statements avoid the
// one-sided roles. Statements produced this way are often inconsistent.
inline PrefStatement random_statement(Rng& rng, const VariableSpace& space, StatementKind kind) {
  std::vector<std::pair<VarId, ValueId>> p, q;
  VarSet held = space.empty_set();
  const bool negated = kind == StatementKind::NegatedNonStrict;
  for (VarId x = 0; x < space.size(); ++x) {
    const auto d = space.domain_size(x);
    auto value = [&] { return static_cast<ValueId>(rng.below(d)); };
    auto role = rng.below(6);
    if (negated && (role == 2 || role == 3)) role = 4;
    if (role == 4 && d < 2) role = 1;
    switch (role) {
      case 0: held.insert(x); break;
      case 1: {
        const auto v = value();
        p.emplace_back(x, v);
        q.emplace_back(x, v);
        break;
      }
      case 2: p.emplace_back(x, value()); break;
      case 3: q.emplace_back(x, value()); break;
      case 4: {
        const auto a = value();
        auto b = static_cast<ValueId>(rng.below(d - 1));
        if (b >= a) ++b;
        p.emplace_back(x, a);
        q.emplace_back(x, b);
        break;
      }
      default: break;
    }
  }
  return canonicalize(space, PartialAssignment::from_entries(space, std::move(p)),
                      PartialAssignment::from_entries(space, std::move(q)), held, kind);
}

inline PrefStatement random_statement(Rng& rng, const VariableSpace& space) {
  return random_statement(rng, space, random_kind(rng));
}

inline std::vector<PrefStatement> random_gamma(Rng& rng, const VariableSpace& space, std::size_t max_size) {
  std::vector<PrefStatement> gamma;
  const auto g = rng.below(max_size + 1);
  for (std::size_t i = 0; i < g; ++i) gamma.push_back(random_statement(rng, space));
  return gamma;
}

// Statements that a fixed model satisfies; consistent by construction.
inline std::vector<PrefStatement> planted_gamma(Rng& rng, const VariableSpace& space, const LexModel& pi,
                                                std::size_t size, std::size_t attempts = 200) {
  std::vector<PrefStatement> gamma;
  for (std::size_t t = 0; t < attempts && gamma.size() < size; ++t) {
    auto phi = random_statement(rng, space);
    if (satisfies(pi, phi)) gamma.push_back(std::move(phi));
  }
  return gamma;
}

inline AlternativeSet random_alternatives(Rng& rng, const VariableSpace& space, std::size_t max_m) {
  const auto total = space.outcome_count(max_m);
  const auto m = rng.between(1, std::min<std::uint64_t>(max_m, total));
  std::vector<Outcome> alts;
  std::unordered_set<Outcome> seen;
  while (alts.size() < m) {
    auto o = random_outcome(rng, space);
    if (seen.insert(o).second) alts.push_back(std::move(o));
  }
  return AlternativeSet(std::move(alts));
}

}  // namespace lexpref::testing

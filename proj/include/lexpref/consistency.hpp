#pragma once

// Greedy consistency checking.
//
// Starting from the empty model, the engine repeatedly appends a stage
// (X, >_X) such that the longer model can still be extended to satisfy every
// statement, until no variable admits such a stage. The resulting maximal
// model decides consistency: the set is consistent iff that model satisfies
// it. Inference is answered by reduction to consistency.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lexpref/core_model.hpp"
#include "lexpref/statements.hpp"

namespace lexpref {

// What the statements demand from the value order of a candidate next stage.
struct ExtensionConstraint {
  VarId variable = 0;
  bool blocked = false;  // X is residual (W) in a statement that still constrains
  std::vector<ValueId> best;
  std::vector<ValueId> worst;
  std::vector<std::pair<ValueId, ValueId>> pairs;  // (a, b): a must rank above b
};

// A non-negated statement keeps constraining new stages until one of its
// R∩S variables has been placed.
inline bool still_constrains(const PrefStatement& phi, const VarSet& placed) {
  return !phi.negated() && !phi.r_and_s().intersects(placed);
}

// A negated statement still forces reversed pairs while every placed
// variable lies in its T∪U.
inline bool negation_pending(const PrefStatement& phi, const VarSet& placed) {
  return phi.negated() && placed.is_subset_of(phi.t_or_u());
}

namespace detail {

inline void sort_unique(auto& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Builds the order best-first, worst-last, middle by a topological sort of the
// required pairs taking the lowest value index among ready values. `above` is
// a d×d matrix, above[a*d+b] != 0 meaning a must rank above b.
template <typename Matrix>
std::optional<TotalValueOrder> order_from(VarId x, std::size_t d, std::optional<ValueId> best,
                                          std::optional<ValueId> worst, const Matrix& above) {
  if (best && worst && *best == *worst && d >= 2) return std::nullopt;
  for (std::size_t v = 0; v < d; ++v) {
    if (best && above[v * d + *best]) return std::nullopt;
    if (worst && above[*worst * d + v]) return std::nullopt;
  }
  std::vector<std::uint32_t> indegree(d, 0);
  std::vector<bool> placed(d, false);
  std::vector<ValueId> ranking;
  ranking.reserve(d);
  if (best) {
    placed[*best] = true;
    ranking.push_back(*best);
  }
  if (worst && !(best && *best == *worst)) placed[*worst] = true;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      if (above[a * d + b] && !placed[a] && !placed[b]) ++indegree[b];
  std::size_t middle = 0;
  for (std::size_t v = 0; v < d; ++v) middle += placed[v] ? 0 : 1;
  for (std::size_t k = 0; k < middle; ++k) {
    std::size_t next = d;
    for (std::size_t v = 0; v < d; ++v)
      if (!placed[v] && indegree[v] == 0) {
        next = v;
        break;
      }
    if (next == d) return std::nullopt;  // cycle
    placed[next] = true;
    ranking.push_back(static_cast<ValueId>(next));
    for (std::size_t b = 0; b < d; ++b)
      if (above[next * d + b] && !placed[b]) --indegree[b];
  }
  if (worst && !(best && *best == *worst)) ranking.push_back(*worst);
  return TotalValueOrder(x, std::move(ranking));
}

}  // namespace detail

inline ExtensionConstraint extension_constraint(std::span<const PrefStatement> gamma, const LexModel& pi, VarId x) {
  ExtensionConstraint c;
  c.variable = x;
  const VarSet& placed = pi.variables();
  for (const auto& phi : gamma) {
    if (still_constrains(phi, placed)) {
      if (phi.W().contains(x)) c.blocked = true;
      const bool in_r = phi.R().contains(x);
      const bool in_s = phi.S().contains(x);
      if (in_r && in_s)
        c.pairs.emplace_back(phi.r().at(x), phi.s().at(x));
      else if (in_r)
        c.best.push_back(phi.r().at(x));
      else if (in_s)
        c.worst.push_back(phi.s().at(x));
    } else if (negation_pending(phi, placed) && phi.R().contains(x)) {
      c.pairs.emplace_back(phi.s().at(x), phi.r().at(x));
    }
  }
  detail::sort_unique(c.best);
  detail::sort_unique(c.worst);
  detail::sort_unique(c.pairs);
  return c;
}

// An order for the constrained variable that satisfies every requirement, or
// nothing if the variable cannot be placed next.
inline std::optional<TotalValueOrder> complete_order(const ExtensionConstraint& c, std::size_t domain_size) {
  if (c.blocked || c.best.size() > 1 || c.worst.size() > 1) return std::nullopt;
  std::vector<std::uint8_t> above(domain_size * domain_size, 0);
  for (const auto& [a, b] : c.pairs) {
    if (a == b) return std::nullopt;
    above[a * domain_size + b] = 1;
  }
  std::optional<ValueId> best, worst;
  if (!c.best.empty()) best = c.best.front();
  if (!c.worst.empty()) worst = c.worst.front();
  return detail::order_from(c.variable, domain_size, best, worst, above);
}

inline std::optional<TotalValueOrder> valid_extension(const VariableSpace& space, std::span<const PrefStatement> gamma,
                                                      const LexModel& pi, VarId x) {
  if (pi.uses(x)) throw InvalidInput("variable already placed in the model");
  return complete_order(extension_constraint(gamma, pi, x), space.domain_size(x));
}

// Work counters for one consistency run. `satisfaction_tests` counts
// per-statement evaluations: the initial individual-consistency checks, each
// statement/variable contribution added or withdrawn while growing the model,
// each candidate-variable evaluation, and the final satisfaction checks.
struct RunStats {
  std::uint64_t satisfaction_tests = 0;
  std::uint64_t candidate_evaluations = 0;
  std::uint64_t stages = 0;
};

// Incremental greedy construction of a maximal model for statements that are
// each individually consistent. Per-variable requirements are kept as counts
// and withdrawn when a statement stops constraining, so a run costs
// O(|V|·|Γ| + |V|²·d²) instead of rescanning Γ for every candidate.
class GreedyBuilder {
 public:
  GreedyBuilder(const VariableSpace& space, std::vector<const PrefStatement*> statements,
                std::span<const VarId> priority = {})
      : space_(space), stmts_(std::move(statements)), n_(space.size()), d_(std::max<std::size_t>(1, space.max_domain_size())) {
    if (priority.empty()) {
      priority_.resize(n_);
      for (std::size_t i = 0; i < n_; ++i) priority_[i] = static_cast<VarId>(i);
    } else {
      priority_.assign(priority.begin(), priority.end());
      if (priority_.size() != n_) throw InvalidInput("variable priority must list every variable once");
      VarSet seen(n_);
      for (VarId x : priority_) {
        if (x >= n_ || seen.contains(x)) throw InvalidInput("variable priority must list every variable once");
        seen.insert(x);
      }
    }
    for (const auto* phi : stmts_) {
      if (phi->universe() != n_) throw InvalidInput("statement over a different variable space");
      if (!statement_consistent(*phi)) throw InvalidInput("greedy construction needs individually consistent statements");
    }
  }

  LexModel build(RunStats& stats) {
    init(stats);
    LexModel model(n_);
    while (true) {
      std::optional<VarId> chosen;
      for (VarId x : priority_) {
        if (model.uses(x)) continue;
        if (state_[x] == kDirty) {
          ++stats.candidate_evaluations;
          ++stats.satisfaction_tests;
          state_[x] = order_for(x) ? kValid : kInvalid;
        }
        if (state_[x] == kValid) {
          chosen = x;
          break;
        }
      }
      if (!chosen) break;
      const VarId x = *chosen;
      model.append(*order_for(x));
      ++stats.stages;
      for (auto i = rs_start_[x]; i < rs_start_[x + 1]; ++i) retire(rs_list_[i], stats);
      for (auto i = neg_start_[x]; i < neg_start_[x + 1]; ++i) retire(neg_list_[i], stats);
    }
    return model;
  }

 private:
  static constexpr std::uint8_t kDirty = 0, kValid = 1, kInvalid = 2;

  void init(RunStats& stats) {
    blocked_.assign(n_, 0);
    best_.assign(n_ * d_, 0);
    worst_.assign(n_ * d_, 0);
    best_distinct_.assign(n_, 0);
    worst_distinct_.assign(n_, 0);
    pairs_.assign(n_ * d_ * d_, 0);
    state_.assign(n_, kDirty);
    active_.assign(stmts_.size(), 1);
    stats.satisfaction_tests += stmts_.size();

    // CSR lists: statements retired when a variable is placed.
    rs_start_.assign(n_ + 1, 0);
    neg_start_.assign(n_ + 1, 0);
    for (const auto* phi : stmts_) {
      if (phi->negated())
        phi->t_or_u().complement().for_each([&](VarId x) { ++neg_start_[x + 1]; });
      else
        phi->r_and_s().for_each([&](VarId x) { ++rs_start_[x + 1]; });
    }
    for (std::size_t x = 0; x < n_; ++x) {
      rs_start_[x + 1] += rs_start_[x];
      neg_start_[x + 1] += neg_start_[x];
    }
    rs_list_.assign(rs_start_[n_], 0);
    neg_list_.assign(neg_start_[n_], 0);
    std::vector<std::uint32_t> rs_fill(rs_start_.begin(), rs_start_.end() - 1);
    std::vector<std::uint32_t> neg_fill(neg_start_.begin(), neg_start_.end() - 1);
    for (std::size_t i = 0; i < stmts_.size(); ++i) {
      const auto* phi = stmts_[i];
      const auto idx = static_cast<std::uint32_t>(i);
      if (phi->negated())
        phi->t_or_u().complement().for_each([&](VarId x) { neg_list_[neg_fill[x]++] = idx; });
      else
        phi->r_and_s().for_each([&](VarId x) { rs_list_[rs_fill[x]++] = idx; });
      contribute(*phi, +1, stats);
    }
  }

  void retire(std::uint32_t i, RunStats& stats) {
    if (!active_[i]) return;
    active_[i] = 0;
    contribute(*stmts_[i], -1, stats);
  }

  void bump(std::vector<std::uint32_t>& counts, std::vector<std::uint32_t>& distinct, VarId x, ValueId v, int delta) {
    auto& c = counts[x * d_ + v];
    if (delta > 0) {
      if (c++ == 0) ++distinct[x];
    } else if (--c == 0) {
      --distinct[x];
    }
  }

  void touch(VarId x, int delta) {
    if (delta < 0 && state_[x] == kInvalid) state_[x] = kDirty;
  }

  void contribute(const PrefStatement& phi, int delta, RunStats& stats) {
    const auto& r = phi.r().entries();
    const auto& s = phi.s().entries();
    if (phi.negated()) {
      // R = S, so the entries line up.
      for (std::size_t k = 0; k < r.size(); ++k) {
        const VarId x = r[k].first;
        pairs_[(x * d_ + s[k].second) * d_ + r[k].second] += static_cast<std::uint32_t>(delta);
        touch(x, delta);
        ++stats.satisfaction_tests;
      }
      return;
    }
    phi.W().for_each([&](VarId x) {
      blocked_[x] += static_cast<std::uint32_t>(delta);
      touch(x, delta);
      ++stats.satisfaction_tests;
    });
    std::size_t i = 0, j = 0;
    while (i < r.size() || j < s.size()) {
      if (j == s.size() || (i < r.size() && r[i].first < s[j].first)) {
        bump(best_, best_distinct_, r[i].first, r[i].second, delta);
        touch(r[i].first, delta);
        ++i;
      } else if (i == r.size() || s[j].first < r[i].first) {
        bump(worst_, worst_distinct_, s[j].first, s[j].second, delta);
        touch(s[j].first, delta);
        ++j;
      } else {
        const VarId x = r[i].first;
        pairs_[(x * d_ + r[i].second) * d_ + s[j].second] += static_cast<std::uint32_t>(delta);
        touch(x, delta);
        ++i;
        ++j;
      }
      ++stats.satisfaction_tests;
    }
  }

  std::optional<TotalValueOrder> order_for(VarId x) const {
    if (blocked_[x] || best_distinct_[x] > 1 || worst_distinct_[x] > 1) return std::nullopt;
    const std::size_t d = space_.domain_size(x);
    std::optional<ValueId> best, worst;
    for (std::size_t v = 0; v < d; ++v) {
      if (best_[x * d_ + v]) best = static_cast<ValueId>(v);
      if (worst_[x * d_ + v]) worst = static_cast<ValueId>(v);
    }
    struct View {
      const std::uint32_t* base;
      std::size_t stride, d;
      bool operator[](std::size_t k) const { return base[(k / d) * stride + (k % d)] != 0; }
    } above{pairs_.data() + x * d_ * d_, d_, d};
    return detail::order_from(x, d, best, worst, above);
  }

  const VariableSpace& space_;
  std::vector<const PrefStatement*> stmts_;
  std::size_t n_, d_;
  std::vector<VarId> priority_;
  std::vector<std::uint32_t> blocked_, best_, worst_, best_distinct_, worst_distinct_, pairs_;
  std::vector<std::uint8_t> state_, active_;
  std::vector<std::uint32_t> rs_start_, rs_list_, neg_start_, neg_list_;
};

inline std::vector<const PrefStatement*> statement_refs(std::span<const PrefStatement> gamma,
                                                        std::span<const PrefStatement> extra = {}) {
  std::vector<const PrefStatement*> refs;
  refs.reserve(gamma.size() + extra.size());
  for (const auto& phi : gamma) refs.push_back(&phi);
  for (const auto& phi : extra) refs.push_back(&phi);
  return refs;
}

// Deterministic: at each step the first variable in `priority` (default:
// index order) admitting a valid stage is appended.
inline LexModel build_maximal_star_model(const VariableSpace& space, std::span<const PrefStatement> gamma,
                                         std::span<const VarId> priority = {}, RunStats* stats = nullptr) {
  RunStats local;
  GreedyBuilder b(space, statement_refs(gamma), priority);
  return b.build(stats ? *stats : local);
}

// The same construction by rescanning Γ for every candidate through
// valid_extension. Used to cross-check the incremental builder.
inline LexModel build_maximal_star_model_by_rescan(const VariableSpace& space, std::span<const PrefStatement> gamma,
                                                   RunStats* stats = nullptr) {
  RunStats local;
  RunStats& st = stats ? *stats : local;
  for (const auto& phi : gamma)
    if (!statement_consistent(phi)) throw InvalidInput("greedy construction needs individually consistent statements");
  st.satisfaction_tests += gamma.size();
  LexModel model(space.size());
  while (true) {
    bool grown = false;
    for (VarId x = 0; x < space.size(); ++x) {
      if (model.uses(x)) continue;
      ++st.candidate_evaluations;
      st.satisfaction_tests += gamma.size();
      if (auto order = valid_extension(space, gamma, model, x)) {
        model.append(std::move(*order));
        ++st.stages;
        grown = true;
        break;
      }
    }
    if (!grown) return model;
  }
}

enum class FailureReason {
  IndividuallyInconsistent,
  NoDecisiveVariable,    // fully strict: no R∩S variable in the model
  NoDifferingVariable,   // weakly strict: no R∪S variable in the model
  NegationUnwitnessed,   // negated: every model variable lies in T∪U
};

inline const char* reason_text(FailureReason r) {
  switch (r) {
    case FailureReason::IndividuallyInconsistent: return "statement is inconsistent on its own";
    case FailureReason::NoDecisiveVariable: return "no variable of R∩S appears in the maximal model";
    case FailureReason::NoDifferingVariable: return "no variable of R∪S appears in the maximal model";
    case FailureReason::NegationUnwitnessed: return "every maximal-model variable lies in T∪U";
  }
  return "?";
}

struct StatementFailure {
  std::size_t index = 0;
  FailureReason reason = FailureReason::IndividuallyInconsistent;
};

struct ConsistencyResult {
  bool consistent = false;
  LexModel witness;
  std::vector<StatementFailure> failures;
  VarSet v_gamma;  // variables of every maximal model; meaningful when consistent
  RunStats stats;
};

// Failure check of a maximal model against the statements. Non-strict
// statements always hold at this point.
inline std::optional<FailureReason> final_check(const PrefStatement& phi, const VarSet& placed) {
  switch (phi.kind()) {
    case StatementKind::NonStrict: return std::nullopt;
    case StatementKind::FullyStrict:
      return phi.r_and_s().intersects(placed) ? std::nullopt : std::optional(FailureReason::NoDecisiveVariable);
    case StatementKind::WeaklyStrict:
      return phi.r_or_s().intersects(placed) ? std::nullopt : std::optional(FailureReason::NoDifferingVariable);
    case StatementKind::NegatedNonStrict:
      return placed.is_subset_of(phi.t_or_u()) ? std::optional(FailureReason::NegationUnwitnessed) : std::nullopt;
  }
  return std::nullopt;
}

// Statement indices in failures refer to gamma followed by extra.
inline ConsistencyResult consistent(const VariableSpace& space, std::span<const PrefStatement> gamma,
                                    std::span<const PrefStatement> extra = {}, std::span<const VarId> priority = {}) {
  auto refs = statement_refs(gamma, extra);
  ConsistencyResult res;
  res.witness = LexModel(space.size());
  res.v_gamma = space.empty_set();
  for (std::size_t i = 0; i < refs.size(); ++i) {
    ++res.stats.satisfaction_tests;
    if (!statement_consistent(*refs[i])) res.failures.push_back({i, FailureReason::IndividuallyInconsistent});
  }
  if (!res.failures.empty()) return res;

  GreedyBuilder builder(space, refs, priority);
  res.witness = builder.build(res.stats);
  const VarSet& placed = res.witness.variables();
  for (std::size_t i = 0; i < refs.size(); ++i) {
    ++res.stats.satisfaction_tests;
    if (auto why = final_check(*refs[i], placed)) res.failures.push_back({i, *why});
  }
  res.consistent = res.failures.empty();
  if (res.consistent) res.v_gamma = placed;
  return res;
}

inline bool is_consistent(const VariableSpace& space, std::span<const PrefStatement> gamma,
                          std::span<const PrefStatement> extra = {}) {
  return consistent(space, gamma, extra).consistent;
}

enum class QueryOp { AtLeast, Better, Equivalent };

// Γ entails `a op b` in every model of Γ. An inconsistent Γ entails everything.
inline bool entails(const VariableSpace& space, std::span<const PrefStatement> gamma, const Outcome& a, QueryOp op,
                    const Outcome& b) {
  switch (op) {
    case QueryOp::AtLeast: {
      const PrefStatement counter[] = {outcome_statement(space, b, a, StatementKind::WeaklyStrict)};
      return !is_consistent(space, gamma, counter);
    }
    case QueryOp::Better: {
      const PrefStatement counter[] = {outcome_statement(space, b, a, StatementKind::NonStrict)};
      return !is_consistent(space, gamma, counter);
    }
    case QueryOp::Equivalent: {
      const auto res = consistent(space, gamma);
      if (!res.consistent) return true;
      bool same = true;
      res.v_gamma.for_each([&](VarId x) { same = same && a[x] == b[x]; });
      return same;
    }
  }
  return false;
}

inline PrefStatement negate_or_throw(const VariableSpace& space, const PrefStatement& phi) {
  auto neg = negation(space, phi);
  if (!neg) throw UnsupportedQuery(std::string("the negation of this ") + kind_name(phi.kind()) +
                                   " statement is not expressible in the statement language");
  return *neg;
}

inline bool entails_general(const VariableSpace& space, std::span<const PrefStatement> gamma,
                            const PrefStatement& phi) {
  const PrefStatement neg[] = {negate_or_throw(space, phi)};
  return !is_consistent(space, gamma, neg);
}

inline VarSet v_gamma(const VariableSpace& space, std::span<const PrefStatement> gamma) {
  auto res = consistent(space, gamma);
  if (!res.consistent) throw InconsistentInput("V^Γ is only defined for a consistent statement set");
  return res.v_gamma;
}

// phi holds in every maximal model of Γ.
inline bool entails_max(const VariableSpace& space, std::span<const PrefStatement> gamma, const PrefStatement& phi) {
  const PrefStatement neg[] = {negate_or_throw(space, phi)};
  const auto base = consistent(space, gamma);
  if (!base.consistent) throw InconsistentInput("max-model inference needs a consistent statement set");
  const auto with_neg = consistent(space, gamma, neg);
  if (!with_neg.consistent) return true;
  return !(with_neg.v_gamma == base.v_gamma);
}

}  // namespace lexpref

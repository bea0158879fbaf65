#pragma once

// Optimal alternatives under a consistent statement set Γ.
//
//   PO   optimal in some model of Γ
//   PSO  optimal in some model in which every co-optimal alternative is
//        Γ-equivalent to it (for these statements PSO also equals the
//        maximal-possibly-optimal, optimal-in-some-maximal-model and
//        extreme sets)
//   CSD  not strictly dominated under the relation entailed by Γ
//   NO   optimal in every model of Γ
//
// Every membership test is a consistency check of Γ plus a few outcome
// comparisons.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <map>
#include <span>
#include <thread>
#include <vector>

#include "lexpref/consistency.hpp"

namespace lexpref {

// Worker count from LEXPREF_THREADS, defaulting to the hardware concurrency.
inline unsigned worker_count() {
  if (const char* env = std::getenv("LEXPREF_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs fn(i) for i in [0, count); results must be written to per-index slots.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn,
                         unsigned workers = worker_count()) {
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
}

class AlternativeSet {
 public:
  AlternativeSet() = default;
  explicit AlternativeSet(std::vector<Outcome> alternatives) : items_(std::move(alternatives)) {
    if (items_.empty()) throw InvalidInput("alternative set must be non-empty");
    auto sorted = items_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw InvalidInput("alternative set contains a duplicate outcome");
  }
  std::size_t size() const { return items_.size(); }
  const Outcome& operator[](std::size_t i) const { return items_[i]; }
  const std::vector<Outcome>& items() const { return items_; }

 private:
  std::vector<Outcome> items_;
};

using IndexSet = std::vector<std::size_t>;  // sorted alternative indices

struct OptimalSets {
  IndexSet po, pso, csd, no;
  std::vector<IndexSet> eq_classes;  // ordered by smallest member
  // Equal to pso for compositional statements.
  const IndexSet& mpo() const { return pso; }
  const IndexSet& pom() const { return pso; }
  const IndexSet& ext() const { return pso; }
};

inline IndexSet optimal_in_model(const LexModel& pi, const AlternativeSet& alts) {
  IndexSet out;
  for (std::size_t i = 0; i < alts.size(); ++i) {
    bool best = true;
    for (std::size_t j = 0; j < alts.size() && best; ++j)
      best = lex_compare(pi, alts[i], alts[j]) != Comparison::Worse;
    if (best) out.push_back(i);
  }
  return out;
}

// Γ-equivalence classes: alternatives with the same projection onto V^Γ.
class Equivalence {
 public:
  Equivalence(const VariableSpace& space, std::span<const PrefStatement> gamma, const AlternativeSet& alts) {
    const VarSet key_vars = v_gamma(space, gamma);
    std::map<std::vector<ValueId>, std::size_t> by_key;
    class_of_.resize(alts.size());
    for (std::size_t i = 0; i < alts.size(); ++i) {
      std::vector<ValueId> key;
      key_vars.for_each([&](VarId x) { key.push_back(alts[i][x]); });
      auto [it, fresh] = by_key.emplace(std::move(key), classes_.size());
      if (fresh) classes_.emplace_back();
      classes_[it->second].push_back(i);
      class_of_[i] = it->second;
    }
  }

  bool equivalent(std::size_t a, std::size_t b) const { return class_of_[a] == class_of_[b]; }
  std::size_t class_of(std::size_t a) const { return class_of_[a]; }
  const std::vector<IndexSet>& classes() const { return classes_; }

 private:
  std::vector<IndexSet> classes_;
  std::vector<std::size_t> class_of_;
};

inline std::vector<IndexSet> equivalence_classes(const VariableSpace& space, std::span<const PrefStatement> gamma,
                                                 const AlternativeSet& alts) {
  return Equivalence(space, gamma, alts).classes();
}

inline bool po_membership(const VariableSpace& space, std::span<const PrefStatement> gamma, const AlternativeSet& alts,
                          std::size_t a) {
  std::vector<PrefStatement> extra;
  for (std::size_t b = 0; b < alts.size(); ++b)
    if (b != a) extra.push_back(outcome_statement(space, alts[a], alts[b], StatementKind::NonStrict));
  return is_consistent(space, gamma, extra);
}

inline bool pso_membership(const VariableSpace& space, std::span<const PrefStatement> gamma,
                           const AlternativeSet& alts, const Equivalence& eq, std::size_t a) {
  std::vector<PrefStatement> extra;
  for (std::size_t b = 0; b < alts.size(); ++b)
    if (!eq.equivalent(a, b)) extra.push_back(outcome_statement(space, alts[a], alts[b], StatementKind::WeaklyStrict));
  return is_consistent(space, gamma, extra);
}

inline bool csd_membership(const VariableSpace& space, std::span<const PrefStatement> gamma,
                           const AlternativeSet& alts, const Equivalence& eq, std::size_t a) {
  for (std::size_t b = 0; b < alts.size(); ++b) {
    if (eq.equivalent(a, b)) continue;
    const PrefStatement extra[] = {outcome_statement(space, alts[a], alts[b], StatementKind::WeaklyStrict)};
    if (!is_consistent(space, gamma, extra)) return false;
  }
  return true;
}

// Γ entails a >= b for every other alternative b.
inline bool no_membership(const VariableSpace& space, std::span<const PrefStatement> gamma, const AlternativeSet& alts,
                          std::size_t a) {
  for (std::size_t b = 0; b < alts.size(); ++b) {
    if (b == a) continue;
    const PrefStatement extra[] = {outcome_statement(space, alts[b], alts[a], StatementKind::WeaklyStrict)};
    if (is_consistent(space, gamma, extra)) return false;
  }
  return true;
}

// Convenience overloads computing the equivalence on the fly.
inline bool pso_membership(const VariableSpace& space, std::span<const PrefStatement> gamma,
                           const AlternativeSet& alts, std::size_t a) {
  return pso_membership(space, gamma, alts, Equivalence(space, gamma, alts), a);
}
inline bool csd_membership(const VariableSpace& space, std::span<const PrefStatement> gamma,
                           const AlternativeSet& alts, std::size_t a) {
  return csd_membership(space, gamma, alts, Equivalence(space, gamma, alts), a);
}

enum class OptimalKind { PO, PSO, CSD, NO };

inline IndexSet compute_set(const VariableSpace& space, std::span<const PrefStatement> gamma,
                            const AlternativeSet& alts, const Equivalence& eq, OptimalKind kind) {
  std::vector<std::uint8_t> member(alts.size(), 0);
  switch (kind) {
    case OptimalKind::PO:
      parallel_for(alts.size(), [&](std::size_t a) { member[a] = po_membership(space, gamma, alts, a); });
      break;
    case OptimalKind::PSO:
      parallel_for(alts.size(), [&](std::size_t a) { member[a] = pso_membership(space, gamma, alts, eq, a); });
      break;
    case OptimalKind::CSD:
      parallel_for(alts.size(), [&](std::size_t a) { member[a] = csd_membership(space, gamma, alts, eq, a); });
      break;
    case OptimalKind::NO: {
      // One representative per class; a class is necessarily optimal as a whole.
      std::vector<Outcome> reps;
      for (const auto& cls : eq.classes()) reps.push_back(alts[cls.front()]);
      const AlternativeSet rep_set(std::move(reps));
      std::vector<std::uint8_t> rep_member(rep_set.size(), 0);
      parallel_for(rep_set.size(), [&](std::size_t c) { rep_member[c] = no_membership(space, gamma, rep_set, c); });
      for (std::size_t a = 0; a < alts.size(); ++a) member[a] = rep_member[eq.class_of(a)];
      break;
    }
  }
  IndexSet out;
  for (std::size_t a = 0; a < alts.size(); ++a)
    if (member[a]) out.push_back(a);
  return out;
}

inline OptimalSets compute_sets(const VariableSpace& space, std::span<const PrefStatement> gamma,
                                const AlternativeSet& alts) {
  const Equivalence eq(space, gamma, alts);
  OptimalSets out;
  out.eq_classes = eq.classes();
  out.po = compute_set(space, gamma, alts, eq, OptimalKind::PO);
  out.pso = compute_set(space, gamma, alts, eq, OptimalKind::PSO);
  out.csd = compute_set(space, gamma, alts, eq, OptimalKind::CSD);
  out.no = compute_set(space, gamma, alts, eq, OptimalKind::NO);
  return out;
}

inline bool is_subset(const IndexSet& a, const IndexSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

inline IndexSet intersection(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace lexpref

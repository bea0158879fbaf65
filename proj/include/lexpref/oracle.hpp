#pragma once

// Brute-force ground truth: enumerate every lex model of a small space and
// evaluate consistency, entailment and the optimality classes straight from
// their definitions. No pruning.

#include <cstdint>
#include <functional>
#include <set>
#include <span>
#include <vector>

#include "lexpref/optimality.hpp"

namespace lexpref {

inline constexpr std::uint64_t kDefaultModelCap = 1'000'000;

// Σ_k over ordered choices of k distinct variables of Π d_i!, saturating at cap + 1.
inline std::uint64_t model_count(const VariableSpace& space, std::uint64_t cap = kDefaultModelCap) {
  const std::size_t n = space.size();
  std::vector<std::uint64_t> fact(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t f = 1;
    for (std::uint64_t k = 2; k <= space.domain_size(static_cast<VarId>(i)); ++k) {
      f *= k;
      if (f > cap) return cap + 1;
    }
    fact[i] = f;
  }
  std::uint64_t total = 0;
  std::function<bool(std::uint64_t, std::vector<bool>&)> rec = [&](std::uint64_t weight,
                                                                   std::vector<bool>& used) -> bool {
    total += weight;
    if (total > cap) return false;
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      const std::uint64_t w = weight * fact[i];
      if (w > cap) {
        total = cap + 1;
        return false;
      }
      used[i] = true;
      const bool ok = rec(w, used);
      used[i] = false;
      if (!ok) return false;
    }
    return true;
  };
  std::vector<bool> used(n, false);
  rec(1, used);
  return std::min(total, cap + 1);
}

// Visits every lex model exactly once, the empty model first, each model
// before its extensions.
inline void for_each_model(const VariableSpace& space, const std::function<void(const LexModel&)>& visit,
                           std::uint64_t cap = kDefaultModelCap) {
  if (model_count(space, cap) > cap) throw CapExceeded("lex model enumeration exceeds cap");
  const std::size_t n = space.size();
  std::vector<std::vector<std::vector<ValueId>>> perms(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<ValueId> r(space.domain_size(static_cast<VarId>(x)));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = static_cast<ValueId>(i);
    do perms[x].push_back(r);
    while (std::next_permutation(r.begin(), r.end()));
  }
  std::function<void(const LexModel&)> rec = [&](const LexModel& pi) {
    visit(pi);
    for (std::size_t x = 0; x < n; ++x) {
      if (pi.uses(static_cast<VarId>(x))) continue;
      for (const auto& r : perms[x]) {
        LexModel next = pi;
        next.append(TotalValueOrder(static_cast<VarId>(x), r));
        rec(next);
      }
    }
  };
  rec(LexModel(n));
}

inline std::vector<LexModel> enumerate_models(const VariableSpace& space, std::uint64_t cap = kDefaultModelCap) {
  std::vector<LexModel> out;
  for_each_model(space, [&](const LexModel& pi) { out.push_back(pi); }, cap);
  return out;
}

inline bool satisfies_all(const LexModel& pi, std::span<const PrefStatement> gamma) {
  for (const auto& phi : gamma)
    if (!satisfies(pi, phi)) return false;
  return true;
}

struct BruteConsistency {
  bool consistent = false;
  std::vector<LexModel> models;  // every model of Γ, in enumeration order
};

inline BruteConsistency brute_consistent(const VariableSpace& space, std::span<const PrefStatement> gamma,
                                         std::uint64_t cap = kDefaultModelCap) {
  BruteConsistency out;
  for_each_model(space, [&](const LexModel& pi) {
    if (satisfies_all(pi, gamma)) out.models.push_back(pi);
  }, cap);
  out.consistent = !out.models.empty();
  return out;
}

namespace detail {
inline std::vector<std::pair<VarId, std::vector<ValueId>>> model_key(const LexModel& pi) {
  std::vector<std::pair<VarId, std::vector<ValueId>>> key;
  for (const auto& st : pi.stages()) key.emplace_back(st.variable(), st.ranking());
  return key;
}
}  // namespace detail

// Models of Γ that no other model of Γ extends.
inline std::vector<LexModel> brute_maximal_models(const std::vector<LexModel>& models) {
  std::set<std::vector<std::pair<VarId, std::vector<ValueId>>>> extended;
  for (const auto& pi : models)
    for (std::size_t k = 0; k < pi.size(); ++k) extended.insert(detail::model_key(pi.prefix(k)));
  std::vector<LexModel> out;
  for (const auto& pi : models)
    if (!extended.contains(detail::model_key(pi))) out.push_back(pi);
  return out;
}

// phi holds in every model of Γ (vacuously for inconsistent Γ).
inline bool brute_entails(const VariableSpace& space, std::span<const PrefStatement> gamma, const PrefStatement& phi,
                          std::uint64_t cap = kDefaultModelCap) {
  for (const auto& pi : brute_consistent(space, gamma, cap).models)
    if (!satisfies(pi, phi)) return false;
  return true;
}

struct BruteOptimalSets {
  IndexSet po, pso, csd, no, mpo, pom, ext;
};

inline BruteOptimalSets brute_optimal_sets(const VariableSpace& space, std::span<const PrefStatement> gamma,
                                           const AlternativeSet& alts, std::uint64_t cap = kDefaultModelCap) {
  const auto models = brute_consistent(space, gamma, cap).models;
  if (models.empty()) throw InconsistentInput("optimal sets need a consistent statement set");
  const std::size_t m = alts.size();
  const std::size_t k = models.size();

  // opt[a][p]: alternative a is optimal in model p.
  std::vector<std::vector<bool>> opt(m, std::vector<bool>(k, false));
  std::vector<IndexSet> optimal_per_model(k);
  for (std::size_t p = 0; p < k; ++p) {
    optimal_per_model[p] = optimal_in_model(models[p], alts);
    for (auto a : optimal_per_model[p]) opt[a][p] = true;
  }

  // Entailed weak preference and equivalence, by intersecting all models.
  std::vector<std::vector<bool>> geq(m, std::vector<bool>(m, true)), equiv(m, std::vector<bool>(m, true));
  for (const auto& pi : models)
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) {
        const auto c = lex_compare(pi, alts[a], alts[b]);
        if (c == Comparison::Worse) geq[a][b] = false;
        if (c != Comparison::Equivalent) equiv[a][b] = false;
      }

  BruteOptimalSets out;
  for (std::size_t a = 0; a < m; ++a) {
    bool po = false, no = true, pso = false;
    for (std::size_t p = 0; p < k; ++p) {
      if (opt[a][p]) {
        po = true;
        bool all_equiv = true;
        for (auto b : optimal_per_model[p]) all_equiv = all_equiv && equiv[a][b];
        pso = pso || all_equiv;
      } else {
        no = false;
      }
    }
    bool dominated = false;
    for (std::size_t b = 0; b < m && !dominated; ++b) dominated = geq[b][a] && !equiv[b][a];
    if (po) out.po.push_back(a);
    if (no) out.no.push_back(a);
    if (pso) out.pso.push_back(a);
    if (!dominated) out.csd.push_back(a);

    // MPO: no alternative is optimal in a strict superset of a's models.
    bool maximal = true;
    for (std::size_t b = 0; b < m && maximal; ++b) {
      if (b == a) continue;
      bool superset = true, strict = false;
      for (std::size_t p = 0; p < k; ++p) {
        if (opt[a][p] && !opt[b][p]) superset = false;
        if (opt[b][p] && !opt[a][p]) strict = true;
      }
      if (superset && strict) maximal = false;
    }
    if (maximal) out.mpo.push_back(a);
  }

  std::set<std::size_t> pom;
  for (const auto& pi : brute_maximal_models(models))
    for (auto a : optimal_in_model(pi, alts)) pom.insert(a);
  out.pom.assign(pom.begin(), pom.end());
  out.ext = out.pso;
  return out;
}

}  // namespace lexpref

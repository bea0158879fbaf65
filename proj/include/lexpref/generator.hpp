#pragma once

// Seeded random instances with a planted model.
//
// A hidden lex model π_S over all variables is drawn first; every statement is
// then built around π_S so that π_S satisfies it, which makes the whole set
// consistent. Statement skeletons:
//
//   decisive    pick a cut c among the stages whose variable has >= 2 values.
//               The stage variable X* at c goes to R∩S with r(X*) above s(X*)
//               in π_S (below for negated statements). A few stages before c
//               go to U, R-only (π_S top value) or S-only (π_S bottom value),
//               the rest of them to T. A few stages after c go to R∩S (r != s),
//               R-only, S-only, U or T; the remaining ones form W.
//   plain       (non-strict and weakly strict only, probability 1/4) no
//               decisive variable: a few stages in U, R-only at the top or
//               S-only at the bottom, everything else in T.
//
// Negated statements keep R = S, so their blocks before c are U or T only and
// their blocks after c never use R-only or S-only.
//
// "A few" is a geometric count with mean 1.5. The random source is
// std::mt19937_64; bounded integers use rejection sampling so the stream is
// reproducible across standard libraries.

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "lexpref/instance.hpp"

namespace lexpref {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw InvalidInput("empty range");
    const std::uint64_t threshold = (0 - n) % n;
    while (true) {
      const std::uint64_t x = eng_();
      if (x >= threshold) return x % n;
    }
  }
  // Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

  // Failures before the first success with probability p.
  std::size_t geometric(double p, std::size_t limit) {
    std::size_t k = 0;
    while (k < limit && !chance(p)) ++k;
    return k;
  }

 private:
  std::mt19937_64 eng_;
};

struct GenConfig {
  std::size_t n = 10;
  std::size_t g = 10;
  std::size_t m = 10;
  std::size_t dmin = 2;
  std::size_t dmax = 3;
  std::uint64_t seed = 1;
  // Weights for non-strict, fully strict, weakly strict, negated.
  std::array<double, 4> kind_mix{1, 1, 1, 1};
};

struct GeneratedInstance {
  Instance instance;
  LexModel hidden;
};

inline void validate(const GenConfig& cfg) {
  if (cfg.n < 1 || cfg.g < 1 || cfg.m < 1) throw InvalidInput("n, g and m must be at least 1");
  if (cfg.dmin < 1 || cfg.dmin > cfg.dmax || cfg.dmax > 9) throw InvalidInput("domain sizes must satisfy 1 <= dmin <= dmax <= 9");
  double total = 0;
  for (double w : cfg.kind_mix) {
    if (!(w >= 0)) throw InvalidInput("kind weights must be non-negative");
    total += w;
  }
  if (total <= 0) throw InvalidInput("kind weights must not all be zero");
}

// Statement counts per kind: proportional shares, remainder by largest
// fractional part (ties to the earlier kind).
inline std::array<std::size_t, 4> kind_counts(std::size_t g, const std::array<double, 4>& mix) {
  double total = 0;
  for (double w : mix) total += w;
  std::array<std::size_t, 4> counts{};
  std::array<double, 4> frac{};
  std::size_t used = 0;
  for (std::size_t k = 0; k < 4; ++k) {
    const double share = static_cast<double>(g) * mix[k] / total;
    counts[k] = static_cast<std::size_t>(share);
    frac[k] = mix[k] > 0 ? share - static_cast<double>(counts[k]) : -1;
    used += counts[k];
  }
  while (used < g) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < 4; ++k)
      if (frac[k] > frac[best]) best = k;
    ++counts[best];
    frac[best] = -1;
    ++used;
  }
  return counts;
}

namespace detail {

enum class Role { Held, Agree, ROnly, SOnly, Both, Free };

class SkeletonBuilder {
 public:
  SkeletonBuilder(const VariableSpace& space, const LexModel& hidden, Rng& rng)
      : space_(space), hidden_(hidden), rng_(rng), n_(space.size()) {
    for (std::size_t i = 0; i < n_; ++i)
      if (hidden.stage(i).size() >= 2) wide_positions_.push_back(i);
  }

  PrefStatement make(StatementKind kind) {
    const bool negated = kind == StatementKind::NegatedNonStrict;
    const bool decisive =
        kind == StatementKind::FullyStrict || negated || (rng_.chance(0.75) && !wide_positions_.empty());
    return decisive ? decisive_statement(kind) : plain_statement(kind);
  }

 private:
  static constexpr double kBlockStop = 0.4;  // geometric mean 1.5

  // Positions in [lo, hi) chosen at random, `count` of them.
  std::vector<std::size_t> pick(std::size_t lo, std::size_t hi, std::size_t count) {
    std::vector<std::size_t> pos;
    for (std::size_t i = lo; i < hi; ++i) pos.push_back(i);
    rng_.shuffle(pos);
    pos.resize(std::min(count, pos.size()));
    return pos;
  }

  PrefStatement decisive_statement(StatementKind kind) {
    const bool negated = kind == StatementKind::NegatedNonStrict;
    const std::size_t c = wide_positions_[rng_.below(wide_positions_.size())];
    std::vector<Role> role(n_, Role::Held);
    for (std::size_t i = c + 1; i < n_; ++i) role[i] = Role::Free;

    for (auto i : pick(0, c, rng_.geometric(kBlockStop, c))) {
      const auto d = hidden_.stage(i).size();
      if (negated || d < 2) role[i] = Role::Agree;
      else role[i] = std::array{Role::Agree, Role::ROnly, Role::SOnly}[rng_.below(3)];
    }
    role[c] = Role::Both;
    for (auto i : pick(c + 1, n_, rng_.geometric(kBlockStop, n_ - c - 1))) {
      const auto d = hidden_.stage(i).size();
      if (negated) role[i] = std::array{Role::Both, Role::Agree, Role::Held}[rng_.below(3)];
      else role[i] = std::array{Role::Both, Role::ROnly, Role::SOnly, Role::Agree, Role::Held}[rng_.below(5)];
      if (role[i] == Role::Both && d < 2) role[i] = Role::Agree;
    }
    return assemble(kind, role, c, negated);
  }

  PrefStatement plain_statement(StatementKind kind) {
    std::vector<Role> role(n_, Role::Held);
    for (auto i : pick(0, n_, rng_.geometric(kBlockStop, n_)))
      role[i] = std::array{Role::Agree, Role::ROnly, Role::SOnly}[rng_.below(3)];
    if (kind == StatementKind::WeaklyStrict) {
      bool differs = false;
      for (auto i : wide_positions_) differs = differs || role[i] == Role::ROnly || role[i] == Role::SOnly;
      if (!differs) {
        const auto i = wide_positions_[rng_.below(wide_positions_.size())];
        role[i] = rng_.chance(0.5) ? Role::ROnly : Role::SOnly;
      }
    }
    return assemble(kind, role, n_, false);
  }

  PrefStatement assemble(StatementKind kind, const std::vector<Role>& role, std::size_t cut, bool reversed) {
    std::vector<std::pair<VarId, ValueId>> p, q;
    VarSet held = space_.empty_set();
    for (std::size_t i = 0; i < n_; ++i) {
      const auto& st = hidden_.stage(i);
      const VarId x = st.variable();
      const auto d = st.size();
      switch (role[i]) {
        case Role::Held: held.insert(x); break;
        case Role::Free: break;
        case Role::Agree: {
          const auto v = static_cast<ValueId>(rng_.below(d));
          p.emplace_back(x, v);
          q.emplace_back(x, v);
          break;
        }
        case Role::ROnly:
          p.emplace_back(x, i < cut ? st.top() : static_cast<ValueId>(rng_.below(d)));
          break;
        case Role::SOnly:
          q.emplace_back(x, i < cut ? st.bottom() : static_cast<ValueId>(rng_.below(d)));
          break;
        case Role::Both: {
          auto a = static_cast<ValueId>(rng_.below(d));
          auto b = static_cast<ValueId>(rng_.below(d - 1));
          if (b >= a) ++b;
          if (i == cut && st.prefers(a, b) == reversed) std::swap(a, b);
          p.emplace_back(x, a);
          q.emplace_back(x, b);
          break;
        }
      }
    }
    return canonicalize(space_, PartialAssignment::from_entries(space_, std::move(p)),
                        PartialAssignment::from_entries(space_, std::move(q)), held, kind);
  }

  const VariableSpace& space_;
  const LexModel& hidden_;
  Rng& rng_;
  std::size_t n_;
  std::vector<std::size_t> wide_positions_;
};

}  // namespace detail

inline GeneratedInstance gen_instance(const GenConfig& cfg) {
  validate(cfg);
  Rng rng(cfg.seed);
  GeneratedInstance out;
  Instance& inst = out.instance;

  for (std::size_t i = 0; i < cfg.n; ++i) {
    const auto d = rng.between(cfg.dmin, cfg.dmax);
    std::vector<std::string> values;
    for (std::size_t v = 0; v < d; ++v) values.push_back("v" + std::to_string(v));
    inst.space.add_variable("x" + std::to_string(i), std::move(values));
  }
  const auto& space = inst.space;

  std::vector<VarId> order(cfg.n);
  for (std::size_t i = 0; i < cfg.n; ++i) order[i] = static_cast<VarId>(i);
  rng.shuffle(order);
  out.hidden = LexModel(cfg.n);
  for (VarId x : order) {
    std::vector<ValueId> ranking(space.domain_size(x));
    for (std::size_t v = 0; v < ranking.size(); ++v) ranking[v] = static_cast<ValueId>(v);
    rng.shuffle(ranking);
    out.hidden.append(TotalValueOrder(x, std::move(ranking)));
  }

  const auto counts = kind_counts(cfg.g, cfg.kind_mix);
  const bool needs_wide = counts[1] + counts[2] + counts[3] > 0;
  if (needs_wide && space.max_domain_size() < 2)
    throw InvalidInput("strict or negated statements need a variable with at least two values");
  std::vector<StatementKind> kinds;
  const StatementKind all_kinds[] = {StatementKind::NonStrict, StatementKind::FullyStrict,
                                     StatementKind::WeaklyStrict, StatementKind::NegatedNonStrict};
  for (std::size_t k = 0; k < 4; ++k) kinds.insert(kinds.end(), counts[k], all_kinds[k]);
  rng.shuffle(kinds);

  detail::SkeletonBuilder builder(space, out.hidden, rng);
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    auto phi = builder.make(kinds[i]);
    if (!satisfies(out.hidden, phi)) throw Error("generated statement is not satisfied by the hidden model");
    inst.statement_names.push_back("s" + std::to_string(i));
    inst.statements.push_back(std::move(phi));
  }

  if (space.outcome_count(cfg.m) < cfg.m) throw InvalidInput("more alternatives requested than outcomes exist");
  std::unordered_set<Outcome> seen;
  while (inst.outcomes.size() < cfg.m) {
    std::vector<ValueId> vals(cfg.n);
    for (std::size_t x = 0; x < cfg.n; ++x) vals[x] = static_cast<ValueId>(rng.below(space.domain_size(static_cast<VarId>(x))));
    Outcome o(std::move(vals));
    if (!seen.insert(o).second) continue;
    inst.alternatives.push_back(inst.outcomes.size());
    inst.outcome_names.push_back("a" + std::to_string(inst.outcomes.size()));
    inst.outcomes.push_back(std::move(o));
  }
  return out;
}

// The instance text preceded by the hidden model as a comment.
inline std::string write_generated(const GeneratedInstance& gen, const GenConfig& cfg) {
  std::string head = "# generated: n=" + std::to_string(cfg.n) + " g=" + std::to_string(cfg.g) +
                     " m=" + std::to_string(cfg.m) + " seed=" + std::to_string(cfg.seed) + "\n";
  head += "# hidden model: " + format_model(gen.instance.space, gen.hidden) + "\n";
  return head + write_instance(gen.instance);
}

}  // namespace lexpref

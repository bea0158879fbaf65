#pragma once

// Variable spaces, outcomes, partial assignments and lexicographic models.
//
// A lexicographic model is a sequence of stages (X_1, >_1), ..., (X_k, >_k)
// over distinct variables. Two outcomes are compared on the first stage whose
// variable they disagree on; outcomes agreeing on every stage variable are
// equivalent.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lexpref/error.hpp"
#include "lexpref/var_set.hpp"

namespace lexpref {

class VariableSpace {
 public:
  VariableSpace() = default;

  // Declaration order of the values is the canonical tie-break order; it
  // carries no preference meaning.
  VarId add_variable(std::string name, std::vector<std::string> values) {
    if (name.empty()) throw InvalidInput("empty variable name");
    if (index_.contains(name)) throw InvalidInput("duplicate variable '" + name + "'");
    if (values.empty()) throw InvalidInput("variable '" + name + "' has an empty domain");
    std::unordered_map<std::string, ValueId> value_index;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!value_index.emplace(values[i], static_cast<ValueId>(i)).second)
        throw InvalidInput("duplicate value '" + values[i] + "' in domain of '" + name + "'");
    }
    const auto id = static_cast<VarId>(names_.size());
    index_.emplace(name, id);
    names_.push_back(std::move(name));
    values_.push_back(std::move(values));
    value_index_.push_back(std::move(value_index));
    return id;
  }

  std::size_t size() const { return names_.size(); }
  const std::string& name(VarId x) const { return names_.at(x); }
  std::size_t domain_size(VarId x) const { return values_.at(x).size(); }
  const std::string& value_name(VarId x, ValueId v) const { return values_.at(x).at(v); }
  std::size_t max_domain_size() const {
    std::size_t d = 0;
    for (const auto& v : values_) d = std::max(d, v.size());
    return d;
  }

  std::optional<VarId> find_variable(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<ValueId> find_value(VarId x, std::string_view value) const {
    const auto& idx = value_index_.at(x);
    auto it = idx.find(std::string(value));
    if (it == idx.end()) return std::nullopt;
    return it->second;
  }
  VarId variable(std::string_view name) const {
    if (auto x = find_variable(name)) return *x;
    throw InvalidInput("unknown variable '" + std::string(name) + "'");
  }
  ValueId value(VarId x, std::string_view value) const {
    if (auto v = find_value(x, value)) return *v;
    throw InvalidInput("unknown value '" + std::string(value) + "' for variable '" + name(x) + "'");
  }

  VarSet empty_set() const { return VarSet(size()); }
  VarSet all() const { return VarSet::full(size()); }

  VarSet singleton_variables() const {
    VarSet s(size());
    for (std::size_t i = 0; i < size(); ++i)
      if (values_[i].size() == 1) s.insert(static_cast<VarId>(i));
    return s;
  }

  // Number of outcomes, saturating at `cap + 1`.
  std::uint64_t outcome_count(std::uint64_t cap) const {
    std::uint64_t c = 1;
    for (const auto& v : values_) {
      c *= v.size();
      if (c > cap) return cap + 1;
    }
    return c;
  }

  friend bool operator==(const VariableSpace& a, const VariableSpace& b) {
    return a.names_ == b.names_ && a.values_ == b.values_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<std::string>> values_;
  std::unordered_map<std::string, VarId> index_;
  std::vector<std::unordered_map<std::string, ValueId>> value_index_;
};

// A total assignment: one value per variable of the space.
class Outcome {
 public:
  Outcome() = default;
  explicit Outcome(std::vector<ValueId> values) : values_(std::move(values)) {}

  static Outcome checked(const VariableSpace& space, std::vector<ValueId> values) {
    if (values.size() != space.size()) throw InvalidInput("outcome does not assign every variable");
    for (std::size_t i = 0; i < values.size(); ++i)
      if (values[i] >= space.domain_size(static_cast<VarId>(i)))
        throw InvalidInput("outcome value out of domain for '" + space.name(static_cast<VarId>(i)) + "'");
    return Outcome(std::move(values));
  }

  std::size_t size() const { return values_.size(); }
  ValueId operator[](VarId x) const { return values_[x]; }
  const std::vector<ValueId>& values() const { return values_; }

  friend bool operator==(const Outcome&, const Outcome&) = default;
  friend auto operator<=>(const Outcome&, const Outcome&) = default;

 private:
  std::vector<ValueId> values_;
};

// Assignment to a subset of the variables. Entries are kept sorted by variable.
class PartialAssignment {
 public:
  PartialAssignment() = default;
  explicit PartialAssignment(std::size_t universe) : scope_(universe) {}

  // Repeated mention of a variable with the same value is folded; conflicting
  // values are an error.
  static PartialAssignment from_entries(const VariableSpace& space,
                                        std::vector<std::pair<VarId, ValueId>> entries) {
    PartialAssignment pa(space.size());
    std::sort(entries.begin(), entries.end());
    for (const auto& [x, v] : entries) {
      if (x >= space.size()) throw InvalidInput("variable index out of range");
      if (v >= space.domain_size(x))
        throw InvalidInput("value out of domain for '" + space.name(x) + "'");
      if (!pa.entries_.empty() && pa.entries_.back().first == x) {
        if (pa.entries_.back().second != v)
          throw InvalidInput("conflicting values for '" + space.name(x) + "'");
        continue;
      }
      pa.entries_.emplace_back(x, v);
      pa.scope_.insert(x);
    }
    return pa;
  }

  const VarSet& scope() const { return scope_; }
  const std::vector<std::pair<VarId, ValueId>>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool contains(VarId x) const { return scope_.contains(x); }

  ValueId at(VarId x) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), std::pair<VarId, ValueId>{x, 0},
                               [](const auto& a, const auto& b) { return a.first < b.first; });
    if (it == entries_.end() || it->first != x) throw std::out_of_range("variable not in assignment scope");
    return it->second;
  }

  // Restriction to `vars`.
  PartialAssignment restrict_to(const VarSet& vars) const {
    PartialAssignment out(scope_.universe());
    for (const auto& e : entries_)
      if (vars.contains(e.first)) {
        out.entries_.push_back(e);
        out.scope_.insert(e.first);
      }
    return out;
  }

  bool agrees_with(const Outcome& o) const {
    for (const auto& [x, v] : entries_)
      if (o[x] != v) return false;
    return true;
  }

  friend bool operator==(const PartialAssignment&, const PartialAssignment&) = default;

 private:
  VarSet scope_;
  std::vector<std::pair<VarId, ValueId>> entries_;
};

inline PartialAssignment project(const VariableSpace& space, const Outcome& o, const VarSet& vars) {
  if (o.size() != space.size() || vars.universe() != space.size())
    throw InvalidInput("projection over a different variable space");
  std::vector<std::pair<VarId, ValueId>> entries;
  vars.for_each([&](VarId x) { entries.emplace_back(x, o[x]); });
  return PartialAssignment::from_entries(space, std::move(entries));
}

inline PartialAssignment as_assignment(const VariableSpace& space, const Outcome& o) {
  return project(space, o, space.all());
}

// Ranking of a variable's whole domain, best value first.
class TotalValueOrder {
 public:
  TotalValueOrder() = default;
  TotalValueOrder(VarId variable, std::vector<ValueId> ranking)
      : variable_(variable), ranking_(std::move(ranking)), rank_(ranking_.size(), kUnranked) {
    for (std::size_t i = 0; i < ranking_.size(); ++i) {
      const ValueId v = ranking_[i];
      if (v >= ranking_.size() || rank_[v] != kUnranked)
        throw InvalidInput("value order is not a permutation of the domain");
      rank_[v] = static_cast<std::uint32_t>(i);
    }
  }

  static TotalValueOrder checked(const VariableSpace& space, VarId variable, std::vector<ValueId> ranking) {
    if (variable >= space.size()) throw InvalidInput("variable index out of range");
    if (ranking.size() != space.domain_size(variable))
      throw InvalidInput("value order for '" + space.name(variable) + "' does not cover its domain");
    return TotalValueOrder(variable, std::move(ranking));
  }

  // Declaration order of the domain.
  static TotalValueOrder canonical(VarId variable, std::size_t domain_size) {
    std::vector<ValueId> r(domain_size);
    for (std::size_t i = 0; i < domain_size; ++i) r[i] = static_cast<ValueId>(i);
    return TotalValueOrder(variable, std::move(r));
  }

  VarId variable() const { return variable_; }
  const std::vector<ValueId>& ranking() const { return ranking_; }
  std::size_t size() const { return ranking_.size(); }
  std::uint32_t rank(ValueId v) const { return rank_.at(v); }
  ValueId top() const { return ranking_.front(); }
  ValueId bottom() const { return ranking_.back(); }
  bool prefers(ValueId a, ValueId b) const { return rank_[a] < rank_[b]; }

  friend bool operator==(const TotalValueOrder& a, const TotalValueOrder& b) {
    return a.variable_ == b.variable_ && a.ranking_ == b.ranking_;
  }

 private:
  static constexpr std::uint32_t kUnranked = 0xffffffffu;
  VarId variable_ = 0;
  std::vector<ValueId> ranking_;
  std::vector<std::uint32_t> rank_;
};

class LexModel {
 public:
  LexModel() = default;
  explicit LexModel(std::size_t universe) : vars_(universe) {}

  void append(TotalValueOrder stage) {
    if (vars_.contains(stage.variable())) throw InvalidInput("variable already used by the model");
    vars_.insert(stage.variable());
    stages_.push_back(std::move(stage));
  }

  std::size_t universe() const { return vars_.universe(); }
  std::size_t size() const { return stages_.size(); }
  bool empty() const { return stages_.empty(); }
  const std::vector<TotalValueOrder>& stages() const { return stages_; }
  const TotalValueOrder& stage(std::size_t i) const { return stages_.at(i); }
  const VarSet& variables() const { return vars_; }
  bool uses(VarId x) const { return vars_.contains(x); }

  // First `k` stages.
  LexModel prefix(std::size_t k) const {
    LexModel out(universe());
    for (std::size_t i = 0; i < k && i < stages_.size(); ++i) out.append(stages_[i]);
    return out;
  }

  friend bool operator==(const LexModel& a, const LexModel& b) { return a.stages_ == b.stages_; }

 private:
  std::vector<TotalValueOrder> stages_;
  VarSet vars_;
};

enum class Comparison { Better, Worse, Equivalent };

inline Comparison lex_compare(const LexModel& pi, const Outcome& a, const Outcome& b) {
  if (a.size() != b.size() || a.size() != pi.universe())
    throw InvalidInput("outcomes and model over different variable spaces");
  for (const auto& st : pi.stages()) {
    const ValueId va = a[st.variable()];
    const ValueId vb = b[st.variable()];
    if (va != vb) return st.prefers(va, vb) ? Comparison::Better : Comparison::Worse;
  }
  return Comparison::Equivalent;
}

inline bool weakly_prefers(const LexModel& pi, const Outcome& a, const Outcome& b) {
  return lex_compare(pi, a, b) != Comparison::Worse;
}

// `first` followed by the stages of `second` on variables `first` does not use.
inline LexModel compose(const LexModel& first, const LexModel& second) {
  if (first.universe() != second.universe()) throw InvalidInput("models over different variable spaces");
  LexModel out = first;
  for (const auto& st : second.stages())
    if (!first.uses(st.variable())) out.append(st);
  return out;
}

inline bool extends_or_equals(const LexModel& longer, const LexModel& shorter) {
  if (longer.universe() != shorter.universe()) throw InvalidInput("models over different variable spaces");
  if (shorter.size() > longer.size()) return false;
  return std::equal(shorter.stages().begin(), shorter.stages().end(), longer.stages().begin());
}

// Strict extension: `longer` begins with `shorter` and adds at least one stage.
inline bool extends(const LexModel& longer, const LexModel& shorter) {
  return longer.size() > shorter.size() && extends_or_equals(longer, shorter);
}

inline std::string format_order(const VariableSpace& space, const TotalValueOrder& st) {
  std::string s = "(" + space.name(st.variable()) + ", ";
  for (std::size_t i = 0; i < st.size(); ++i) {
    if (i) s += " > ";
    s += space.value_name(st.variable(), st.ranking()[i]);
  }
  return s + ")";
}

// `(var, v1 > v2 > v3); ...`; the empty model prints as `()`.
inline std::string format_model(const VariableSpace& space, const LexModel& pi) {
  if (pi.empty()) return "()";
  std::string s;
  for (std::size_t i = 0; i < pi.size(); ++i) {
    if (i) s += "; ";
    s += format_order(space, pi.stage(i));
  }
  return s;
}

inline std::string format_set(const VariableSpace& space, const VarSet& vars) {
  std::string s = "{";
  bool first = true;
  vars.for_each([&](VarId x) {
    if (!first) s += ", ";
    first = false;
    s += space.name(x);
  });
  return s + "}";
}

inline std::string format_outcome(const VariableSpace& space, const Outcome& o) {
  std::string s = "(";
  for (std::size_t i = 0; i < o.size(); ++i) {
    if (i) s += ", ";
    s += space.value_name(static_cast<VarId>(i), o[static_cast<VarId>(i)]);
  }
  return s + ")";
}

}  // namespace lexpref

template <>
struct std::hash<lexpref::Outcome> {
  std::size_t operator()(const lexpref::Outcome& o) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto v : o.values()) h = (h ^ v) * 0x100000001b3ull;
    return h;
  }
};

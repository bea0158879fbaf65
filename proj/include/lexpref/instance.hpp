#pragma once

// Line-oriented instance files.
//
//   var NAME: v1, v2, ...
//   outcome NAME: VAR=val, VAR=val, ...          (total)
//   stmt NAME: [VAR=val, ...] OP [VAR=val, ...] || {VAR, ...}    OP in >=, >>, >
//   stmt NAME: not ([..] >= [..] || {..})
//   stmt NAME: OUTCOME OP OUTCOME
//   alts: OUTCOME, OUTCOME, ...
//
// `#` starts a comment. The `|| {..}` part is optional. Names are declared
// before use.

#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "lexpref/optimality.hpp"

namespace lexpref {

struct Instance {
  VariableSpace space;
  std::vector<std::string> outcome_names;
  std::vector<Outcome> outcomes;
  std::vector<std::string> statement_names;
  std::vector<PrefStatement> statements;
  std::vector<std::size_t> alternatives;  // indices into outcomes

  std::optional<std::size_t> find_outcome(std::string_view name) const {
    for (std::size_t i = 0; i < outcome_names.size(); ++i)
      if (outcome_names[i] == name) return i;
    return std::nullopt;
  }

  AlternativeSet alternative_set() const {
    std::vector<Outcome> alts;
    for (auto i : alternatives) alts.push_back(outcomes[i]);
    return AlternativeSet(std::move(alts));
  }
};

namespace detail {

class LineCursor {
 public:
  LineCursor(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return pos_ + 1; }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  bool accept(std::string_view tok) {
    skip_ws();
    if (text_.substr(pos_, tok.size()) != tok) return false;
    pos_ += tok.size();
    return true;
  }
  // A keyword: the token not followed by further name characters.
  bool peek_word(std::string_view tok) {
    skip_ws();
    if (text_.substr(pos_, tok.size()) != tok) return false;
    const auto after = pos_ + tok.size();
    return after >= text_.size() || !name_char(text_[after]);
  }
  bool accept_word(std::string_view tok) {
    if (!peek_word(tok)) return false;
    pos_ += tok.size();
    return true;
  }
  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }
  static bool name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
  }
  bool peek_name() {
    skip_ws();
    return pos_ < text_.size() && name_char(text_[pos_]);
  }
  std::string name(const char* what = "a name") {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && name_char(text_[pos_])) ++pos_;
    if (start == pos_) fail(std::string("expected ") + what);
    return std::string(text_.substr(start, pos_ - start));
  }
  void finish() {
    if (!at_end()) fail("unexpected trailing text");
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, pos_ + 1, what); }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

inline std::string_view strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

// Parses `A, B, C` up to the end of the line.
inline std::vector<std::string> name_list(LineCursor& c) {
  std::vector<std::string> out;
  if (c.at_end()) return out;
  do out.push_back(c.name());
  while (c.accept(","));
  c.finish();
  return out;
}

// Resolves names against the instance, reporting failures at the statement.
class StatementReader {
 public:
  StatementReader(const Instance& inst, LineCursor& c, std::string label) : inst_(inst), c_(c), label_(std::move(label)) {}

  [[noreturn]] void semantic(const std::string& what) const { c_.fail(label_ + ": " + what); }

  VarId variable(const std::string& name) const {
    auto x = inst_.space.find_variable(name);
    if (!x) semantic("unknown variable '" + name + "'");
    return *x;
  }

  PartialAssignment assignment() {
    c_.expect("[");
    std::vector<std::pair<VarId, ValueId>> entries;
    if (!c_.accept("]")) {
      do {
        const auto var = c_.name("a variable");
        c_.expect("=");
        const auto val = c_.name("a value");
        const VarId x = variable(var);
        auto v = inst_.space.find_value(x, val);
        if (!v) semantic("unknown value '" + val + "' for variable '" + var + "'");
        entries.emplace_back(x, *v);
      } while (c_.accept(","));
      c_.expect("]");
    }
    try {
      return PartialAssignment::from_entries(inst_.space, std::move(entries));
    } catch (const InvalidInput& e) {
      semantic(e.what());
    }
  }

  VarSet held() {
    VarSet out = inst_.space.empty_set();
    if (!c_.accept("||")) return out;
    c_.expect("{");
    if (!c_.accept("}")) {
      do out.insert(variable(c_.name("a variable")));
      while (c_.accept(","));
      c_.expect("}");
    }
    return out;
  }

  StatementKind op() {
    if (c_.accept(">=")) return StatementKind::NonStrict;
    if (c_.accept(">>")) return StatementKind::FullyStrict;
    if (c_.accept(">")) return StatementKind::WeaklyStrict;
    c_.fail("expected one of '>=', '>>', '>'");
  }

  PrefStatement build(const PartialAssignment& p, const PartialAssignment& q, const VarSet& t, StatementKind k) const {
    try {
      return canonicalize(inst_.space, p, q, t, k);
    } catch (const InvalidInput& e) {
      semantic(e.what());
    }
  }

  const Outcome& outcome(const std::string& name) const {
    auto i = inst_.find_outcome(name);
    if (!i) semantic("unknown outcome '" + name + "'");
    return inst_.outcomes[*i];
  }

  PrefStatement statement() {
    if (c_.accept_word("not")) {
      c_.expect("(");
      auto p = assignment();
      c_.expect(">=");
      auto q = assignment();
      auto t = held();
      c_.expect(")");
      return build(p, q, t, StatementKind::NegatedNonStrict);
    }
    if (c_.peek_name()) {
      const auto& a = outcome(c_.name("an outcome"));
      const auto k = op();
      const auto& b = outcome(c_.name("an outcome"));
      return outcome_statement(inst_.space, a, b, k);
    }
    auto p = assignment();
    const auto k = op();
    auto q = assignment();
    auto t = held();
    return build(p, q, t, k);
  }

 private:
  const Instance& inst_;
  LineCursor& c_;
  std::string label_;
};

}  // namespace detail

inline Instance parse_instance(std::string_view text) {
  Instance inst;
  std::unordered_map<std::string, std::size_t> stmt_index;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    detail::LineCursor c(detail::strip_comment(text.substr(start, end - start)), line_no);
    start = end + 1;
    if (c.at_end()) continue;

    const auto keyword = c.name("a declaration keyword");
    if (keyword == "var") {
      if (!inst.outcomes.empty() || !inst.statements.empty())
        throw ParseError(line_no, 1, "variables must be declared before outcomes and statements");
      const auto name = c.name("a variable name");
      c.expect(":");
      auto values = detail::name_list(c);
      try {
        inst.space.add_variable(name, std::move(values));
      } catch (const InvalidInput& e) {
        c.fail(e.what());
      }
    } else if (keyword == "outcome") {
      const auto name = c.name("an outcome name");
      if (inst.find_outcome(name)) c.fail("duplicate outcome '" + name + "'");
      c.expect(":");
      detail::StatementReader reader(inst, c, "outcome '" + name + "'");
      std::vector<ValueId> values(inst.space.size());
      VarSet seen = inst.space.empty_set();
      do {
        const VarId x = reader.variable(c.name("a variable"));
        c.expect("=");
        const auto val = c.name("a value");
        auto v = inst.space.find_value(x, val);
        if (!v) reader.semantic("unknown value '" + val + "' for variable '" + inst.space.name(x) + "'");
        if (seen.contains(x)) reader.semantic("variable '" + inst.space.name(x) + "' assigned twice");
        seen.insert(x);
        values[x] = *v;
      } while (c.accept(","));
      c.finish();
      if (seen.count() != inst.space.size()) reader.semantic("an outcome must assign every variable");
      inst.outcome_names.push_back(name);
      inst.outcomes.emplace_back(std::move(values));
    } else if (keyword == "stmt") {
      const auto name = c.name("a statement name");
      if (stmt_index.contains(name)) c.fail("duplicate statement '" + name + "'");
      c.expect(":");
      detail::StatementReader reader(inst, c, "statement '" + name + "'");
      auto phi = reader.statement();
      c.finish();
      stmt_index.emplace(name, inst.statements.size());
      inst.statement_names.push_back(name);
      inst.statements.push_back(std::move(phi));
    } else if (keyword == "alts") {
      c.expect(":");
      for (const auto& name : detail::name_list(c)) {
        auto i = inst.find_outcome(name);
        if (!i) c.fail("unknown outcome '" + name + "'");
        inst.alternatives.push_back(*i);
      }
    } else {
      throw ParseError(line_no, 1, "unknown declaration '" + keyword + "'");
    }
  }
  return inst;
}

namespace detail {
inline std::string format_assignment(const VariableSpace& space, const PartialAssignment& a) {
  std::string out = "[";
  bool first = true;
  for (const auto& [x, v] : a.entries()) {
    if (!first) out += ", ";
    first = false;
    out += space.name(x) + "=" + space.value_name(x, v);
  }
  return out + "]";
}
}  // namespace detail

// Written in bracket form with T minus the singleton-domain variables, so the
// text parses back to the same canonical statement.
inline std::string format_statement(const VariableSpace& space, const PrefStatement& phi) {
  std::string body = detail::format_assignment(space, phi.left(space));
  switch (phi.kind()) {
    case StatementKind::NonStrict:
    case StatementKind::NegatedNonStrict: body += " >= "; break;
    case StatementKind::FullyStrict: body += " >> "; break;
    case StatementKind::WeaklyStrict: body += " > "; break;
  }
  body += detail::format_assignment(space, phi.right(space));
  const VarSet t = phi.T() - space.singleton_variables();
  if (!t.empty()) body += " || " + format_set(space, t);
  return phi.negated() ? "not (" + body + ")" : body;
}

inline std::string write_instance(const Instance& inst) {
  std::ostringstream out;
  const auto& space = inst.space;
  for (VarId x = 0; x < space.size(); ++x) {
    out << "var " << space.name(x) << ":";
    for (ValueId v = 0; v < space.domain_size(x); ++v) out << (v ? ", " : " ") << space.value_name(x, v);
    out << "\n";
  }
  for (std::size_t i = 0; i < inst.outcomes.size(); ++i) {
    out << "outcome " << inst.outcome_names[i] << ":";
    for (VarId x = 0; x < space.size(); ++x)
      out << (x ? ", " : " ") << space.name(x) << "=" << space.value_name(x, inst.outcomes[i][x]);
    out << "\n";
  }
  for (std::size_t i = 0; i < inst.statements.size(); ++i)
    out << "stmt " << inst.statement_names[i] << ": " << format_statement(space, inst.statements[i]) << "\n";
  if (!inst.alternatives.empty()) {
    out << "alts:";
    for (std::size_t i = 0; i < inst.alternatives.size(); ++i)
      out << (i ? ", " : " ") << inst.outcome_names[inst.alternatives[i]];
    out << "\n";
  }
  return out.str();
}

// A query is either an outcome comparison or a general statement.
struct OutcomeQuery {
  Outcome a;
  QueryOp op;
  Outcome b;
};
using Query = std::variant<OutcomeQuery, PrefStatement>;

// `a >= b`, `a > b`, `a == b` between named outcomes; `a >> b` and every
// bracket or `not (..)` form become general statements.
inline Query parse_query(const Instance& inst, std::string_view text) {
  detail::LineCursor c(text, 1);
  detail::StatementReader reader(inst, c, "query");
  if (c.peek_name() && !c.peek_word("not")) {
    const auto& a = reader.outcome(c.name("an outcome"));
    std::optional<QueryOp> op;
    if (c.accept("==")) op = QueryOp::Equivalent;
    else if (c.accept(">>")) op = std::nullopt;
    else if (c.accept(">=")) op = QueryOp::AtLeast;
    else if (c.accept(">")) op = QueryOp::Better;
    else c.fail("expected one of '>=', '>>', '>', '=='");
    const auto& b = reader.outcome(c.name("an outcome"));
    c.finish();
    if (op) return OutcomeQuery{a, *op, b};
    return outcome_statement(inst.space, a, b, StatementKind::FullyStrict);
  }
  auto phi = reader.statement();
  c.finish();
  return phi;
}

}  // namespace lexpref

#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace lexpref;
using lexpref::testing::Flight;

namespace {

VarSet vars(const VariableSpace& s, std::initializer_list<VarId> xs) {
  VarSet out = s.empty_set();
  for (auto x : xs) out.insert(x);
  return out;
}

PartialAssignment pa(const VariableSpace& s, std::vector<std::pair<VarId, ValueId>> e) {
  return PartialAssignment::from_entries(s, std::move(e));
}

// KLM >= LAN on airline, time held.
PrefStatement airline_statement(const Flight& f, StatementKind k) {
  return canonicalize(f.space, pa(f.space, {{f.airline, 0}}), pa(f.space, {{f.airline, 1}}), vars(f.space, {f.time}), k);
}

// Satisfaction read directly off the pair set.
bool satisfies_by_pairs(const VariableSpace& space, const LexModel& pi, const PrefStatement& phi) {
  bool all_weak = true, all_strict = true, some_strict = false;
  for (const auto& [a, b] : pairs(space, phi)) {
    const auto c = lex_compare(pi, a, b);
    all_weak = all_weak && c != Comparison::Worse;
    all_strict = all_strict && c == Comparison::Better;
    some_strict = some_strict || c == Comparison::Better;
  }
  switch (phi.kind()) {
    case StatementKind::NonStrict: return all_weak;
    case StatementKind::FullyStrict: return all_strict;
    case StatementKind::WeaklyStrict: return all_weak && some_strict;
    case StatementKind::NegatedNonStrict: return !all_weak;
  }
  return false;
}

}  // namespace

TEST(Canonicalize, FlightExamples) {
  Flight f;
  auto phi = airline_statement(f, StatementKind::NonStrict);
  EXPECT_TRUE(phi.U().empty());
  EXPECT_EQ(phi.R(), vars(f.space, {f.airline}));
  EXPECT_EQ(phi.S(), vars(f.space, {f.airline}));
  EXPECT_EQ(phi.T(), vars(f.space, {f.time}));
  EXPECT_EQ(phi.W(), vars(f.space, {f.klass}));

  auto same = canonicalize(f.space, pa(f.space, {{f.airline, 0}}), pa(f.space, {{f.airline, 0}}), f.space.empty_set(),
                           StatementKind::NonStrict);
  EXPECT_EQ(same.U(), vars(f.space, {f.airline}));
  EXPECT_TRUE(same.R().empty());
  EXPECT_TRUE(same.S().empty());
  EXPECT_EQ(same.W(), vars(f.space, {f.time, f.klass}));

  auto ab = outcome_statement(f.space, f.alpha, f.beta, StatementKind::WeaklyStrict);
  EXPECT_EQ(ab.U(), vars(f.space, {f.airline}));
  EXPECT_EQ(ab.R(), vars(f.space, {f.time, f.klass}));
  EXPECT_EQ(ab.S(), vars(f.space, {f.time, f.klass}));
  EXPECT_TRUE(ab.W().empty());
}

TEST(Canonicalize, Errors) {
  Flight f;
  EXPECT_THROW(canonicalize(f.space, pa(f.space, {{f.airline, 0}}), pa(f.space, {}), vars(f.space, {f.airline}),
                            StatementKind::NonStrict),
               InvalidInput);
  EXPECT_THROW(canonicalize(f.space, pa(f.space, {{f.airline, 0}}), pa(f.space, {}), f.space.empty_set(),
                            StatementKind::NegatedNonStrict),
               InvalidInput);
  auto one_sided = canonicalize(f.space, pa(f.space, {{f.airline, 0}}), pa(f.space, {}), f.space.empty_set(),
                                StatementKind::NonStrict);
  EXPECT_THROW(one_sided.with_kind(StatementKind::NegatedNonStrict), InvalidInput);
  EXPECT_EQ(airline_statement(f, StatementKind::NonStrict).with_kind(StatementKind::NegatedNonStrict).kind(),
            StatementKind::NegatedNonStrict);
}

TEST(Canonicalize, SingletonVariablesGoToHeld) {
  VariableSpace s;
  s.add_variable("x", {"a", "b"});
  s.add_variable("one", {"only"});
  auto phi = canonicalize(s, pa(s, {{0, 0}, {1, 0}}), pa(s, {{0, 1}}), s.empty_set(), StatementKind::NonStrict);
  EXPECT_TRUE(phi.T().contains(1));
  EXPECT_FALSE(phi.R().contains(1));
  EXPECT_TRUE(phi.W().empty());
  EXPECT_EQ(phi.left(s), pa(s, {{0, 0}}));
}

TEST(Pairs, FlightExamples) {
  Flight f;
  EXPECT_EQ(pairs(f.space, airline_statement(f, StatementKind::NonStrict)).size(), 8u);
  auto ab = outcome_statement(f.space, f.alpha, f.beta, StatementKind::NonStrict);
  auto ps = pairs(f.space, ab);
  ASSERT_EQ(ps.size(), 1u);
  EXPECT_EQ(ps[0].first, f.alpha);
  EXPECT_EQ(ps[0].second, f.beta);

  auto trivial = canonicalize(f.space, pa(f.space, {{f.airline, 0}}), pa(f.space, {{f.airline, 0}}),
                              vars(f.space, {f.time, f.klass}), StatementKind::NonStrict);
  auto tp = pairs(f.space, trivial);
  EXPECT_EQ(tp.size(), 4u);
  for (const auto& [a, b] : tp) {
    EXPECT_EQ(a, b);
    EXPECT_EQ(a[f.airline], 0u);
  }
}

TEST(StatementConsistent, Examples) {
  Flight f;
  EXPECT_TRUE(statement_consistent(airline_statement(f, StatementKind::FullyStrict)));
  EXPECT_FALSE(statement_consistent(outcome_statement(f.space, f.alpha, f.alpha, StatementKind::WeaklyStrict)));
  EXPECT_FALSE(statement_consistent(outcome_statement(f.space, f.alpha, f.alpha, StatementKind::FullyStrict)));
  auto taut = canonicalize(f.space, pa(f.space, {}), pa(f.space, {}), f.space.all(), StatementKind::NegatedNonStrict);
  EXPECT_FALSE(statement_consistent(taut));
  for (const auto& pi : enumerate_models(f.space)) EXPECT_FALSE(satisfies(pi, taut));
}

TEST(Projection, FlightExamples) {
  Flight f;
  auto phi = airline_statement(f, StatementKind::NonStrict);
  using P = std::vector<std::pair<ValueId, ValueId>>;
  EXPECT_EQ(projection(f.space, phi, f.space.empty_set(), f.airline), (P{{0, 1}}));
  EXPECT_EQ(projection(f.space, phi, f.space.empty_set(), f.time), (P{{0, 0}, {1, 1}}));
  EXPECT_EQ(projection(f.space, phi, f.space.empty_set(), f.klass), (P{{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
  EXPECT_TRUE(projection(f.space, phi, vars(f.space, {f.airline}), f.klass).empty());
  EXPECT_THROW(projection(f.space, phi, vars(f.space, {f.klass}), f.klass), InvalidInput);
}

TEST(Satisfies, FlightExamples) {
  Flight f;
  LexModel pi(3);
  pi.append(f.order(f.airline, {0, 1}));
  pi.append(f.order(f.time, {0, 1}));
  for (const auto& phi : f.gamma_set) EXPECT_TRUE(satisfies(pi, phi));
  EXPECT_TRUE(satisfies(LexModel(3), airline_statement(f, StatementKind::NonStrict)));
  EXPECT_FALSE(satisfies(LexModel(3), airline_statement(f, StatementKind::FullyStrict)));

  LexModel first(3);
  first.append(f.order(f.airline, {0, 1}));
  for (const auto& phi : f.gamma_set) EXPECT_TRUE(satisfies_star(first, phi));
  for (const auto& phi : f.gamma_set) EXPECT_TRUE(satisfies_star(LexModel(3), phi));
  EXPECT_THROW(satisfies_star(first, outcome_statement(f.space, f.alpha, f.alpha, StatementKind::WeaklyStrict)),
               InvalidInput);
}

class StatementOracle : public ::testing::Test {
 protected:
  Rng rng{77};
  VariableSpace space() { return lexpref::testing::random_space(rng, 1, 3, 1, 3); }
};

TEST_F(StatementOracle, SatisfiesMatchesPairSemantics) {
  for (int i = 0; i < 300; ++i) {
    auto s = space();
    auto phi = lexpref::testing::random_statement(rng, s);
    for (const auto& pi : enumerate_models(s)) ASSERT_EQ(satisfies(pi, phi), satisfies_by_pairs(s, pi, phi));
  }
}

TEST_F(StatementOracle, SatisfiesStarMatchesExtensions) {
  for (int i = 0; i < 150; ++i) {
    auto s = space();
    auto phi = lexpref::testing::random_statement(rng, s);
    if (!statement_consistent(phi)) continue;
    const auto models = enumerate_models(s);
    for (const auto& pi : models) {
      bool some = false;
      for (const auto& longer : models) some = some || (extends_or_equals(longer, pi) && satisfies(longer, phi));
      ASSERT_EQ(satisfies_star(pi, phi), some);
    }
  }
}

TEST_F(StatementOracle, StatementConsistentMatchesEnumeration) {
  for (int i = 0; i < 300; ++i) {
    auto s = space();
    auto phi = lexpref::testing::random_statement(rng, s);
    bool some = false;
    for (const auto& pi : enumerate_models(s)) some = some || satisfies(pi, phi);
    ASSERT_EQ(statement_consistent(phi), some);
  }
}

TEST_F(StatementOracle, ProjectionMatchesPairs) {
  for (int i = 0; i < 300; ++i) {
    auto s = space();
    auto phi = lexpref::testing::random_statement(rng, s);
    VarSet a = s.empty_set();
    for (VarId x = 0; x < s.size(); ++x)
      if (rng.chance(0.4)) a.insert(x);
    if (a.count() == s.size()) continue;
    VarId y;
    do y = static_cast<VarId>(rng.below(s.size()));
    while (a.contains(y));
    std::set<std::pair<ValueId, ValueId>> expected;
    for (const auto& [l, r] : pairs(s, phi)) {
      bool agree = true;
      a.for_each([&](VarId x) { agree = agree && l[x] == r[x]; });
      if (agree) expected.emplace(l[y], r[y]);
    }
    auto got = projection(s, phi, a, y);
    ASSERT_EQ(std::set(got.begin(), got.end()), expected);
  }
}

TEST_F(StatementOracle, StrongCompositionality) {
  for (int i = 0; i < 2000; ++i) {
    auto s = space();
    auto phi = lexpref::testing::random_statement(rng, s);
    if (!statement_consistent(phi)) continue;
    auto pi = lexpref::testing::random_model(rng, s), other = lexpref::testing::random_model(rng, s);
    if (satisfies_star(pi, phi) && satisfies(other, phi)) { ASSERT_TRUE(satisfies(compose(pi, other), phi)); }
  }
}

TEST_F(StatementOracle, NonStrictIsDecreasing) {
  for (int i = 0; i < 2000; ++i) {
    auto s = space();
    auto phi = lexpref::testing::random_statement(rng, s, StatementKind::NonStrict);
    auto pi = lexpref::testing::random_model(rng, s);
    auto longer = compose(pi, lexpref::testing::random_model(rng, s));
    if (satisfies(longer, phi)) { ASSERT_TRUE(satisfies(pi, phi)); }
  }
}

TEST_F(StatementOracle, NegationIsComplement) {
  int checked = 0;
  for (int i = 0; i < 600; ++i) {
    auto s = space();
    auto phi = lexpref::testing::random_statement(rng, s);
    auto neg = negation(s, phi);
    if (!neg) continue;
    ++checked;
    for (const auto& pi : enumerate_models(s)) ASSERT_NE(satisfies(pi, phi), satisfies(pi, *neg));
  }
  EXPECT_GT(checked, 50);
}

TEST(Negation, UnsupportedForms) {
  Flight f;
  auto one_sided = canonicalize(f.space, pa(f.space, {{f.airline, 0}}), pa(f.space, {}), f.space.empty_set(),
                                StatementKind::NonStrict);
  EXPECT_FALSE(negation(f.space, one_sided));
  EXPECT_FALSE(negation(f.space, airline_statement(f, StatementKind::WeaklyStrict)));  // W = {class}
  EXPECT_TRUE(negation(f.space, airline_statement(f, StatementKind::NonStrict)));
  EXPECT_TRUE(negation(f.space, f.gamma_set[0]));
}

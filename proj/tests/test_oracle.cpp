#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace lexpref;
using lexpref::testing::Flight;

namespace {
VariableSpace uniform_space(std::size_t n, std::size_t d) {
  VariableSpace s;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> values;
    for (std::size_t v = 0; v < d; ++v) values.push_back("v" + std::to_string(v));
    s.add_variable("x" + std::to_string(i), values);
  }
  return s;
}
}  // namespace

TEST(Enumeration, Counts) {
  EXPECT_EQ(model_count(uniform_space(1, 2)), 3u);
  EXPECT_EQ(enumerate_models(uniform_space(1, 2)).size(), 3u);
  EXPECT_EQ(enumerate_models(uniform_space(2, 2)).size(), 13u);
  Flight f;
  EXPECT_EQ(enumerate_models(f.space).size(), 79u);
  EXPECT_EQ(model_count(uniform_space(3, 3)), 1531u);
  EXPECT_EQ(enumerate_models(uniform_space(3, 3)).size(), 1531u);
  EXPECT_EQ(enumerate_models(uniform_space(0, 2)).size(), 1u);
}

TEST(Enumeration, DuplicateFreeAndEmptyFirst) {
  const auto models = enumerate_models(uniform_space(3, 3));
  EXPECT_TRUE(models.front().empty());
  std::set<std::string> seen;
  const auto s = uniform_space(3, 3);
  for (const auto& pi : models) EXPECT_TRUE(seen.insert(format_model(s, pi)).second);
}

TEST(Enumeration, CapIsEnforced) {
  EXPECT_THROW(enumerate_models(uniform_space(3, 3), 1000), CapExceeded);
  EXPECT_GT(model_count(uniform_space(12, 3)), kDefaultModelCap);
  EXPECT_THROW(for_each_model(uniform_space(12, 3), [](const LexModel&) {}), CapExceeded);
}

TEST(BruteConsistent, FlightModels) {
  Flight f;
  const auto res = brute_consistent(f.space, f.gamma_set);
  EXPECT_TRUE(res.consistent);
  // (airline, KLM>LAN) followed by time day>night or class economy>business, and their extensions
  EXPECT_EQ(res.models.size(), 6u);
  for (const auto& pi : res.models) {
    ASSERT_GE(pi.size(), 2u);
    EXPECT_EQ(pi.stage(0).variable(), f.airline);
    EXPECT_EQ(pi.stage(0).top(), 0u);
  }
  const PrefStatement bad[] = {outcome_statement(f.space, f.alpha, f.alpha, StatementKind::WeaklyStrict)};
  EXPECT_FALSE(brute_consistent(f.space, bad).consistent);
}

TEST(BruteOracle, SelfConsistency) {
  Rng rng(31);
  int done = 0;
  while (done < 150) {
    auto s = lexpref::testing::random_space(rng, 1, 3, 1, 3);
    auto gamma = lexpref::testing::random_gamma(rng, s, 4);
    const auto brute = brute_consistent(s, gamma);
    if (!brute.consistent) continue;
    ++done;
    const auto maximal = brute_maximal_models(brute.models);
    ASSERT_FALSE(maximal.empty());
    for (const auto& pi : maximal) ASSERT_EQ(pi.variables(), maximal.front().variables());

    const auto alts = lexpref::testing::random_alternatives(rng, s, 6);
    const auto sets = brute_optimal_sets(s, gamma, alts);
    IndexSet no_or_pso;
    std::set_union(sets.no.begin(), sets.no.end(), sets.pso.begin(), sets.pso.end(), std::back_inserter(no_or_pso));
    ASSERT_TRUE(is_subset(no_or_pso, sets.mpo));
    ASSERT_TRUE(is_subset(sets.mpo, sets.po));
    ASSERT_EQ(sets.ext, sets.pso);
  }
}

TEST(BruteOracle, RejectsInconsistentGamma) {
  Flight f;
  const PrefStatement bad[] = {outcome_statement(f.space, f.alpha, f.alpha, StatementKind::WeaklyStrict)};
  EXPECT_THROW(brute_optimal_sets(f.space, bad, f.alternatives()), InconsistentInput);
}

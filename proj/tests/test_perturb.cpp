#include "support/brute.hpp"
#include "support/instances.hpp"

#include "koszpert/perturb.hpp"

#include <doctest.h>

using namespace koszpert;
using namespace koszpert::testing;

TEST_CASE("sequence invariants") {
  const AlgebraPtr r4 = free_algebra(2, {"x", "y"}, 4);
  const SequenceInvariants flagship = sequence_profile(sequence_of(r4, {"x", "y"}));
  CHECK(flagship.a == std::vector<int>{1, 1});
  CHECK(flagship.ar == std::vector<int>{1, 1});
  CHECK(flagship.colon_len == 1);
  // (0:x) = m^4, and ((x):y)/(x) is spanned by y^4
  CHECK(colon(zero_ideal(r4), r4->parse("x")).space() == r4->m_power(4));
  const Subquotient q = colon_quotient(sequence_of(r4, {"x", "y"}), 2);
  CHECK(q.top.contains(r4->parse("y^4").coords));
  CHECK(!q.bottom.contains(r4->parse("y^4").coords));

  const AlgebraPtr r2 = free_algebra(2, {"x", "y"}, 2);
  const SequenceInvariants single = sequence_profile(sequence_of(r2, {"x"}));
  CHECK(single.a == std::vector<int>{1});
  CHECK(single.ar == std::vector<int>{1});
  CHECK(single.a[0] == loewy_length(quotient(annihilator(ideal_span(std::vector{r2->parse("x")}, r2)), zero_ideal(r2))));
  CHECK_THROWS_AS(sequence_profile(sequence_of(r2, {"1 + x"})), std::invalid_argument);
}

TEST_CASE("explicit bound arithmetic") {
  auto check = [](std::vector<int> a, std::vector<int> ar, long long weighted, long long N) {
    const PerturbationBound b = bound_N(a, ar);
    CHECK(b.weighted == weighted);
    CHECK(b.N == N);
  };
  check({1, 1}, {1, 1}, 3, 4);
  check({0}, {0}, 0, 1);
  check({2, 1, 3}, {1, 2, 2}, 16, 17);
  check({0, 0}, {5, 1}, 0, 6);
  CHECK(bound_N(std::vector{1, 1}, std::vector{1, 1}).single_c == 2);
  CHECK(bound_N(std::vector{3}, std::vector{1}).single_c == 3);

  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t s = 1 + rng() % 4;
    std::vector<int> a(s), ar(s);
    for (std::size_t i = 0; i < s; ++i) {
      a[i] = static_cast<int>(rng() % 6);
      ar[i] = static_cast<int>(rng() % 6);
    }
    const long long base = bound_N(a, ar).N;
    std::vector<int> a2 = a, ar2 = ar;
    ++a2[rng() % s];
    ++ar2[rng() % s];
    REQUIRE(bound_N(a2, ar).N >= base);
    REQUIRE(bound_N(a, ar2).N >= base);
  }
}

TEST_CASE("n_k table") {
  const NkTable two = nk_table(std::vector{1, 1});
  CHECK(two.values == std::vector<std::vector<long long>>{{1, 3}, {1, 4}});
  CHECK(nk_table(std::vector{5}).at(1, 1) == 5);
  const NkTable three = nk_table(std::vector{1, 1, 1});
  CHECK(three.values == std::vector<std::vector<long long>>{{1, 3, 7}, {1, 4, 11}, {1, 5, 16}});

  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> a(1 + rng() % 5);
    for (int& v : a) v = static_cast<int>(rng() % 7);
    const NkTable t = nk_table(a);
    const int s = static_cast<int>(a.size());
    for (int k = 2; k <= s; ++k)
      for (int i = 2; i <= s; ++i) REQUIRE(t.at(k, i) == t.at(k, i - 1) + t.at(k - 1, i));
  }
}

TEST_CASE("epsilon enumeration") {
  const AlgebraPtr r2 = free_algebra(2, {"x", "y"}, 2);
  const EpsilonSource eight = EpsilonSource::exhaustive(r2, 2, 1, 1 << 20);
  CHECK(eight.count() == 8);
  std::set<std::vector<long long>> seen;
  for (std::uint64_t i = 0; i < eight.count(); ++i) {
    const auto eps = eight.at(i);
    REQUIRE(r2->m_power(2).contains(eps[0].coords));
    seen.insert(std::vector<long long>(eps[0].coords.data(), eps[0].coords.data() + eps[0].coords.size()));
  }
  CHECK(seen == enumerate_span(r2->m_power(2).basis(), 2));
  CHECK(eight.at(0)[0].is_zero());
  // first coefficient fastest
  CHECK(eight.at(1)[0].coords.transpose() == r2->m_power(2).basis().row(0));

  const EpsilonSource trivial = EpsilonSource::exhaustive(r2, 3, 2, 1 << 20);
  CHECK(trivial.count() == 1);
  CHECK(trivial.at(0)[1].is_zero());
  CHECK_THROWS_AS(EpsilonSource::exhaustive(r2, 1, 2, 100), BudgetExceeded);

  const AlgebraPtr r4 = free_algebra(3, {"x", "y"}, 4);
  const EpsilonSource s1 = EpsilonSource::sampled(r4, 1, 2, 50, 9);
  const EpsilonSource s2 = EpsilonSource::sampled(r4, 1, 2, 50, 9);
  const EpsilonSource other = EpsilonSource::sampled(r4, 1, 2, 50, 10);
  CHECK(s1.at(0)[0].is_zero());
  bool differs = false;
  for (std::uint64_t i = 0; i < 50; ++i) {
    REQUIRE(s1.at(i) == s2.at(i));
    REQUIRE(r4->m_power(1).contains(s1.at(i)[1].coords));
    differs = differs || !(s1.at(i) == other.at(i));
  }
  CHECK(differs);
  CHECK(draw_epsilons(r4, 4, 2, 1 << 20, 10, 0).mode() == EnumerationMode::exhaustive);
  CHECK(draw_epsilons(r4, 1, 2, 1 << 20, 10, 0).mode() == EnumerationMode::sampled);
  CHECK(draw_epsilons(r4, 1, 2, 1 << 20, 10, 0).count() == 10);
}

TEST_CASE("trials") {
  const AlgebraPtr r2 = free_algebra(2, {"x", "y"}, 2);
  const PerturbationContext ctx = PerturbationContext::prepare(sequence_of(r2, {"x"}));
  const TrialResult zero = run_trial(ctx, {r2->zero()}, 2);
  for (std::size_t c = 0; c < kCheckCount; ++c) CHECK(zero.checks[c] != Outcome::fail);
  CHECK(zero.profile == ctx.invariants.base);

  const TrialResult refuted = run_trial(ctx, {r2->parse("x")}, 1);
  CHECK(refuted.outcome(Check::per_index_lengths) == Outcome::fail);
  CHECK(refuted.profile.lengths == std::vector<Index>{6, 6});
  CHECK(ctx.invariants.base.lengths == std::vector<Index>{3, 3});
  CHECK_THROWS_AS(run_trial(ctx, {r2->parse("x")}, 2), std::invalid_argument);
}

TEST_CASE("flagship verification is exhaustive and passes") {
  const AlgebraPtr r4 = free_algebra(2, {"x", "y"}, 4);
  VerifyOptions options;
  options.budget = 1 << 20;
  const PerturbationReport report = verify(sequence_of(r4, {"x", "y"}), options);
  CHECK(report.N == 4);
  CHECK(report.mode == EnumerationMode::exhaustive);
  CHECK(report.trials == 1024);
  CHECK(report.verdict);
  for (std::size_t c = 0; c < kCheckCount; ++c) CHECK(report.tallies[c].fail == 0);
  CHECK(report.tallies[static_cast<std::size_t>(Check::alternating_sum)].pass == 1024);
  CHECK(report.witnesses.empty());
}

TEST_CASE("verification below the bound reports witnesses") {
  const AlgebraPtr r2 = free_algebra(2, {"x", "y"}, 2);
  VerifyOptions options;
  options.N = 1;
  const PerturbationReport report = verify(sequence_of(r2, {"x"}), options);
  CHECK(report.trials == 32);
  CHECK(!report.verdict);
  REQUIRE(!report.witnesses.empty());
  bool found_x = false;
  for (const Witness& w : report.witnesses) {
    CHECK(std::find(w.failed.begin(), w.failed.end(), "c2") != w.failed.end());
    found_x = found_x || w.epsilons == std::vector<std::string>{"x"};
  }
  CHECK(found_x);

  options.N = 3;  // m^3 = 0
  const PerturbationReport trivial = verify(sequence_of(r2, {"x"}), options);
  CHECK(trivial.trials == 1);
  CHECK(trivial.verdict);
}

TEST_CASE("reports do not depend on the thread count") {
  const AlgebraPtr r = free_algebra(3, {"x", "y"}, 3);
  VerifyOptions options;
  options.N = 1;
  options.trials = 300;
  options.seed = 5;
  const SequenceSpec seq = sequence_of(r, {"x", "y^2"});
  options.threads = 1;
  const PerturbationReport one = verify(seq, options);
  options.threads = 4;
  const PerturbationReport four = verify(seq, options);
  CHECK(one.mode == EnumerationMode::sampled);
  CHECK(one.tallies == four.tallies);
  CHECK(one.witnesses == four.witnesses);
  CHECK(one.verdict == four.verdict);
}

TEST_CASE("index search") {
  const AlgebraPtr r2 = free_algebra(2, {"x", "y"}, 2);
  const IndexSearchResult small = index_search(sequence_of(r2, {"x"}), {});
  REQUIRE(small.index);
  CHECK(*small.index == 2);
  CHECK(small.certified);
  CHECK(small.certified_index == 2);
  CHECK(small.gap == 0);
  REQUIRE(small.probes.size() == 2);
  CHECK(small.probes[0].refuted);
  CHECK(small.probes[0].mode == EnumerationMode::exhaustive);
  CHECK(small.probes[0].witness->epsilons == std::vector<std::string>{"x"});
  CHECK(small.probes[1].trials == 8);

  IndexSearchOptions tight;
  tight.max_N = 1;
  CHECK(!index_search(sequence_of(r2, {"x"}), tight).index);
  CHECK_THROWS_AS(index_search(sequence_of(r2, {"x"}), IndexSearchOptions{0}), std::invalid_argument);

  std::mt19937_64 rng(71);
  InstanceLimits limits;
  limits.max_dim = 20;
  limits.max_s = 2;
  for (int trial = 0; trial < 10; ++trial) {
    const Instance inst = random_instance(rng, limits);
    IndexSearchOptions o;
    o.max_N = inst.algebra->loewy_length();
    o.trials = 50;
    REQUIRE(index_search(inst.sequence, o).index);
  }
}

TEST_CASE("truncation stability") {
  const AlgebraPtr r2 = free_algebra(2, {"x", "y"}, 2);
  const StabilityReport free_x = truncation_stability(r2->presentation(), {"x"}, StabilityQuantity::a);
  CHECK(free_x.stable);
  CHECK(free_x.at_D.a == std::vector<int>{1});
  CHECK(free_x.at_next.a == std::vector<int>{1});

  Presentation primary;
  primary.vars = {"x", "y"};
  primary.trunc_degree = 3;
  for (const char* rel : {"x^3", "x^2*y", "x*y^2", "y^3"}) primary.add_relation(rel);
  CHECK(truncation_stability(primary, {"x", "y"}, StabilityQuantity::all).stable);

  Presentation monomial;
  monomial.field = PrimeField(3);
  monomial.vars = {"x", "y"};
  monomial.trunc_degree = 4;
  monomial.add_relation("x*y");
  const StabilityReport xy = truncation_stability(monomial, {"x"}, StabilityQuantity::all);
  CHECK(xy.D == 4);
  CHECK(xy.at_D.a != xy.at_next.a);
  CHECK(!xy.stable);
  CHECK(xy.ar_stable);
}

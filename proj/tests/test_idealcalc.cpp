#include "support/brute.hpp"
#include "support/instances.hpp"

#include "koszpert/oracle.hpp"

#include <doctest.h>

using namespace koszpert;
using namespace koszpert::testing;

namespace {

Ideal gen(const AlgebraPtr& alg, const std::vector<std::string>& texts) {
  std::vector<RingElement> elements;
  for (const auto& t : texts) elements.push_back(alg->parse(t));
  return ideal_span(elements, alg);
}

}  // namespace

TEST_CASE("generated ideals in the free D=2 algebra") {
  const AlgebraPtr r = free_algebra(2, {"x", "y"}, 2);
  CHECK(gen(r, {}).dim() == 0);
  CHECK(gen(r, {"1"}).space().is_full());
  const Ideal x = gen(r, {"x"});
  CHECK(x.dim() == 3);
  CHECK(x == gen(r, {"x", "x^2", "x*y"}));
  CHECK(x.space() == closure_under_variables(*r, r->parse("x").coords.transpose()));
  CHECK(is_submodule(x.space(), *r));
  CHECK(maximal_ideal(r).space() == r->m_power(1));
}

TEST_CASE("generated ideals equal the closure under variables") {
  std::mt19937_64 rng(31);
  InstanceLimits limits;
  limits.max_dim = 60;
  for (int trial = 0; trial < 60; ++trial) {
    const Instance inst = random_instance(rng, limits);
    const Ideal I = inst.sequence.prefix_ideal(inst.sequence.size());
    Matrix seed(inst.sequence.size(), inst.algebra->dim());
    for (int i = 0; i < inst.sequence.size(); ++i) seed.row(i) = inst.sequence.elements[static_cast<std::size_t>(i)].coords.transpose();
    REQUIRE(I.space() == closure_under_variables(*inst.algebra, seed));
    REQUIRE(is_submodule(I.space(), *inst.algebra));
  }
}

TEST_CASE("colon ideals and annihilators") {
  const AlgebraPtr r = free_algebra(2, {"x", "y"}, 2);
  const Ideal x = gen(r, {"x"});
  CHECK(colon(x, r->one()) == x);
  CHECK(colon(unit_ideal(r), r->parse("x")) == unit_ideal(r));
  const Ideal zero_x = colon(zero_ideal(r), r->parse("x"));
  CHECK(zero_x.space() == r->m_power(2));
  CHECK(enumerate_span(zero_x.space().basis(), 2) == scan_annihilator(*r, {r->parse("x")}));

  CHECK(annihilator(zero_ideal(r)) == unit_ideal(r));
  CHECK(annihilator(unit_ideal(r)).dim() == 0);
  const Ideal socle = annihilator(gen(r, {"x", "y"}));
  CHECK(socle.space() == r->m_power(2));
  CHECK(enumerate_span(socle.space().basis(), 2) == scan_annihilator(*r, {r->parse("x"), r->parse("y")}));

  const Ideal xy = colon(x, r->parse("y"));
  CHECK(xy.dim() == 4);
  CHECK(xy == ideal_sum(x, ideal_from_space(r, r->m_power(2))));
  CHECK(length(quotient(xy, x)) == 1);
}

TEST_CASE("annihilators agree with a full scan of R") {
  std::mt19937_64 rng(37);
  InstanceLimits limits;
  limits.max_dim = 12;
  for (int trial = 0; trial < 40; ++trial) {
    const Instance inst = random_instance(rng, limits);
    const auto& alg = *inst.algebra;
    if (std::pow(static_cast<double>(alg.field().characteristic()), static_cast<double>(alg.dim())) > 1 << 16) continue;
    const Ideal I = inst.sequence.prefix_ideal(inst.sequence.size());
    const Ideal ann = annihilator(I);
    REQUIRE(enumerate_span(ann.space().basis(), alg.field().characteristic()) ==
            scan_annihilator(alg, inst.sequence.elements));
    REQUIRE(ann.space() == oracle::exhaustive_annihilator(I, 1 << 16));
  }
}

TEST_CASE("products, sums and intersections") {
  const AlgebraPtr r = free_algebra(2, {"x", "y"}, 2);
  const Ideal x = gen(r, {"x"});
  CHECK(ideal_product(x, unit_ideal(r)) == x);
  CHECK(ideal_product(x, zero_ideal(r)).dim() == 0);
  CHECK(ideal_product(x, maximal_ideal(r)) == gen(r, {"x^2", "x*y"}));
  CHECK(ideal_product(x, maximal_ideal(r)).dim() == 2);
  CHECK(m_times(x, 1) == ideal_product(x, maximal_ideal(r)));
  CHECK(ideal_intersect(x, gen(r, {"y"})) == gen(r, {"x*y"}));
  CHECK(ideal_sum(x, gen(r, {"y"})) == maximal_ideal(r));

  std::mt19937_64 rng(41);
  InstanceLimits limits;
  limits.max_dim = 40;
  for (int trial = 0; trial < 40; ++trial) {
    const Instance inst = random_instance(rng, limits);
    const AlgebraPtr& alg = inst.algebra;
    const Ideal a = ideal_span(std::vector<RingElement>{random_in_m(alg, rng)}, alg);
    const Ideal b = ideal_span(std::vector<RingElement>{random_in_m(alg, rng)}, alg);
    const Ideal ab = ideal_product(a, b);
    REQUIRE(ab == ideal_product(b, a));
    REQUIRE(ideal_intersect(a, b).space().contains(ab.space()));
    REQUIRE(is_submodule(ideal_intersect(a, b).space(), *alg));
    // (a : g) g ⊆ a
    const RingElement g = random_in_m(alg, rng);
    const Ideal col = colon(a, g);
    for (Index k = 0; k < col.dim(); ++k)
      REQUIRE(a.contains(multiply(alg->element(col.space().basis().row(k).transpose()), g)));
  }
}

TEST_CASE("lengths and Loewy lengths") {
  const AlgebraPtr r = free_algebra(2, {"x", "y"}, 2);
  CHECK(length(quotient(unit_ideal(r), zero_ideal(r))) == r->dim());
  CHECK(length(quotient(gen(r, {"x"}), gen(r, {"x"}))) == 0);
  CHECK(loewy_length(quotient(zero_ideal(r), zero_ideal(r))) == 0);
  CHECK(loewy_length(quotient(unit_ideal(r), zero_ideal(r))) == 3);
  const Ideal m2 = ideal_from_space(r, r->m_power(2));
  CHECK(loewy_length(quotient(m2, zero_ideal(r))) == 1);
  CHECK(ideal_product(m2, maximal_ideal(r)).dim() == 0);
  CHECK_THROWS(length(quotient(zero_ideal(r), gen(r, {"x"}))));

  // ℓℓ(R/m^k) = k on free algebras
  const AlgebraPtr big = free_algebra(3, {"x", "y"}, 4);
  for (int k = 0; k <= 5; ++k)
    CHECK(loewy_length(quotient(unit_ideal(big), ideal_from_space(big, big->m_power(k)))) == k);
}

TEST_CASE("Artin-Rees numbers") {
  const AlgebraPtr r = free_algebra(2, {"x", "y"}, 2);
  CHECK(artin_rees(zero_ideal(r)) == 0);
  CHECK(artin_rees(unit_ideal(r)) == 0);
  CHECK(artin_rees(gen(r, {"x"})) == 1);
  CHECK(artin_rees(maximal_ideal(r)) == 1);

  const oracle::ArtinReesTable zero = oracle::naive_artin_rees(zero_ideal(r));
  CHECK(zero.c == 0);
  for (int n = 0; n <= zero.loewy; ++n) CHECK(zero.holds[0][static_cast<std::size_t>(n)]);

  const oracle::ArtinReesTable x = oracle::naive_artin_rees(gen(r, {"x"}));
  CHECK(x.c == 1);
  CHECK(x.loewy == 3);
  CHECK(x.holds[0][0]);
  CHECK(!x.holds[0][1]);
  CHECK(!x.holds[0][2]);
  for (int n = 1; n <= 3; ++n) CHECK(x.holds[1][static_cast<std::size_t>(n)]);
}

TEST_CASE("Artin-Rees numbers agree with the naive table") {
  std::mt19937_64 rng(43);
  InstanceLimits limits;
  limits.max_dim = 40;
  for (int trial = 0; trial < 40; ++trial) {
    const Instance inst = random_instance(rng, limits);
    for (int i = 1; i <= inst.sequence.size(); ++i) {
      const Ideal I = inst.sequence.prefix_ideal(i);
      REQUIRE(artin_rees(I) == oracle::naive_artin_rees(I).c);
    }
  }
}

#include "support/instances.hpp"

#include "koszpert/perturb.hpp"

#include <doctest.h>

using namespace koszpert;
using namespace koszpert::testing;

TEST_CASE("complex shape and signs") {
  const AlgebraPtr r = free_algebra(2, {"x", "y"}, 2);
  const KoszulComplex two(sequence_of(r, {"x", "y"}));
  CHECK(two.term_rank(0) == 1);
  CHECK(two.term_rank(1) == 2);
  CHECK(two.term_rank(2) == 1);
  CHECK(two.term_rank(3) == 0);

  // d(e_12) = x e_2 - y e_1
  const auto d2 = two.differential(2);
  REQUIRE(d2.size() == 2);
  CHECK(d2[0].row == 1);
  CHECK(d2[0].element == 0);
  CHECK(d2[0].sign == 1);
  CHECK(d2[1].row == 0);
  CHECK(d2[1].element == 1);
  CHECK(d2[1].sign == -1);

  const KoszulComplex one(sequence_of(r, {"x"}));
  CHECK(one.expanded_differential(1) == r->mult_operator(r->parse("x")));
  CHECK(one.expanded_differential(2).size() == 0);
}

TEST_CASE("d∘d = 0 on random sequences") {
  std::mt19937_64 rng(53);
  InstanceLimits limits;
  limits.max_dim = 60;
  for (int trial = 0; trial < 40; ++trial) {
    const Instance inst = random_instance(rng, limits);
    const KoszulComplex complex(inst.sequence);
    const PrimeField& f = inst.algebra->field();
    for (int k = 1; k <= complex.length() + 1; ++k) {
      const Matrix dd = multiply(complex.expanded_differential(k - 1), complex.expanded_differential(k), f);
      REQUIRE(dd.isZero());
    }
  }
}

TEST_CASE("homology of small sequences") {
  const AlgebraPtr r = free_algebra(2, {"x", "y"}, 2);
  const HomologyProfile x = homology_profile(KoszulComplex(sequence_of(r, {"x"})));
  CHECK(x.lengths == std::vector<Index>{3, 3});
  const HomologyProfile xy = homology_profile(KoszulComplex(sequence_of(r, {"x", "y"})));
  CHECK(xy.lengths == std::vector<Index>{1, 4, 3});
  CHECK(euler_sum(xy) == -1);
  CHECK(euler_sum(xy) == -static_cast<long long>(length(colon_quotient(sequence_of(r, {"x", "y"}), 2))));

  const HomologyProfile unit = homology_profile(KoszulComplex(sequence_of(r, {"1"})));
  CHECK(unit.lengths == std::vector<Index>{0, 0});
  CHECK(euler_sum(unit) == 0);
  const HomologyProfile unit2 = homology_profile(KoszulComplex(sequence_of(r, {"1", "y"})));
  CHECK(unit2.lengths == std::vector<Index>{0, 0, 0});
}

TEST_CASE("boundary homology, Euler characteristic and rank-only lengths") {
  std::mt19937_64 rng(59);
  InstanceLimits limits;
  limits.max_dim = 60;
  for (int trial = 0; trial < 40; ++trial) {
    const Instance inst = random_instance(rng, limits);
    CAPTURE(inst.description);
    const KoszulComplex complex(inst.sequence);
    const HomologyProfile profile = homology_profile(complex);
    REQUIRE(profile.lengths == homology_lengths(complex));
    const int s = inst.sequence.size();
    const Ideal I = inst.sequence.prefix_ideal(s);
    REQUIRE(profile.lengths[0] == length(quotient(unit_ideal(inst.algebra), I)));
    REQUIRE(profile.lengths[static_cast<std::size_t>(s)] == annihilator(I).dim());
    REQUIRE(profile.lengths[0] + euler_sum(profile) == 0);
    REQUIRE(euler_sum(profile) == -static_cast<long long>(length(colon_quotient(inst.sequence, s))));

    const HomologyModule top = homology_module(complex, s);
    REQUIRE(top.cycles == annihilator(I).space());
    REQUIRE(top.boundaries.is_zero());
    for (int k = 0; k <= s; ++k) {
      const HomologyModule h = homology_module(complex, k);
      REQUIRE(h.cycles.contains(h.boundaries));
      REQUIRE(is_submodule(h.cycles, *inst.algebra, h.copies));
      REQUIRE(is_submodule(h.boundaries, *inst.algebra, h.copies));
      // I annihilates Koszul homology
      REQUIRE(loewy_length(as_subquotient(h, inst.algebra)) <= inst.algebra->loewy_length());
      for (const RingElement& x : inst.sequence.elements) {
        Matrix op = Matrix::Zero(h.cycles.ambient_dim(), h.cycles.ambient_dim());
        const Index n = inst.algebra->dim();
        for (Index b = 0; b < h.copies; ++b) op.block(b * n, b * n, n, n) = inst.algebra->mult_operator(x);
        REQUIRE(h.boundaries.contains(image_subspace(op, h.cycles)));
      }
    }
  }
}

TEST_CASE("top homology fingerprints") {
  const AlgebraPtr r = free_algebra(2, {"x", "y"}, 2);
  const KoszulComplex a(sequence_of(r, {"x"}));
  const KoszulComplex b(sequence_of(r, {"x + x^2"}));
  const Fingerprint fa = submodule_fingerprint(homology_module(a, 1));
  CHECK(fa == submodule_fingerprint(homology_module(b, 1)));
  CHECK(fa.cycles == r->m_power(2));
  CHECK(fa == submodule_fingerprint(homology_module(KoszulComplex(sequence_of(r, {"x"})), 1)));
}

TEST_CASE("sequence parsing errors carry the item position") {
  const AlgebraPtr r = free_algebra(2, {"x", "y"}, 2);
  try {
    parse_sequence(r, {"x", "y + q"});
    FAIL("expected an error");
  } catch (const ParseError& e) {
    CHECK(e.source() == "--seq");
    CHECK(e.line() == 2);
    CHECK(e.token() == "q");
  }
}

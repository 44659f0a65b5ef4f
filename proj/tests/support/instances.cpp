#include "instances.hpp"

#include <sstream>

namespace koszpert::testing {

Presentation random_presentation(std::mt19937_64& rng, const InstanceLimits& limits) {
  static const Residue primes[] = {2, 3, 5};
  Presentation pres;
  pres.field = PrimeField(primes[rng() % 3]);
  const int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(limits.max_vars));
  static const char* names[] = {"x", "y", "z", "w"};
  for (int j = 0; j < n; ++j) pres.vars.emplace_back(names[j]);
  pres.trunc_degree = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(limits.max_D));

  const int rels = static_cast<int>(rng() % static_cast<std::uint64_t>(limits.max_relations + 1));
  for (int r = 0; r < rels && pres.trunc_degree >= 2; ++r) {
    Polynomial poly;
    const int terms = 1 + static_cast<int>(rng() % 3);
    for (int t = 0; t < terms; ++t) {
      Exponents e(static_cast<std::size_t>(n), 0);
      const int degree = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(pres.trunc_degree - 1));
      for (int k = 0; k < degree; ++k) ++e[rng() % static_cast<std::uint64_t>(n)];
      poly.terms[e] = 1 + static_cast<Residue>(rng() % static_cast<std::uint64_t>(pres.field.characteristic() - 1));
    }
    pres.add_relation(format_polynomial(poly, pres.vars));
  }
  return pres;
}

RingElement random_in_m(const AlgebraPtr& alg, std::mt19937_64& rng, double density) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const Residue p = alg->field().characteristic();
  Vector coords = Vector::Zero(alg->dim());
  for (Index t = 1; t < alg->dim(); ++t)
    if (coin(rng) < density) coords(t) = static_cast<Residue>(rng() % static_cast<std::uint64_t>(p));
  return alg->element(coords);
}

RingElement random_element(const AlgebraPtr& alg, std::mt19937_64& rng) {
  const Residue p = alg->field().characteristic();
  Vector coords(alg->dim());
  for (Index t = 0; t < alg->dim(); ++t) coords(t) = static_cast<Residue>(rng() % static_cast<std::uint64_t>(p));
  return alg->element(coords);
}

Instance random_instance(std::mt19937_64& rng, const InstanceLimits& limits) {
  while (true) {
    AlgebraPtr alg = build_algebra(random_presentation(rng, limits));
    if (alg->dim() > limits.max_dim) continue;
    const int s = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(limits.max_s));
    std::vector<RingElement> elements;
    for (int i = 0; i < s; ++i) elements.push_back(random_in_m(alg, rng));
    SequenceSpec seq = make_sequence(alg, std::move(elements));
    std::ostringstream d;
    const Presentation& pres = alg->presentation();
    d << "p=" << pres.field.characteristic() << " n=" << pres.num_vars() << " D=" << pres.trunc_degree
      << " rels=" << pres.relation_texts.size() << " dim=" << alg->dim() << " s=" << s;
    return {alg, std::move(seq), d.str()};
  }
}

AlgebraPtr free_algebra(Residue p, std::vector<std::string> vars, int D) {
  Presentation pres;
  pres.field = PrimeField(p);
  pres.vars = std::move(vars);
  pres.trunc_degree = D;
  return build_algebra(std::move(pres));
}

SequenceSpec sequence_of(const AlgebraPtr& alg, const std::vector<std::string>& texts) {
  return parse_sequence(alg, texts);
}

}  // namespace koszpert::testing

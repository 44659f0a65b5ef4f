#include "koszpert/oracle.hpp"

#include "koszpert/perturb.hpp"

#include <sstream>

namespace koszpert::oracle {

namespace {

Matrix block_diagonal(const Matrix& op, Index copies) {
  const Index n = op.rows();
  Matrix out = Matrix::Zero(n * copies, n * copies);
  for (Index b = 0; b < copies; ++b) out.block(b * n, b * n, n, n) = op;
  return out;
}

struct Module {
  Index copies;
  Subspace cycles;
  Subspace boundaries;
};

std::string render(const std::vector<Index>& values) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? ", " : "") << values[i];
  out << "]";
  return out.str();
}

/// A ∩ B as {A^T α : A^T α = B^T β}.
Subspace kernel_intersection(const Subspace& a, const Subspace& b) {
  const PrimeField& field = a.field();
  const Index n = a.ambient_dim();
  Matrix system(n, a.dim() + b.dim());
  system << a.basis().transpose(), field.reduced(-b.basis().transpose());
  const Subspace solutions = kernel_basis(system, field);
  const Matrix combos = solutions.basis().leftCols(a.dim());
  return Subspace::span(multiply(combos, a.basis(), field), field);
}

/// span{u v : u ∈ rows(a), v ∈ rows(b)} using the algebra's structure constants.
Subspace product_span(const LocalAlgebra& alg, const Subspace& a, const Subspace& b) {
  std::vector<Vector> products;
  for (Index i = 0; i < a.dim(); ++i) {
    const RingElement u = alg.element(a.basis().row(i).transpose());
    for (Index j = 0; j < b.dim(); ++j)
      products.push_back(alg.multiply(u, alg.element(b.basis().row(j).transpose())).coords);
  }
  Matrix rows(static_cast<Index>(products.size()), alg.dim());
  for (std::size_t r = 0; r < products.size(); ++r) rows.row(static_cast<Index>(r)) = products[r].transpose();
  return Subspace::span(std::move(rows), alg.field());
}

std::string describe(const SequenceSpec& seq) {
  const Presentation& pres = seq.algebra->presentation();
  std::ostringstream out;
  out << "p=" << pres.field.characteristic() << " D=" << pres.trunc_degree << " vars=";
  for (std::size_t j = 0; j < pres.vars.size(); ++j) out << (j ? "," : "") << pres.vars[j];
  out << " rels=" << pres.relation_texts.size() << " seq=(";
  for (std::size_t i = 0; i < seq.labels.size(); ++i) out << (i ? ", " : "") << seq.labels[i];
  out << ")";
  return out.str();
}

}  // namespace

std::vector<Index> les_homology_lengths(const SequenceSpec& seq) {
  const int s = seq.size();
  if (s < 1) throw std::invalid_argument("les_homology_lengths: empty sequence");
  const AlgebraPtr& alg = seq.algebra;
  const PrimeField& field = alg->field();
  const Index dim = alg->dim();

  // Homology of x_1..x_{s-1}; for s = 1 the empty complex has H_0 = R.
  std::vector<Module> shorter;
  if (s == 1) {
    shorter.push_back({1, Subspace::full(field, dim), Subspace::zero(field, dim)});
  } else {
    SequenceSpec head{alg, {seq.elements.begin(), seq.elements.end() - 1}, {}};
    const KoszulComplex complex(head);
    for (int n = 0; n <= s - 1; ++n) {
      HomologyModule h = homology_module(complex, n);
      shorter.push_back({h.copies, std::move(h.cycles), std::move(h.boundaries)});
    }
  }

  const Matrix x_op = alg->mult_operator(seq.elements.back());
  std::vector<Index> quotient_len, kernel_len;  // ℓ(H'/xH'), ℓ(0 :_{H'} x)
  for (const Module& m : shorter) {
    const Matrix op = block_diagonal(x_op, m.copies);
    const Subspace x_cycles = image_subspace(op, m.cycles);
    quotient_len.push_back(m.cycles.dim() - subspace_sum(m.boundaries, x_cycles).dim());
    const Subspace killed = subspace_intersect(m.cycles, preimage_subspace(op, m.boundaries));
    kernel_len.push_back(killed.dim() - m.boundaries.dim());
  }

  std::vector<Index> lengths;
  for (int n = 0; n <= s; ++n) {
    Index value = 0;
    if (n <= s - 1) value += quotient_len[static_cast<std::size_t>(n)];
    if (n >= 1) value += kernel_len[static_cast<std::size_t>(n - 1)];
    lengths.push_back(value);
  }
  return lengths;
}

Subspace exhaustive_annihilator(const Ideal& ideal, std::uint64_t budget) {
  const LocalAlgebra& alg = *ideal.algebra();
  const Residue p = alg.field().characteristic();
  const auto total = enumeration_size(p, alg.dim(), 1, budget);
  if (!total) throw BudgetExceeded("exhaustive_annihilator: p^dim(R) exceeds the budget");

  std::vector<Vector> hits;
  Vector f = Vector::Zero(alg.dim());
  for (std::uint64_t index = 0; index < *total; ++index) {
    std::uint64_t rest = index;
    for (Index t = 0; t < alg.dim(); ++t) {
      f(t) = static_cast<Residue>(rest % static_cast<std::uint64_t>(p));
      rest /= static_cast<std::uint64_t>(p);
    }
    const RingElement candidate = alg.element(f);
    bool kills = true;
    for (const RingElement& g : ideal.generators())
      if (!alg.multiply(g, candidate).is_zero()) {
        kills = false;
        break;
      }
    if (kills) hits.push_back(f);
  }
  Matrix rows(static_cast<Index>(hits.size()), alg.dim());
  for (std::size_t r = 0; r < hits.size(); ++r) rows.row(static_cast<Index>(r)) = hits[r].transpose();
  return Subspace::span(std::move(rows), alg.field());
}

ArtinReesTable naive_artin_rees(const Ideal& ideal) {
  const LocalAlgebra& alg = *ideal.algebra();
  const PrimeField& field = alg.field();
  const Index dim = alg.dim();

  // m = span{x_j f}; m^k = m * m^{k-1}, until zero.
  const Subspace whole = Subspace::full(field, dim);
  Matrix var_rows(alg.num_vars(), dim);
  for (int j = 0; j < alg.num_vars(); ++j) var_rows.row(j) = alg.variable(j).coords.transpose();
  const Subspace m = product_span(alg, Subspace::span(var_rows, field), whole);
  std::vector<Subspace> powers{whole};
  while (!powers.back().is_zero()) powers.push_back(product_span(alg, m, powers.back()));

  ArtinReesTable table;
  table.loewy = static_cast<int>(powers.size()) - 1;
  const int L = table.loewy;
  std::vector<Subspace> cut;
  for (int n = 0; n <= L; ++n) cut.push_back(kernel_intersection(powers[static_cast<std::size_t>(n)], ideal.space()));

  table.holds.assign(static_cast<std::size_t>(L) + 1, std::vector<bool>(static_cast<std::size_t>(L) + 1, false));
  table.c = -1;
  for (int c = 0; c <= L; ++c) {
    bool row_ok = true;
    for (int n = c; n <= L; ++n) {
      const Subspace rhs = product_span(alg, powers[static_cast<std::size_t>(n - c)], cut[static_cast<std::size_t>(c)]);
      const bool ok = rhs == cut[static_cast<std::size_t>(n)];
      table.holds[static_cast<std::size_t>(c)][static_cast<std::size_t>(n)] = ok;
      row_ok = row_ok && ok;
    }
    if (row_ok && table.c < 0) table.c = c;
  }
  return table;
}

std::vector<OracleReport> cross_check(const SequenceSpec& seq, std::uint64_t budget) {
  std::vector<OracleReport> reports;
  const std::string instance = describe(seq);
  auto add = [&](std::string quantity, std::string main_value, std::string oracle_value) {
    const bool agree = main_value == oracle_value;
    reports.push_back({std::move(quantity), std::move(main_value), std::move(oracle_value), agree, instance});
  };

  const AlgebraPtr& alg = seq.algebra;
  const int s = seq.size();
  const KoszulComplex complex(seq);
  const std::vector<Index> direct = homology_lengths(complex);
  add("homology_lengths", render(direct), render(les_homology_lengths(seq)));

  const Ideal I = seq.prefix_ideal(s);
  add("H0_equals_R_mod_I", std::to_string(direct.front()),
      std::to_string(length(quotient(unit_ideal(alg), I))));
  const Ideal ann = annihilator(I);
  add("Hs_equals_annihilator", std::to_string(direct.back()), std::to_string(ann.dim()));

  HomologyProfile profile;
  profile.lengths = direct;
  const Subquotient last = colon_quotient(seq, s);
  add("euler_sum", std::to_string(euler_sum(profile)), std::to_string(-static_cast<long long>(length(last))));

  if (enumeration_size(alg->field().characteristic(), alg->dim(), 1, budget)) {
    const Subspace brute = exhaustive_annihilator(I, budget);
    add("annihilator_dim", std::to_string(ann.dim()), std::to_string(brute.dim()));
    add("annihilator_equal", "true", ann.space() == brute ? "true" : "false");
  }

  for (int i = 1; i <= s; ++i) {
    const Ideal prefix = seq.prefix_ideal(i);
    add("artin_rees_" + std::to_string(i), std::to_string(artin_rees(prefix)),
        std::to_string(naive_artin_rees(prefix).c));
  }
  return reports;
}

}  // namespace koszpert::oracle

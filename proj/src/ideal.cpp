#include "koszpert/ideal.hpp"

#include <stdexcept>

namespace koszpert {

namespace {

void require_algebra(const AlgebraPtr& expected, const RingElement& a) {
  if (a.algebra != expected) throw std::invalid_argument("ring element belongs to a different algebra");
}

void require_same(const Ideal& a, const Ideal& b) {
  if (a.algebra() != b.algebra()) throw std::invalid_argument("ideals belong to different algebras");
}

std::vector<RingElement> basis_elements(const AlgebraPtr& algebra, const Subspace& space) {
  std::vector<RingElement> out;
  out.reserve(static_cast<std::size_t>(space.dim()));
  for (Index i = 0; i < space.dim(); ++i) out.push_back(algebra->element(space.basis().row(i).transpose()));
  return out;
}

/// Apply x_j to every block of every basis vector of a submodule of R^copies.
Matrix act(const Matrix& rows, const Matrix& op, Index dim_r, Index copies, const PrimeField& field) {
  Matrix out(rows.rows(), rows.cols());
  for (Index b = 0; b < copies; ++b)
    out.middleCols(b * dim_r, dim_r) = rows.middleCols(b * dim_r, dim_r) * op.transpose();
  return field.reduced(out);
}

}  // namespace

Ideal::Ideal(AlgebraPtr algebra, Subspace space, std::vector<RingElement> generators)
    : algebra_(std::move(algebra)), space_(std::move(space)), generators_(std::move(generators)) {}

Ideal ideal_span(std::span<const RingElement> generators, const AlgebraPtr& algebra) {
  const Index n = algebra->dim();
  Matrix rows(n * static_cast<Index>(generators.size()), n);
  Index at = 0;
  for (const RingElement& g : generators) {
    require_algebra(algebra, g);
    // columns of the multiplication operator are g * (standard monomial)
    rows.middleRows(at, n) = algebra->mult_operator(g).transpose();
    at += n;
  }
  return Ideal(algebra, Subspace::span(std::move(rows), algebra->field()),
               std::vector<RingElement>(generators.begin(), generators.end()));
}

Ideal zero_ideal(const AlgebraPtr& algebra) {
  return Ideal(algebra, Subspace::zero(algebra->field(), algebra->dim()), {});
}

Ideal unit_ideal(const AlgebraPtr& algebra) {
  return Ideal(algebra, Subspace::full(algebra->field(), algebra->dim()), {algebra->one()});
}

Ideal maximal_ideal(const AlgebraPtr& algebra) {
  std::vector<RingElement> vars;
  for (int j = 0; j < algebra->num_vars(); ++j) vars.push_back(algebra->variable(j));
  return Ideal(algebra, algebra->m_power(1), std::move(vars));
}

Ideal ideal_from_space(const AlgebraPtr& algebra, Subspace space) {
  std::vector<RingElement> gens = basis_elements(algebra, space);
  return Ideal(algebra, std::move(space), std::move(gens));
}

Ideal colon(const Ideal& ideal, const RingElement& a) {
  require_algebra(ideal.algebra(), a);
  return ideal_from_space(ideal.algebra(),
                          preimage_subspace(ideal.algebra()->mult_operator(a), ideal.space()));
}

Ideal annihilator(const Ideal& ideal) {
  const AlgebraPtr& algebra = ideal.algebra();
  Subspace result = Subspace::full(algebra->field(), algebra->dim());
  const Subspace zero = Subspace::zero(algebra->field(), algebra->dim());
  for (const RingElement& g : ideal.generators())
    result = subspace_intersect(result, preimage_subspace(algebra->mult_operator(g), zero));
  return ideal_from_space(algebra, std::move(result));
}

Ideal ideal_sum(const Ideal& a, const Ideal& b) {
  require_same(a, b);
  std::vector<RingElement> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return Ideal(a.algebra(), subspace_sum(a.space(), b.space()), std::move(gens));
}

Ideal ideal_intersect(const Ideal& a, const Ideal& b) {
  require_same(a, b);
  return ideal_from_space(a.algebra(), subspace_intersect(a.space(), b.space()));
}

Ideal ideal_product(const Ideal& a, const Ideal& b) {
  require_same(a, b);
  const AlgebraPtr& algebra = a.algebra();
  const PrimeField& field = algebra->field();
  const Index n = algebra->dim();
  Matrix rows(a.dim() * b.dim(), n);
  Index at = 0;
  for (Index i = 0; i < a.dim(); ++i) {
    const Matrix op = algebra->mult_operator(algebra->element(a.space().basis().row(i).transpose()));
    rows.middleRows(at, b.dim()) = multiply(b.space().basis(), op.transpose(), field);
    at += b.dim();
  }
  return ideal_from_space(algebra, Subspace::span(std::move(rows), field));
}

Subspace maximal_times(const Subspace& module, const LocalAlgebra& algebra, Index copies) {
  const Index n = algebra.dim();
  if (module.ambient_dim() != n * copies) throw std::invalid_argument("maximal_times: ambient mismatch");
  const auto vars = static_cast<Index>(algebra.num_vars());
  Matrix rows(module.dim() * vars, module.ambient_dim());
  for (Index j = 0; j < vars; ++j)
    rows.middleRows(j * module.dim(), module.dim()) =
        act(module.basis(), algebra.var_op(static_cast<int>(j)), n, copies, algebra.field());
  return Subspace::span(std::move(rows), algebra.field());
}

bool is_submodule(const Subspace& module, const LocalAlgebra& algebra, Index copies) {
  return module.contains(maximal_times(module, algebra, copies));
}

Ideal m_times(const Ideal& ideal, int n) {
  Subspace s = ideal.space();
  for (int k = 0; k < n && !s.is_zero(); ++k) s = maximal_times(s, *ideal.algebra());
  return ideal_from_space(ideal.algebra(), std::move(s));
}

Subquotient quotient(const Ideal& top, const Ideal& bottom) {
  require_same(top, bottom);
  return {top.algebra(), top.space(), bottom.space(), 1};
}

Index length(const Subquotient& q) {
  if (!q.top.contains(q.bottom)) throw std::invalid_argument("length: bottom is not contained in top");
  return q.top.dim() - q.bottom.dim();
}

int loewy_length(const Subquotient& q) {
  if (!q.top.contains(q.bottom)) throw std::invalid_argument("loewy_length: bottom is not contained in top");
  Subspace power = q.top;  // m^n top
  int n = 0;
  while (!q.bottom.contains(power)) {
    power = maximal_times(power, *q.algebra, q.copies);
    ++n;
    if (n > q.algebra->loewy_length())
      throw std::logic_error("loewy_length: m^n did not vanish by the Loewy length of R");
  }
  return n;
}

int artin_rees(const Ideal& ideal) {
  const LocalAlgebra& algebra = *ideal.algebra();
  const int L = algebra.loewy_length();
  std::vector<Subspace> cut;  // m^n ∩ I
  for (int n = 0; n <= L; ++n) cut.push_back(subspace_intersect(algebra.m_power(n), ideal.space()));

  for (int c = 0; c <= L; ++c) {
    bool holds = true;
    Subspace rhs = cut[static_cast<std::size_t>(c)];  // m^{n-c}(m^c ∩ I), starting at n = c
    for (int n = c; n <= L && holds; ++n) {
      if (n > c) rhs = maximal_times(rhs, algebra);
      holds = rhs == cut[static_cast<std::size_t>(n)];
    }
    if (holds) return c;
  }
  throw std::logic_error("artin_rees: no valid c up to the Loewy length of R");
}

}  // namespace koszpert

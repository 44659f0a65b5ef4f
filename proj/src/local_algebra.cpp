#include "koszpert/local_algebra.hpp"

#include <algorithm>
#include <stdexcept>

namespace koszpert {

namespace {

void append_degree(int num_vars, int degree, Exponents& prefix, std::vector<Exponents>& out) {
  const int slot = static_cast<int>(prefix.size());
  if (slot == num_vars - 1) {
    prefix.push_back(degree);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int e = degree; e >= 0; --e) {
    prefix.push_back(e);
    append_degree(num_vars, degree - e, prefix, out);
    prefix.pop_back();
  }
}

Exponents add_exponents(const Exponents& a, const Exponents& b) {
  Exponents out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

void require_same_algebra(const RingElement& a, const RingElement& b) {
  if (a.algebra != b.algebra) throw std::invalid_argument("ring elements from different algebras");
}

}  // namespace

std::vector<Exponents> monomials_up_to(int num_vars, int max_degree) {
  std::vector<Exponents> out;
  Exponents prefix;
  for (int d = 0; d <= max_degree; ++d) append_degree(num_vars, d, prefix, out);
  return out;
}

RingElement RingElement::operator+(const RingElement& other) const {
  require_same_algebra(*this, other);
  return {algebra, algebra->field().reduced(coords + other.coords)};
}

RingElement RingElement::operator-(const RingElement& other) const {
  require_same_algebra(*this, other);
  return {algebra, algebra->field().reduced(coords - other.coords)};
}

RingElement RingElement::scaled(Residue c) const {
  const Residue r = algebra->field().reduce(c);
  return {algebra, algebra->field().reduced(coords * r)};
}

LocalAlgebra::LocalAlgebra(Presentation presentation)
    : presentation_(std::move(presentation)),
      ideal_space_(presentation_.field, 0) {
  const PrimeField& f = presentation_.field;
  const int n = presentation_.num_vars();
  const int D = presentation_.trunc_degree;
  if (n == 0) throw std::invalid_argument("presentation has no variables");
  if (D < 1) throw std::invalid_argument("truncation degree must be >= 1");
  for (const Polynomial& rel : presentation_.relations)
    if (rel.constant_term() != 0)
      throw std::invalid_argument("relation with a nonzero constant term");

  monomials_ = monomials_up_to(n, D);
  const Index count = static_cast<Index>(monomials_.size());
  for (Index t = 0; t < count; ++t) monomial_lookup_.emplace(monomials_[static_cast<std::size_t>(t)], t);

  // J + m^{D+1}: products g * mu, truncated above degree D.
  std::vector<RowVector> rows;
  for (const Polynomial& rel : presentation_.relations) {
    if (rel.is_zero()) continue;
    int low = D;
    for (const auto& [exps, coeff] : rel.terms) low = std::min(low, total_degree(exps));
    for (const Exponents& mu : monomials_) {
      if (total_degree(mu) + low > D) break;
      RowVector row = RowVector::Zero(count);
      for (const auto& [exps, coeff] : rel.terms) {
        const Exponents prod = add_exponents(exps, mu);
        if (total_degree(prod) > D) continue;
        row(monomial_lookup_.at(prod)) = coeff;
      }
      rows.push_back(std::move(row));
    }
  }
  Matrix generators(static_cast<Index>(rows.size()), count);
  for (std::size_t r = 0; r < rows.size(); ++r) generators.row(static_cast<Index>(r)) = rows[r];
  ideal_space_ = Subspace::span(std::move(generators), f);

  {
    std::vector<bool> pivot(static_cast<std::size_t>(count), false);
    for (Index c : ideal_space_.pivots()) pivot[static_cast<std::size_t>(c)] = true;
    if (pivot[0]) throw std::invalid_argument("the presentation collapses R to zero (1 lies in the ideal)");
    for (Index t = 0; t < count; ++t)
      if (!pivot[static_cast<std::size_t>(t)]) quotient_basis_.push_back(t);
  }
  const Index dimR = dim();

  normal_forms_ = Matrix::Zero(count, dimR);
  for (Index t = 0; t < count; ++t) {
    Vector e = Vector::Zero(count);
    e(t) = 1;
    const Vector r = ideal_space_.residual(e);
    for (Index b = 0; b < dimR; ++b) normal_forms_(t, b) = r(quotient_basis_[static_cast<std::size_t>(b)]);
  }

  product_index_.assign(static_cast<std::size_t>(dimR), std::vector<Index>(static_cast<std::size_t>(dimR), -1));
  for (Index b = 0; b < dimR; ++b)
    for (Index c = 0; c < dimR; ++c) {
      const Exponents prod = add_exponents(monomials_[static_cast<std::size_t>(quotient_basis_[static_cast<std::size_t>(b)])],
                                           monomials_[static_cast<std::size_t>(quotient_basis_[static_cast<std::size_t>(c)])]);
      if (total_degree(prod) <= D)
        product_index_[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)] = monomial_lookup_.at(prod);
    }

  // x_j * basis_c, reduced.
  for (int j = 0; j < n; ++j) {
    Matrix op = Matrix::Zero(dimR, dimR);
    for (Index c = 0; c < dimR; ++c) {
      Exponents prod = monomials_[static_cast<std::size_t>(quotient_basis_[static_cast<std::size_t>(c)])];
      prod[static_cast<std::size_t>(j)] += 1;
      if (total_degree(prod) > D) continue;
      op.col(c) = normal_forms_.row(monomial_lookup_.at(prod)).transpose();
    }
    var_ops_.push_back(std::move(op));
  }

  // m^k is spanned by the normal forms of all monomials of degree >= k.
  for (int k = 0; k <= D + 1; ++k) {
    Index first = 0;
    while (first < count && total_degree(monomials_[static_cast<std::size_t>(first)]) < k) ++first;
    m_powers_.push_back(Subspace::span(Matrix(normal_forms_.bottomRows(count - first)), f));
    if (m_powers_.back().is_zero()) break;
  }
  loewy_length_ = static_cast<int>(m_powers_.size()) - 1;
}

Index LocalAlgebra::monomial_index(const Exponents& e) const {
  const auto it = monomial_lookup_.find(e);
  return it == monomial_lookup_.end() ? -1 : it->second;
}

const Subspace& LocalAlgebra::m_power(int n) const {
  if (n < 0) throw std::invalid_argument("m_power: negative exponent");
  return m_powers_[static_cast<std::size_t>(std::min(n, loewy_length_))];
}

RingElement LocalAlgebra::zero() const { return {shared_from_this(), Vector::Zero(dim())}; }

RingElement LocalAlgebra::one() const {
  RingElement e = zero();
  e.coords(0) = 1;
  return e;
}

RingElement LocalAlgebra::variable(int j) const {
  if (j < 0 || j >= num_vars()) throw std::out_of_range("variable index out of range");
  Exponents e(static_cast<std::size_t>(num_vars()), 0);
  e[static_cast<std::size_t>(j)] = 1;
  Polynomial poly;
  if (trunc_degree() >= 1) poly.terms[e] = 1;
  return reduce(poly);
}

RingElement LocalAlgebra::element(Vector coords) const {
  if (coords.size() != dim()) throw std::invalid_argument("element: coordinate length mismatch");
  return {shared_from_this(), field().reduced(coords)};
}

RingElement LocalAlgebra::reduce(const Polynomial& poly) const {
  Vector coords = Vector::Zero(dim());
  for (const auto& [exps, coeff] : poly.terms) {
    if (static_cast<int>(exps.size()) != num_vars())
      throw std::invalid_argument("reduce: polynomial has the wrong number of variables");
    const Index t = monomial_index(exps);
    if (t < 0) continue;  // above the truncation degree
    coords += coeff * normal_forms_.row(t).transpose();
  }
  return {shared_from_this(), field().reduced(coords)};
}

RingElement LocalAlgebra::parse(std::string_view text) const {
  return reduce(parse_polynomial(text, presentation_));
}

std::string LocalAlgebra::format(const RingElement& a) const {
  require_own(a);
  Polynomial poly;
  for (Index b = 0; b < dim(); ++b)
    if (a.coords(b) != 0)
      poly.terms[monomials_[static_cast<std::size_t>(quotient_basis_[static_cast<std::size_t>(b)])]] = a.coords(b);
  return format_polynomial(poly, presentation_.vars);
}

RingElement LocalAlgebra::multiply(const RingElement& a, const RingElement& b) const {
  require_own(a);
  require_own(b);
  Vector out = Vector::Zero(dim());
  for (Index i = 0; i < dim(); ++i) {
    if (a.coords(i) == 0) continue;
    for (Index j = 0; j < dim(); ++j) {
      if (b.coords(j) == 0) continue;
      const Index t = product_index_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (t < 0) continue;
      out += (a.coords(i) * b.coords(j)) * normal_forms_.row(t).transpose();
    }
    out = field().reduced(out);
  }
  return {shared_from_this(), std::move(out)};
}

Matrix LocalAlgebra::mult_operator(const RingElement& a) const {
  require_own(a);
  const Index n = dim();
  Matrix op = Matrix::Zero(n, n);
  for (Index b = 0; b < n; ++b) {
    const Residue coeff = a.coords(b);
    if (coeff == 0) continue;
    const auto& row = product_index_[static_cast<std::size_t>(b)];
    for (Index c = 0; c < n; ++c) {
      const Index t = row[static_cast<std::size_t>(c)];
      if (t >= 0) op.col(c) += coeff * normal_forms_.row(t).transpose();
    }
  }
  return field().reduced(op);
}

void LocalAlgebra::require_own(const RingElement& a) const {
  if (a.algebra.get() != this) throw std::invalid_argument("ring element belongs to a different algebra");
}

AlgebraPtr build_algebra(Presentation presentation) {
  std::shared_ptr<LocalAlgebra> alg = std::make_shared<LocalAlgebra>(std::move(presentation));
  return alg;
}

AlgebraPtr rebuild_at(const Presentation& presentation, int new_trunc_degree) {
  if (new_trunc_degree < 1) throw std::invalid_argument("truncation degree must be >= 1");
  Presentation next;
  next.field = presentation.field;
  next.vars = presentation.vars;
  next.trunc_degree = new_trunc_degree;
  for (const std::string& text : presentation.relation_texts) next.add_relation(text);
  return build_algebra(std::move(next));
}

}  // namespace koszpert

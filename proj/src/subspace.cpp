#include "koszpert/subspace.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace koszpert {

namespace {

void require_same_ambient(const Subspace& a, const Subspace& b, const char* op) {
  if (a.ambient_dim() != b.ambient_dim() || !(a.field() == b.field()))
    throw std::invalid_argument(std::string(op) + ": ambient dimension mismatch (" +
                                std::to_string(a.ambient_dim()) + " vs " +
                                std::to_string(b.ambient_dim()) + ")");
}

}  // namespace

Subspace::Subspace(PrimeField field, Index ambient_dim)
    : field_(field), ambient_(ambient_dim), basis_(0, ambient_dim) {}

Subspace Subspace::full(const PrimeField& field, Index ambient_dim) {
  Subspace s(field, ambient_dim);
  s.basis_ = Matrix::Identity(ambient_dim, ambient_dim);
  s.pivots_.resize(static_cast<std::size_t>(ambient_dim));
  for (Index i = 0; i < ambient_dim; ++i) s.pivots_[static_cast<std::size_t>(i)] = i;
  return s;
}

Subspace Subspace::span(Matrix rows, const PrimeField& field) {
  const Index ambient = rows.cols();
  RowEchelon ech = rref_rank(std::move(rows), field);
  Subspace s(field, ambient);
  s.basis_ = ech.form.topRows(ech.rank());
  s.pivots_ = std::move(ech.pivots);
  return s;
}

Vector Subspace::residual(const Eigen::Ref<const Vector>& v) const {
  if (v.size() != ambient_) throw std::invalid_argument("residual: vector length mismatch");
  Vector r = v;
  for (Index i = 0; i < dim(); ++i) {
    const Residue c = field_.reduce(r(pivots_[static_cast<std::size_t>(i)]));
    if (c != 0) r -= c * basis_.row(i).transpose();
  }
  return field_.reduced(r);
}

bool Subspace::contains(const Eigen::Ref<const Vector>& v) const { return residual(v).isZero(); }

bool Subspace::contains(const Subspace& other) const {
  require_same_ambient(*this, other, "contains");
  if (other.dim() > dim()) return false;
  for (Index i = 0; i < other.dim(); ++i)
    if (!contains(other.basis_.row(i).transpose())) return false;
  return true;
}

Subspace kernel_basis(const Matrix& m, const PrimeField& field) {
  const Index cols = m.cols();
  RowEchelon ech = rref_rank(m, field);
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (Index c : ech.pivots) is_pivot[static_cast<std::size_t>(c)] = true;

  Matrix null(cols - ech.rank(), cols);
  null.setZero();
  Index row = 0;
  for (Index free = 0; free < cols; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    null(row, free) = 1;
    for (Index i = 0; i < ech.rank(); ++i)
      null(row, ech.pivots[static_cast<std::size_t>(i)]) = field.neg(ech.form(i, free));
    ++row;
  }
  return Subspace::span(std::move(null), field);
}

Subspace column_space(const Matrix& m, const PrimeField& field) {
  return Subspace::span(Matrix(m.transpose()), field);
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b, "subspace_sum");
  Matrix stacked(a.dim() + b.dim(), a.ambient_dim());
  stacked << a.basis(), b.basis();
  return Subspace::span(std::move(stacked), a.field());
}

Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b, "subspace_intersect");
  const Index n = a.ambient_dim();
  if (a.is_zero() || b.is_zero()) return Subspace::zero(a.field(), n);
  Matrix block = Matrix::Zero(a.dim() + b.dim(), 2 * n);
  block.topLeftCorner(a.dim(), n) = a.basis();
  block.topRightCorner(a.dim(), n) = a.basis();
  block.bottomLeftCorner(b.dim(), n) = b.basis();
  RowEchelon ech = rref_rank(std::move(block), a.field());

  Index first = 0;
  while (first < ech.rank() && ech.pivots[static_cast<std::size_t>(first)] < n) ++first;
  Matrix right = ech.form.block(first, n, ech.rank() - first, n);
  return Subspace::span(std::move(right), a.field());
}

Subspace preimage_subspace(const Matrix& m, const Subspace& w) {
  if (m.rows() != w.ambient_dim())
    throw std::invalid_argument("preimage_subspace: map codomain " + std::to_string(m.rows()) +
                                " does not match subspace ambient " +
                                std::to_string(w.ambient_dim()));
  Matrix residuals(m.rows(), m.cols());
  for (Index c = 0; c < m.cols(); ++c) residuals.col(c) = w.residual(m.col(c));
  return kernel_basis(residuals, w.field());
}

Subspace image_subspace(const Matrix& m, const Subspace& domain) {
  if (m.cols() != domain.ambient_dim())
    throw std::invalid_argument("image_subspace: dimension mismatch");
  const PrimeField& field = domain.field();
  Matrix images = multiply(domain.basis(), m.transpose(), field);
  if (domain.is_zero()) return Subspace::zero(field, m.rows());
  return Subspace::span(std::move(images), field);
}

Comparison subspace_compare(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b, "subspace_compare");
  const bool a_has_b = a.contains(b);
  const bool b_has_a = b.contains(a);
  if (a_has_b && b_has_a) return {Containment::equal, Index{0}};
  if (a_has_b) return {Containment::a_contains_b, a.dim() - b.dim()};
  if (b_has_a) return {Containment::b_contains_a, b.dim() - a.dim()};
  return {Containment::incomparable, std::nullopt};
}

}  // namespace koszpert

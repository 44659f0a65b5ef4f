#pragma once

#include "koszpert/field.hpp"

#include <optional>
#include <vector>

namespace koszpert {

/// A linear subspace of GF(p)^n held as its canonical RREF basis, so two
/// subspaces are equal exactly when their representations are equal.
class Subspace {
 public:
  Subspace(PrimeField field, Index ambient_dim);

  static Subspace zero(const PrimeField& field, Index ambient_dim) {
    return Subspace(field, ambient_dim);
  }
  static Subspace full(const PrimeField& field, Index ambient_dim);

  /// Row space of `rows` (entries reduced mod p).
  static Subspace span(Matrix rows, const PrimeField& field);
  template <typename Derived>
  static Subspace span(const Eigen::MatrixBase<Derived>& rows, const PrimeField& field) {
    return span(Matrix(rows), field);
  }

  const PrimeField& field() const { return field_; }
  Index ambient_dim() const { return ambient_; }
  Index dim() const { return basis_.rows(); }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_; }
  const Matrix& basis() const { return basis_; }
  const std::vector<Index>& pivots() const { return pivots_; }

  /// v minus its projection along the pivot coordinates; zero iff v is in the space.
  Vector residual(const Eigen::Ref<const Vector>& v) const;
  bool contains(const Eigen::Ref<const Vector>& v) const;
  bool contains(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.field_ == b.field_ && a.ambient_ == b.ambient_ && a.pivots_ == b.pivots_ &&
           a.basis_ == b.basis_;
  }

 private:
  PrimeField field_;
  Index ambient_;
  Matrix basis_;
  std::vector<Index> pivots_;
};

/// {v : m v = 0}
Subspace kernel_basis(const Matrix& m, const PrimeField& field);

/// Span of the columns of m.
Subspace column_space(const Matrix& m, const PrimeField& field);

Subspace subspace_sum(const Subspace& a, const Subspace& b);

/// Zassenhaus: reduce [[A, A], [B, 0]]; rows with vanishing left half span A ∩ B.
Subspace subspace_intersect(const Subspace& a, const Subspace& b);

/// {v : m v ∈ w}
Subspace preimage_subspace(const Matrix& m, const Subspace& w);

/// Image of a subspace of the domain of m.
Subspace image_subspace(const Matrix& m, const Subspace& domain);

enum class Containment { equal, a_contains_b, b_contains_a, incomparable };

struct Comparison {
  Containment relation;
  std::optional<Index> quotient_dim;  // set when the spaces are nested
};

Comparison subspace_compare(const Subspace& a, const Subspace& b);

}  // namespace koszpert

#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <vector>

namespace koszpert {

// Residues live in [0, p) but are stored in a 64-bit word so that products of
// two residues and their sums over a few thousand terms never overflow.
using Residue = std::int64_t;
using Index = Eigen::Index;
using Matrix = Eigen::Matrix<Residue, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::Matrix<Residue, Eigen::Dynamic, 1>;
using RowVector = Eigen::Matrix<Residue, 1, Eigen::Dynamic>;

bool is_prime(Residue n);

/// The prime field GF(p), p < 2^16.
class PrimeField {
 public:
  static constexpr Residue kMaxCharacteristic = Residue{1} << 16;

  /// Throws std::invalid_argument when p is not a prime below 2^16.
  explicit PrimeField(Residue p);

  Residue characteristic() const { return p_; }

  Residue reduce(Residue v) const {
    v %= p_;
    return v < 0 ? v + p_ : v;
  }
  Residue add(Residue a, Residue b) const { return reduce(a + b); }
  Residue sub(Residue a, Residue b) const { return reduce(a - b); }
  Residue mul(Residue a, Residue b) const { return reduce(a * b); }
  Residue neg(Residue a) const { return reduce(-a); }
  Residue inv(Residue a) const;

  /// Coefficient-wise reduction of an arbitrary integer expression.
  template <typename Derived>
  auto reduced(const Eigen::MatrixBase<Derived>& m) const {
    return m.unaryExpr([p = p_](Residue v) {
      v %= p;
      return v < 0 ? v + p : v;
    });
  }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  Residue p_;
};

/// a * b over GF(p).
template <typename DerivedA, typename DerivedB>
Matrix multiply(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
                const PrimeField& field) {
  Matrix product = a.derived() * b.derived();
  return field.reduced(product);
}

template <typename Derived>
bool is_reduced(const Eigen::MatrixBase<Derived>& m, const PrimeField& field) {
  const Residue p = field.characteristic();
  return m.size() == 0 || (m.minCoeff() >= 0 && m.maxCoeff() < p);
}

struct RowEchelon {
  Matrix form;                // same shape as the input, zero rows last
  std::vector<Index> pivots;  // strictly increasing
  Index rank() const { return static_cast<Index>(pivots.size()); }
};

/// Reduced row echelon form. Entries must already be reduced mod p.
RowEchelon rref_rank(Matrix m, const PrimeField& field);

template <typename Derived>
RowEchelon rref_rank(const Eigen::MatrixBase<Derived>& m, const PrimeField& field) {
  return rref_rank(Matrix(m), field);
}

/// Rank by forward elimination only; cheaper than rref_rank when the form is not needed.
Index matrix_rank(Matrix m, const PrimeField& field);

}  // namespace koszpert

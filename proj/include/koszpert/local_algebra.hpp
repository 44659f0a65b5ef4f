#pragma once

#include "koszpert/polynomial.hpp"
#include "koszpert/subspace.hpp"

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace koszpert {

class LocalAlgebra;
using AlgebraPtr = std::shared_ptr<const LocalAlgebra>;

/// An element of R, as coordinates on the standard monomials.
struct RingElement {
  AlgebraPtr algebra;
  Vector coords;

  /// Lies in m: the coefficient of the constant monomial vanishes.
  bool in_maximal_ideal() const { return coords.size() == 0 || coords(0) == 0; }
  bool is_zero() const { return coords.isZero(); }

  RingElement operator+(const RingElement& other) const;
  RingElement operator-(const RingElement& other) const;
  RingElement scaled(Residue c) const;

  friend bool operator==(const RingElement& a, const RingElement& b) {
    return a.algebra == b.algebra && a.coords == b.coords;
  }
};

/// R = GF(p)[x_1..x_n] / (J + m^{D+1}), with a basis of standard monomials.
///
/// Monomials of degree <= D are ordered by degree, then lexicographically with
/// x_1 first (x^2 before xy before y^2). The ideal J + m^{D+1} is row-reduced in
/// that order, so leading terms are the lowest monomials and every remaining
/// (non-pivot) monomial is standard.
class LocalAlgebra : public std::enable_shared_from_this<LocalAlgebra> {
 public:
  /// Use build_algebra().
  explicit LocalAlgebra(Presentation presentation);

  const Presentation& presentation() const { return presentation_; }
  const PrimeField& field() const { return presentation_.field; }
  int num_vars() const { return presentation_.num_vars(); }
  int trunc_degree() const { return presentation_.trunc_degree; }
  Index dim() const { return static_cast<Index>(quotient_basis_.size()); }

  const std::vector<Exponents>& monomials() const { return monomials_; }
  Index monomial_index(const Exponents& e) const;
  const Subspace& ideal_space() const { return ideal_space_; }
  /// Indices into monomials(); entry 0 is always the constant monomial.
  const std::vector<Index>& quotient_basis() const { return quotient_basis_; }

  /// Multiplication by x_j on R.
  const Matrix& var_op(int j) const { return var_ops_.at(static_cast<std::size_t>(j)); }
  const std::vector<Matrix>& var_ops() const { return var_ops_; }

  /// Image of m^n in R. m^0 = R; zero for n >= loewy_length().
  const Subspace& m_power(int n) const;
  /// Least L with m^L = 0.
  int loewy_length() const { return loewy_length_; }

  RingElement zero() const;
  RingElement one() const;
  RingElement variable(int j) const;
  RingElement element(Vector coords) const;

  RingElement reduce(const Polynomial& poly) const;
  RingElement parse(std::string_view text) const;
  std::string format(const RingElement& a) const;

  RingElement multiply(const RingElement& a, const RingElement& b) const;
  Matrix mult_operator(const RingElement& a) const;

 private:
  void require_own(const RingElement& a) const;

  Presentation presentation_;
  std::vector<Exponents> monomials_;
  std::map<Exponents, Index> monomial_lookup_;
  Subspace ideal_space_;
  std::vector<Index> quotient_basis_;
  Matrix normal_forms_;                    // row t: coordinates of monomial t in R
  std::vector<std::vector<Index>> product_index_;  // monomial index of basis_b * basis_c, or -1
  std::vector<Matrix> var_ops_;
  std::vector<Subspace> m_powers_;
  int loewy_length_ = 0;
};

/// Throws std::invalid_argument for relations with a constant term or when R = 0.
AlgebraPtr build_algebra(Presentation presentation);
AlgebraPtr rebuild_at(const Presentation& presentation, int new_trunc_degree);

/// All exponent vectors in n variables of total degree <= max_degree, in the
/// algebra's monomial order.
std::vector<Exponents> monomials_up_to(int num_vars, int max_degree);

inline RingElement multiply(const RingElement& a, const RingElement& b) {
  return a.algebra->multiply(a, b);
}
inline Matrix mult_operator(const RingElement& a) { return a.algebra->mult_operator(a); }

}  // namespace koszpert

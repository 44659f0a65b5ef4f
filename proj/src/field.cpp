#include "koszpert/field.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace koszpert {

bool is_prime(Residue n) {
  if (n < 2) return false;
  for (Residue d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(Residue p) : p_(p) {
  if (p >= kMaxCharacteristic || !is_prime(p))
    throw std::invalid_argument("characteristic must be a prime below 65536, got " +
                                std::to_string(p));
}

Residue PrimeField::inv(Residue a) const {
  a = reduce(a);
  if (a == 0) throw std::domain_error("zero has no inverse in GF(p)");
  // extended Euclid on (a, p)
  Residue r0 = p_, r1 = a, t0 = 0, t1 = 1;
  while (r1 != 0) {
    const Residue q = r0 / r1;
    r0 = std::exchange(r1, r0 - q * r1);
    t0 = std::exchange(t1, t0 - q * t1);
  }
  return reduce(t0);
}

RowEchelon rref_rank(Matrix m, const PrimeField& field) {
  const Residue p = field.characteristic();
  const Index rows = m.rows();
  const Index cols = m.cols();
  std::vector<Index> pivots;
  Index rank = 0;
  for (Index col = 0; col < cols && rank < rows; ++col) {
    Index sel = rank;
    while (sel < rows && m(sel, col) == 0) ++sel;
    if (sel == rows) continue;
    if (sel != rank) m.row(sel).swap(m.row(rank));

    const Index width = cols - col;
    const Residue scale = field.inv(m(rank, col));
    if (scale != 1) {
      auto pivot_row = m.row(rank).tail(width);
      pivot_row = (pivot_row * scale).unaryExpr([p](Residue v) { return v % p; });
    }
    for (Index r = 0; r < rows; ++r) {
      if (r == rank) continue;
      const Residue factor = m(r, col);
      if (factor == 0) continue;
      auto target = m.row(r).tail(width);
      target = (target - factor * m.row(rank).tail(width)).unaryExpr([p](Residue v) {
        v %= p;
        return v < 0 ? v + p : v;
      });
    }
    pivots.push_back(col);
    ++rank;
  }
  return {std::move(m), std::move(pivots)};
}

Index matrix_rank(Matrix m, const PrimeField& field) {
  const Residue p = field.characteristic();
  const Index rows = m.rows();
  const Index cols = m.cols();
  Index rank = 0;
  for (Index col = 0; col < cols && rank < rows; ++col) {
    Index sel = rank;
    while (sel < rows && m(sel, col) == 0) ++sel;
    if (sel == rows) continue;
    if (sel != rank) m.row(sel).swap(m.row(rank));
    const Index width = cols - col;
    const Residue scale = field.inv(m(rank, col));
    for (Index r = sel + 1; r < rows; ++r) {
      if (m(r, col) == 0) continue;
      const Residue factor = (m(r, col) * scale) % p;
      auto target = m.row(r).tail(width);
      target = (target - factor * m.row(rank).tail(width)).unaryExpr([p](Residue v) {
        v %= p;
        return v < 0 ? v + p : v;
      });
    }
    ++rank;
  }
  return rank;
}

}  // namespace koszpert

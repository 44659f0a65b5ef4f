#pragma once

#include "koszpert/ideal.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace koszpert {

struct SequenceSpec {
  AlgebraPtr algebra;
  std::vector<RingElement> elements;
  std::vector<std::string> labels;

  int size() const { return static_cast<int>(elements.size()); }
  bool in_maximal_ideal() const;
  Ideal prefix_ideal(int count) const;  // (x_1, ..., x_count)
};

/// Parses each text with the algebra's polynomial grammar. Throws ParseError
/// with the item's 1-based position as its line.
SequenceSpec parse_sequence(const AlgebraPtr& algebra, const std::vector<std::string>& texts);
SequenceSpec make_sequence(const AlgebraPtr& algebra, std::vector<RingElement> elements);

/// One nonzero entry of an R-valued differential: sign * x_element at (row, col).
struct DifferentialEntry {
  Index row;
  Index col;
  int sign;
  int element;
};

/// Koszul complex of x_1..x_s over R. The degree-k term has basis the k-subsets
/// of {1..s} in colexicographic order (bitmasks in increasing numeric order);
/// d(e_T) = sum_l (-1)^{l+1} x_{j_l} e_{T \ j_l} for T = {j_1 < ... < j_k}.
class KoszulComplex {
 public:
  /// Throws std::invalid_argument on mixed algebras, std::logic_error if d∘d ≠ 0.
  explicit KoszulComplex(SequenceSpec sequence);

  const SequenceSpec& sequence() const { return sequence_; }
  const AlgebraPtr& algebra() const { return sequence_.algebra; }
  int length() const { return sequence_.size(); }
  Index term_rank(int k) const;
  const std::vector<std::uint32_t>& subsets(int k) const;

  /// Entries of d_k : C_k -> C_{k-1} as a matrix over R (term_rank(k-1) x term_rank(k)).
  std::vector<DifferentialEntry> differential(int k) const;
  /// d_k over GF(p): (dim R * rank C_{k-1}) x (dim R * rank C_k), block (row, col) = ±x.
  /// Defined for every integer k; outside 1..s it is a zero map with empty side.
  Matrix expanded_differential(int k) const;

 private:
  SequenceSpec sequence_;
  std::vector<Matrix> element_ops_;
  std::vector<std::vector<std::uint32_t>> subsets_;
};

struct HomologyModule {
  int degree = 0;
  Index copies = 0;  // rank of C_k; the module lives in R^copies
  Subspace cycles;
  Subspace boundaries;

  Index length() const { return cycles.dim() - boundaries.dim(); }
};

HomologyModule homology_module(const KoszulComplex& complex, int k);

struct HomologyProfile {
  std::vector<Index> lengths;  // ℓ(H_0) .. ℓ(H_s)
  std::vector<int> loewy;      // ℓℓ(H_0) .. ℓℓ(H_s)

  friend bool operator==(const HomologyProfile&, const HomologyProfile&) = default;
};

HomologyProfile homology_profile(const KoszulComplex& complex);
/// Lengths only, from ranks of the differentials.
std::vector<Index> homology_lengths(const KoszulComplex& complex);

Subquotient as_subquotient(const HomologyModule& h, const AlgebraPtr& algebra);

/// sum_{i=1}^s (-1)^i ℓ(H_i)
long long euler_sum(const HomologyProfile& profile);

/// Canonical (cycles, boundaries) pair; equal exactly when the homology
/// submodule data coincide.
struct Fingerprint {
  Subspace cycles;
  Subspace boundaries;
  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

Fingerprint submodule_fingerprint(const HomologyModule& h);

}  // namespace koszpert

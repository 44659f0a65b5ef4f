#pragma once

#include "koszpert/local_algebra.hpp"

#include <span>
#include <vector>

namespace koszpert {

/// An ideal of R as a multiplication-closed subspace, with the elements it
/// was generated from.
class Ideal {
 public:
  Ideal(AlgebraPtr algebra, Subspace space, std::vector<RingElement> generators);

  const AlgebraPtr& algebra() const { return algebra_; }
  const Subspace& space() const { return space_; }
  const std::vector<RingElement>& generators() const { return generators_; }
  Index dim() const { return space_.dim(); }
  bool contains(const RingElement& a) const { return space_.contains(a.coords); }

  friend bool operator==(const Ideal& a, const Ideal& b) {
    return a.algebra_ == b.algebra_ && a.space_ == b.space_;
  }

 private:
  AlgebraPtr algebra_;
  Subspace space_;
  std::vector<RingElement> generators_;
};

/// top / bottom inside a free module R^copies; bottom ⊆ top, both stable under
/// the diagonal action of R.
struct Subquotient {
  AlgebraPtr algebra;
  Subspace top;
  Subspace bottom;
  Index copies = 1;
};

Ideal ideal_span(std::span<const RingElement> generators, const AlgebraPtr& algebra);
Ideal zero_ideal(const AlgebraPtr& algebra);
Ideal unit_ideal(const AlgebraPtr& algebra);
Ideal maximal_ideal(const AlgebraPtr& algebra);
/// Ideal whose space is already known to be closed; generators become its basis.
Ideal ideal_from_space(const AlgebraPtr& algebra, Subspace space);

/// (I : a)
Ideal colon(const Ideal& ideal, const RingElement& a);
/// (0 : I), the intersection of (0 : g) over the generators g.
Ideal annihilator(const Ideal& ideal);
Ideal ideal_sum(const Ideal& a, const Ideal& b);
Ideal ideal_intersect(const Ideal& a, const Ideal& b);
Ideal ideal_product(const Ideal& a, const Ideal& b);
/// m^n I
Ideal m_times(const Ideal& ideal, int n);

/// m S for a submodule S of R^copies, acting diagonally.
Subspace maximal_times(const Subspace& module, const LocalAlgebra& algebra, Index copies = 1);
/// Whether S ⊆ R^copies is stable under every variable.
bool is_submodule(const Subspace& module, const LocalAlgebra& algebra, Index copies = 1);

Subquotient quotient(const Ideal& top, const Ideal& bottom);

/// dim top - dim bottom; equals the composition length since R/m = GF(p).
Index length(const Subquotient& q);
/// Least n with m^n top ⊆ bottom.
int loewy_length(const Subquotient& q);

/// Least c with m^n ∩ I = m^{n-c}(m^c ∩ I) for all n >= c. Checking n up to
/// the Loewy length of R suffices since both sides vanish beyond it.
int artin_rees(const Ideal& ideal);

}  // namespace koszpert

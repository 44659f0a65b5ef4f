#pragma once

#include "koszpert/koszul.hpp"

#include <cstdint>
#include <string>
#include <vector>

// Brute-force and alternative-route recomputations used to validate the main
// pipeline. They are slow on purpose and never feed back into it.
namespace koszpert::oracle {

/// ℓ(H_0..H_s) from the long exact sequence for appending x_s to x_1..x_{s-1}:
/// ℓ(H_n) = ℓ(H'_n / x_s H'_n) + ℓ(0 :_{H'_{n-1}} x_s), with H' the homology
/// of the shorter complex. The length-s complex is never built.
std::vector<Index> les_homology_lengths(const SequenceSpec& seq);

/// Scans every element f of R and keeps those with g f = 0 for all generators.
/// Throws BudgetExceeded when p^dim(R) > budget.
Subspace exhaustive_annihilator(const Ideal& ideal, std::uint64_t budget);

struct ArtinReesTable {
  int c = 0;
  int loewy = 0;  // L
  /// holds[c][n] for 0 <= c <= n <= L: m^n ∩ I == m^{n-c}(m^c ∩ I); false for n < c.
  std::vector<std::vector<bool>> holds;
};

/// Materializes both sides for every (c, n) from scratch: powers of m from
/// pairwise products of spanning sets, intersections from a kernel.
ArtinReesTable naive_artin_rees(const Ideal& ideal);

struct OracleReport {
  std::string quantity;
  std::string main_value;
  std::string oracle_value;
  bool agree = false;
  std::string instance;
};

std::vector<OracleReport> cross_check(const SequenceSpec& seq, std::uint64_t budget);

}  // namespace koszpert::oracle

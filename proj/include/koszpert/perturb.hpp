#pragma once

#include "koszpert/koszul.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace koszpert {

/// Invariants of x_1..x_s that control the perturbation bound.
struct SequenceInvariants {
  std::vector<int> a;   // a_i = ℓℓ(((x_1..x_{i-1}) : x_i) / (x_1..x_{i-1}))
  std::vector<int> ar;  // ar_m((x_1..x_i))
  HomologyProfile base;
  Index colon_len = 0;  // ℓ of the s-th colon quotient

  friend bool operator==(const SequenceInvariants&, const SequenceInvariants&) = default;
};

/// ((x_1..x_{i-1}) : x_i) / (x_1..x_{i-1}) for 1 <= i <= s.
Subquotient colon_quotient(const SequenceSpec& seq, int i);

/// Throws std::invalid_argument when an element is not in m.
SequenceInvariants sequence_profile(const SequenceSpec& seq);

struct PerturbationBound {
  std::vector<int> a;
  std::vector<int> ar;
  long long weighted = 0;  // a_1 + 2 a_2 + ... + 2^{s-1} a_s
  long long N = 0;         // max{weighted, ar_1, ..., ar_s} + 1
  long long single_c = 0;  // max{a_1, ar_1 + 1}: the bound for (0:x_1') = (0:x_1)
};

PerturbationBound bound_N(std::span<const int> a, std::span<const int> ar);
inline PerturbationBound bound_N(const SequenceInvariants& inv) { return bound_N(inv.a, inv.ar); }

/// n_1(i) = a_1 + 2a_2 + ... + 2^{i-1}a_i, n_k(i) = n_{k-1}(1) + ... + n_{k-1}(i).
struct NkTable {
  int s = 0;
  std::vector<std::vector<long long>> values;  // values[k-1][i-1]

  long long at(int k, int i) const {
    return values.at(static_cast<std::size_t>(k - 1)).at(static_cast<std::size_t>(i - 1));
  }
};

NkTable nk_table(std::span<const int> a);

enum class EnumerationMode { exhaustive, sampled };
std::string_view to_string(EnumerationMode mode);

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// p^(dim * s) when it does not exceed budget.
std::optional<std::uint64_t> enumeration_size(Residue p, Index dim, int s, std::uint64_t budget);

/// Random-access source of ε-tuples in (m^N)^s. Exhaustive sources enumerate
/// coefficient tuples on the RREF basis of m^N in mixed-radix order (first
/// coefficient of ε_1 fastest). Sampled sources return the zero tuple at index 0
/// and otherwise draw from a generator seeded by (seed, index), so any trial can
/// be regenerated independently of the others.
class EpsilonSource {
 public:
  static EpsilonSource exhaustive(const AlgebraPtr& algebra, int N, int s, std::uint64_t budget);
  static EpsilonSource sampled(const AlgebraPtr& algebra, int N, int s, std::uint64_t count,
                               std::uint64_t seed);

  EnumerationMode mode() const { return mode_; }
  std::uint64_t count() const { return count_; }
  int order() const { return N_; }
  const Subspace& space() const { return algebra_->m_power(N_); }
  std::vector<RingElement> at(std::uint64_t index) const;

 private:
  EpsilonSource(AlgebraPtr algebra, int N, int s, EnumerationMode mode, std::uint64_t count,
                std::uint64_t seed);

  AlgebraPtr algebra_;
  int N_;
  int s_;
  EnumerationMode mode_;
  std::uint64_t count_;
  std::uint64_t seed_;
};

/// Exhaustive when the budget admits it, otherwise `trials` samples.
EpsilonSource draw_epsilons(const AlgebraPtr& algebra, int N, int s, std::uint64_t budget,
                            std::uint64_t trials, std::uint64_t seed);

enum class Check : std::size_t {
  alternating_sum = 0,          // c1
  per_index_lengths,            // c2
  top_homology_equal,           // c3
  colon_length_equal,           // c4
  loewy_bounds,                 // c5
  perturbed_a_s_bound,          // c6
  single_element_annihilators,  // c7
};
inline constexpr std::size_t kCheckCount = 7;
std::string_view check_key(Check c);   // "c1" .. "c7"
std::string_view check_name(Check c);  // "alternating_sum", ...

/// Checks that hold at the explicit N; c2 is measured, c7 only applies when ε_1 ∈ m^c.
bool is_guaranteed(Check c);

enum class Outcome : std::uint8_t { pass, fail, not_applicable };

/// Base data shared read-only by every trial.
struct PerturbationContext {
  SequenceSpec sequence;
  SequenceInvariants invariants;
  PerturbationBound bound;
  NkTable nk;
  Fingerprint top;
  Subspace annihilator_x1;

  static PerturbationContext prepare(SequenceSpec sequence);
};

struct TrialResult {
  std::vector<RingElement> epsilons;
  HomologyProfile profile;
  Index colon_len = 0;
  int colon_loewy = 0;
  std::array<Outcome, kCheckCount> checks{};

  Outcome outcome(Check c) const { return checks[static_cast<std::size_t>(c)]; }
  bool any_failed() const;
};

/// Throws std::invalid_argument when some ε_i is not in m^N.
TrialResult run_trial(const PerturbationContext& ctx, const std::vector<RingElement>& epsilons, int N);

struct Witness {
  std::uint64_t trial = 0;
  std::vector<std::string> epsilons;
  std::vector<std::vector<Residue>> coords;
  std::vector<std::string> failed;  // check keys
  std::vector<Index> lengths;
  std::vector<int> loewy;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct CheckTally {
  std::uint64_t pass = 0;
  std::uint64_t fail = 0;
  std::uint64_t not_applicable = 0;

  friend bool operator==(const CheckTally&, const CheckTally&) = default;
};

struct VerifyOptions {
  std::uint64_t trials = 1000;
  std::uint64_t budget = std::uint64_t{1} << 20;
  std::uint64_t seed = 0;
  std::optional<int> N;  // defaults to the bound
  unsigned threads = 1;
  std::size_t max_witnesses = 8;
};

struct PerturbationReport {
  std::vector<std::string> sequence;
  SequenceInvariants invariants;
  PerturbationBound bound;
  NkTable nk;
  int N = 0;
  EnumerationMode mode = EnumerationMode::exhaustive;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::array<CheckTally, kCheckCount> tallies{};
  bool verdict = false;  // every guaranteed check passed in every trial
  std::vector<Witness> witnesses;
};

PerturbationReport verify(const SequenceSpec& seq, const VerifyOptions& options);

struct IndexProbe {
  int N = 0;
  EnumerationMode mode = EnumerationMode::exhaustive;
  std::uint64_t trials = 0;  // trials run (stops at the first refutation)
  bool refuted = false;
  std::optional<Witness> witness;
};

struct IndexSearchOptions {
  int max_N = 8;
  std::uint64_t budget = std::uint64_t{1} << 20;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

/// Scans N = 1, 2, ... and stops at the first N that passes exhaustively.
/// `index` is the smallest N with no refuted N above it; `certified_index` is
/// the N that passed exhaustively. Preservation at N implies it at N + 1, so
/// the true index lies in [index, certified_index] whenever both are set.
struct IndexSearchResult {
  std::optional<int> index;
  std::optional<int> certified_index;
  bool certified = false;  // index == certified_index
  long long bound_N = 0;
  std::optional<long long> gap;  // bound_N - index
  std::vector<IndexProbe> probes;
};

IndexSearchResult index_search(const SequenceSpec& seq, const IndexSearchOptions& options);

enum class StabilityQuantity { a, ar, lengths, all };

struct StabilityReport {
  int D = 0;
  SequenceInvariants at_D;
  SequenceInvariants at_next;  // D + 1
  bool a_stable = false;
  bool ar_stable = false;
  bool lengths_stable = false;
  bool stable = false;  // for the selected quantity
};

StabilityReport truncation_stability(const Presentation& presentation,
                                     const std::vector<std::string>& sequence,
                                     StabilityQuantity quantity);

}  // namespace koszpert

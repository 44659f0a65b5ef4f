#include "koszpert/perturb.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

namespace koszpert {

namespace {

constexpr std::uint64_t kBlock = 4096;

/// Calls fn(i) for i in [begin, end) on up to `threads` workers. Callers write
/// results into slots indexed by i, so the outcome never depends on scheduling.
template <typename Fn>
void parallel_for(std::uint64_t begin, std::uint64_t end, unsigned threads, Fn&& fn) {
  if (threads <= 1 || end - begin < 2) {
    for (std::uint64_t i = begin; i < end; ++i) fn(i);
    return;
  }
  std::atomic<std::uint64_t> next{begin};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= end) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = end;
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned count = static_cast<unsigned>(std::min<std::uint64_t>(threads, end - begin));
  for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

Witness make_witness(const PerturbationContext& ctx, std::uint64_t trial, const TrialResult& r) {
  Witness w;
  w.trial = trial;
  for (const RingElement& e : r.epsilons) {
    w.epsilons.push_back(ctx.sequence.algebra->format(e));
    w.coords.emplace_back(e.coords.data(), e.coords.data() + e.coords.size());
  }
  for (std::size_t c = 0; c < kCheckCount; ++c)
    if (r.checks[c] == Outcome::fail) w.failed.emplace_back(check_key(static_cast<Check>(c)));
  w.lengths = r.profile.lengths;
  w.loewy = r.profile.loewy;
  return w;
}

std::vector<RingElement> perturbed(const SequenceSpec& seq, const std::vector<RingElement>& eps) {
  std::vector<RingElement> out;
  for (std::size_t i = 0; i < seq.elements.size(); ++i) out.push_back(seq.elements[i] + eps[i]);
  return out;
}

}  // namespace

Subquotient colon_quotient(const SequenceSpec& seq, int i) {
  if (i < 1 || i > seq.size()) throw std::out_of_range("colon_quotient: index out of range");
  const Ideal previous = seq.prefix_ideal(i - 1);
  return quotient(colon(previous, seq.elements[static_cast<std::size_t>(i - 1)]), previous);
}

SequenceInvariants sequence_profile(const SequenceSpec& seq) {
  if (seq.size() < 1) throw std::invalid_argument("sequence must contain at least one element");
  if (!seq.in_maximal_ideal()) throw std::invalid_argument("every sequence element must lie in m");
  SequenceInvariants inv;
  for (int i = 1; i <= seq.size(); ++i) {
    const Subquotient q = colon_quotient(seq, i);
    inv.a.push_back(loewy_length(q));
    inv.ar.push_back(artin_rees(seq.prefix_ideal(i)));
    if (i == seq.size()) inv.colon_len = length(q);
  }
  inv.base = homology_profile(KoszulComplex(seq));
  return inv;
}

PerturbationBound bound_N(std::span<const int> a, std::span<const int> ar) {
  if (a.empty() || a.size() != ar.size()) throw std::invalid_argument("bound_N: need |a| = |ar| >= 1");
  PerturbationBound b;
  b.a.assign(a.begin(), a.end());
  b.ar.assign(ar.begin(), ar.end());
  long long weight = 1;
  for (int ai : a) {
    b.weighted += weight * ai;
    weight *= 2;
  }
  long long top = b.weighted;
  for (int r : ar) top = std::max<long long>(top, r);
  b.N = top + 1;
  b.single_c = std::max<long long>(a[0], static_cast<long long>(ar[0]) + 1);
  return b;
}

NkTable nk_table(std::span<const int> a) {
  NkTable t;
  t.s = static_cast<int>(a.size());
  const auto s = a.size();
  t.values.assign(s, std::vector<long long>(s, 0));
  long long weight = 1, running = 0;
  for (std::size_t i = 0; i < s; ++i) {
    running += weight * a[i];
    weight *= 2;
    t.values[0][i] = running;
  }
  for (std::size_t k = 1; k < s; ++k) {
    long long prefix = 0;
    for (std::size_t i = 0; i < s; ++i) {
      prefix += t.values[k - 1][i];
      t.values[k][i] = prefix;
    }
  }
  return t;
}

std::string_view to_string(EnumerationMode mode) {
  return mode == EnumerationMode::exhaustive ? "exhaustive" : "sampled";
}

std::optional<std::uint64_t> enumeration_size(Residue p, Index dim, int s, std::uint64_t budget) {
  std::uint64_t total = 1;
  const auto digits = static_cast<std::uint64_t>(dim) * static_cast<std::uint64_t>(s);
  for (std::uint64_t d = 0; d < digits; ++d) {
    if (total > budget / static_cast<std::uint64_t>(p)) return std::nullopt;
    total *= static_cast<std::uint64_t>(p);
  }
  if (total > budget) return std::nullopt;
  return total;
}

EpsilonSource::EpsilonSource(AlgebraPtr algebra, int N, int s, EnumerationMode mode,
                             std::uint64_t count, std::uint64_t seed)
    : algebra_(std::move(algebra)), N_(N), s_(s), mode_(mode), count_(count), seed_(seed) {}

EpsilonSource EpsilonSource::exhaustive(const AlgebraPtr& algebra, int N, int s, std::uint64_t budget) {
  if (N < 0) throw std::invalid_argument("perturbation order must be >= 0");
  const auto size = enumeration_size(algebra->field().characteristic(), algebra->m_power(N).dim(), s, budget);
  if (!size) throw BudgetExceeded("exhaustive enumeration of (m^N)^s exceeds the budget");
  return EpsilonSource(algebra, N, s, EnumerationMode::exhaustive, *size, 0);
}

EpsilonSource EpsilonSource::sampled(const AlgebraPtr& algebra, int N, int s, std::uint64_t count,
                                     std::uint64_t seed) {
  if (N < 0) throw std::invalid_argument("perturbation order must be >= 0");
  return EpsilonSource(algebra, N, s, EnumerationMode::sampled, std::max<std::uint64_t>(count, 1), seed);
}

std::vector<RingElement> EpsilonSource::at(std::uint64_t index) const {
  if (index >= count_) throw std::out_of_range("epsilon index out of range");
  const Subspace& space = algebra_->m_power(N_);
  const Index d = space.dim();
  const Residue p = algebra_->field().characteristic();
  const auto digits = static_cast<std::size_t>(d) * static_cast<std::size_t>(s_);
  std::vector<Residue> coeffs(digits, 0);

  if (mode_ == EnumerationMode::exhaustive) {
    std::uint64_t rest = index;
    for (auto& c : coeffs) {
      c = static_cast<Residue>(rest % static_cast<std::uint64_t>(p));
      rest /= static_cast<std::uint64_t>(p);
    }
  } else if (index > 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::mt19937_64 rng(seq);
    for (auto& c : coeffs) c = static_cast<Residue>(rng() % static_cast<std::uint64_t>(p));
  }

  std::vector<RingElement> out;
  for (int i = 0; i < s_; ++i) {
    Vector v = Vector::Zero(algebra_->dim());
    for (Index t = 0; t < d; ++t) {
      const Residue c = coeffs[static_cast<std::size_t>(i) * static_cast<std::size_t>(d) + static_cast<std::size_t>(t)];
      if (c != 0) v += c * space.basis().row(t).transpose();
    }
    out.push_back(algebra_->element(std::move(v)));
  }
  return out;
}

EpsilonSource draw_epsilons(const AlgebraPtr& algebra, int N, int s, std::uint64_t budget,
                            std::uint64_t trials, std::uint64_t seed) {
  if (enumeration_size(algebra->field().characteristic(), algebra->m_power(N).dim(), s, budget))
    return EpsilonSource::exhaustive(algebra, N, s, budget);
  return EpsilonSource::sampled(algebra, N, s, trials, seed);
}

std::string_view check_key(Check c) {
  static constexpr std::array<std::string_view, kCheckCount> keys{"c1", "c2", "c3", "c4", "c5", "c6", "c7"};
  return keys[static_cast<std::size_t>(c)];
}

std::string_view check_name(Check c) {
  static constexpr std::array<std::string_view, kCheckCount> names{
      "alternating_sum",    "per_index_lengths", "top_homology_equal",         "colon_length_equal",
      "loewy_bounds",       "perturbed_a_s_bound", "single_element_annihilators"};
  return names[static_cast<std::size_t>(c)];
}

bool is_guaranteed(Check c) {
  return c != Check::per_index_lengths && c != Check::single_element_annihilators;
}

bool TrialResult::any_failed() const {
  return std::any_of(checks.begin(), checks.end(), [](Outcome o) { return o == Outcome::fail; });
}

PerturbationContext PerturbationContext::prepare(SequenceSpec sequence) {
  SequenceInvariants inv = sequence_profile(sequence);
  PerturbationBound bound = bound_N(inv);
  NkTable nk = nk_table(inv.a);
  const KoszulComplex complex(sequence);
  Fingerprint top = submodule_fingerprint(homology_module(complex, sequence.size()));
  const AlgebraPtr algebra = sequence.algebra;
  Subspace ann = annihilator(ideal_span(std::span<const RingElement>(sequence.elements.data(), 1), algebra)).space();
  return {std::move(sequence), std::move(inv), std::move(bound), std::move(nk), std::move(top), std::move(ann)};
}

TrialResult run_trial(const PerturbationContext& ctx, const std::vector<RingElement>& epsilons, int N) {
  const SequenceSpec& seq = ctx.sequence;
  const int s = seq.size();
  const AlgebraPtr& algebra = seq.algebra;
  if (static_cast<int>(epsilons.size()) != s) throw std::invalid_argument("run_trial: need one ε per element");
  const Subspace& allowed = algebra->m_power(N);
  for (const RingElement& e : epsilons)
    if (e.algebra != algebra || !allowed.contains(e.coords))
      throw std::invalid_argument("run_trial: ε is not in m^N");

  TrialResult r;
  r.epsilons = epsilons;
  const SequenceSpec moved{algebra, perturbed(seq, epsilons), {}};
  const KoszulComplex complex(moved);
  r.profile = homology_profile(complex);
  const Fingerprint top = submodule_fingerprint(homology_module(complex, s));
  const Subquotient q = colon_quotient(moved, s);
  r.colon_len = length(q);
  r.colon_loewy = loewy_length(q);

  const SequenceInvariants& base = ctx.invariants;
  auto set = [&](Check c, bool ok) { r.checks[static_cast<std::size_t>(c)] = ok ? Outcome::pass : Outcome::fail; };

  set(Check::alternating_sum, euler_sum(r.profile) == euler_sum(base.base));
  set(Check::per_index_lengths,
      std::equal(r.profile.lengths.begin() + 1, r.profile.lengths.end(), base.base.lengths.begin() + 1));
  set(Check::top_homology_equal, top == ctx.top);
  set(Check::colon_length_equal, r.colon_len == base.colon_len);
  bool bounded = true;
  for (int k = 1; k <= s; ++k)
    bounded = bounded && r.profile.loewy[static_cast<std::size_t>(k)] <= ctx.nk.at(k, s - k + 1);
  set(Check::loewy_bounds, bounded);
  set(Check::perturbed_a_s_bound,
      r.colon_loewy <= (1LL << (s - 1)) * static_cast<long long>(base.a.back()));

  if (algebra->m_power(static_cast<int>(ctx.bound.single_c)).contains(epsilons[0].coords)) {
    const Subspace zero = Subspace::zero(algebra->field(), algebra->dim());
    const Subspace ann = preimage_subspace(algebra->mult_operator(moved.elements[0]), zero);
    set(Check::single_element_annihilators, ann == ctx.annihilator_x1);
  } else {
    r.checks[static_cast<std::size_t>(Check::single_element_annihilators)] = Outcome::not_applicable;
  }
  return r;
}

PerturbationReport verify(const SequenceSpec& seq, const VerifyOptions& options) {
  const PerturbationContext ctx = PerturbationContext::prepare(seq);
  PerturbationReport report;
  report.sequence = seq.labels;
  report.invariants = ctx.invariants;
  report.bound = ctx.bound;
  report.nk = ctx.nk;
  const long long N = options.N ? *options.N : ctx.bound.N;
  if (N < 1) throw std::invalid_argument("verify: N must be >= 1");
  if (N > (1LL << 30)) throw std::invalid_argument("verify: N out of range");
  report.N = static_cast<int>(N);
  report.seed = options.seed;

  const EpsilonSource source =
      draw_epsilons(seq.algebra, report.N, seq.size(), options.budget, options.trials, options.seed);
  report.mode = source.mode();
  report.trials = source.count();

  for (std::uint64_t start = 0; start < source.count(); start += kBlock) {
    const std::uint64_t end = std::min(source.count(), start + kBlock);
    std::vector<std::array<Outcome, kCheckCount>> outcomes(end - start);
    std::vector<std::optional<TrialResult>> failures(end - start);
    parallel_for(start, end, options.threads, [&](std::uint64_t i) {
      TrialResult r = run_trial(ctx, source.at(i), report.N);
      outcomes[i - start] = r.checks;
      if (r.any_failed()) failures[i - start] = std::move(r);
    });
    for (std::uint64_t i = start; i < end; ++i) {
      for (std::size_t c = 0; c < kCheckCount; ++c) {
        CheckTally& t = report.tallies[c];
        switch (outcomes[i - start][c]) {
          case Outcome::pass: ++t.pass; break;
          case Outcome::fail: ++t.fail; break;
          case Outcome::not_applicable: ++t.not_applicable; break;
        }
      }
      if (failures[i - start] && report.witnesses.size() < options.max_witnesses)
        report.witnesses.push_back(make_witness(ctx, i, *failures[i - start]));
    }
  }

  report.verdict = true;
  for (std::size_t c = 0; c < kCheckCount; ++c)
    if (is_guaranteed(static_cast<Check>(c)) && report.tallies[c].fail > 0) report.verdict = false;
  return report;
}

IndexSearchResult index_search(const SequenceSpec& seq, const IndexSearchOptions& options) {
  if (options.max_N < 1) throw std::invalid_argument("index_search: max_N must be >= 1");
  const PerturbationContext ctx = PerturbationContext::prepare(seq);
  IndexSearchResult result;
  result.bound_N = ctx.bound.N;
  const auto& base = ctx.invariants.base.lengths;

  for (int N = 1; N <= options.max_N; ++N) {
    const EpsilonSource source =
        draw_epsilons(seq.algebra, N, seq.size(), options.budget, options.trials, options.seed);
    IndexProbe probe;
    probe.N = N;
    probe.mode = source.mode();

    std::optional<std::uint64_t> first_failure;
    std::uint64_t start = 0;
    for (; start < source.count() && !first_failure; start += kBlock) {
      const std::uint64_t end = std::min(source.count(), start + kBlock);
      std::vector<char> failed(end - start, 0);
      parallel_for(start, end, options.threads, [&](std::uint64_t i) {
        const KoszulComplex complex(SequenceSpec{seq.algebra, perturbed(seq, source.at(i)), {}});
        const std::vector<Index> lengths = homology_lengths(complex);
        failed[i - start] = !std::equal(lengths.begin() + 1, lengths.end(), base.begin() + 1);
      });
      for (std::uint64_t i = start; i < end; ++i)
        if (failed[i - start]) {
          first_failure = i;
          break;
        }
    }

    if (first_failure) {
      probe.refuted = true;
      probe.trials = *first_failure + 1;
      probe.witness = make_witness(ctx, *first_failure, run_trial(ctx, source.at(*first_failure), N));
      result.probes.push_back(std::move(probe));
      result.index.reset();
      continue;
    }
    probe.trials = source.count();
    result.probes.push_back(std::move(probe));
    if (!result.index) result.index = N;
    if (source.mode() == EnumerationMode::exhaustive) {
      result.certified_index = N;
      break;
    }
  }
  if (result.index) {
    result.certified = result.certified_index == result.index;
    result.gap = result.bound_N - *result.index;
  }
  return result;
}

StabilityReport truncation_stability(const Presentation& presentation,
                                     const std::vector<std::string>& sequence,
                                     StabilityQuantity quantity) {
  StabilityReport report;
  report.D = presentation.trunc_degree;
  const AlgebraPtr here = rebuild_at(presentation, report.D);
  const AlgebraPtr next = rebuild_at(presentation, report.D + 1);
  report.at_D = sequence_profile(parse_sequence(here, sequence));
  report.at_next = sequence_profile(parse_sequence(next, sequence));
  report.a_stable = report.at_D.a == report.at_next.a;
  report.ar_stable = report.at_D.ar == report.at_next.ar;
  report.lengths_stable = report.at_D.base.lengths == report.at_next.base.lengths;
  switch (quantity) {
    case StabilityQuantity::a: report.stable = report.a_stable; break;
    case StabilityQuantity::ar: report.stable = report.ar_stable; break;
    case StabilityQuantity::lengths: report.stable = report.lengths_stable; break;
    case StabilityQuantity::all:
      report.stable = report.a_stable && report.ar_stable && report.lengths_stable;
      break;
  }
  return report;
}

}  // namespace koszpert

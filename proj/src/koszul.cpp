#include "koszpert/koszul.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace koszpert {

bool SequenceSpec::in_maximal_ideal() const {
  return std::all_of(elements.begin(), elements.end(),
                     [](const RingElement& e) { return e.in_maximal_ideal(); });
}

Ideal SequenceSpec::prefix_ideal(int count) const {
  if (count < 0 || count > size()) throw std::out_of_range("prefix_ideal: count out of range");
  return ideal_span(std::span<const RingElement>(elements.data(), static_cast<std::size_t>(count)), algebra);
}

SequenceSpec parse_sequence(const AlgebraPtr& algebra, const std::vector<std::string>& texts) {
  SequenceSpec seq{algebra, {}, {}};
  int position = 0;
  for (const std::string& text : texts) {
    ++position;
    try {
      seq.elements.push_back(algebra->parse(text));
    } catch (const ParseError& e) {
      throw ParseError("--seq", position, e.token(), e.message());
    }
    seq.labels.push_back(text);
  }
  return seq;
}

SequenceSpec make_sequence(const AlgebraPtr& algebra, std::vector<RingElement> elements) {
  SequenceSpec seq{algebra, std::move(elements), {}};
  for (const RingElement& e : seq.elements) seq.labels.push_back(algebra->format(e));
  return seq;
}

KoszulComplex::KoszulComplex(SequenceSpec sequence) : sequence_(std::move(sequence)) {
  const int s = length();
  if (s > 24) throw std::invalid_argument("Koszul complex: sequence too long");
  for (const RingElement& e : sequence_.elements) {
    if (e.algebra != sequence_.algebra) throw std::invalid_argument("Koszul complex: element from another algebra");
    element_ops_.push_back(sequence_.algebra->mult_operator(e));
  }

  subsets_.resize(static_cast<std::size_t>(s) + 1);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << s); ++mask)
    subsets_[static_cast<std::size_t>(std::popcount(mask))].push_back(mask);

  // d_{k-1} d_k = 0 over R
  const LocalAlgebra& alg = *sequence_.algebra;
  for (int k = 2; k <= s; ++k) {
    const auto upper = differential(k);
    const auto lower = differential(k - 1);
    std::vector<std::vector<RingElement>> product(
        static_cast<std::size_t>(term_rank(k - 2)),
        std::vector<RingElement>(static_cast<std::size_t>(term_rank(k)), alg.zero()));
    for (const DifferentialEntry& hi : upper)
      for (const DifferentialEntry& lo : lower) {
        if (lo.col != hi.row) continue;
        const RingElement term = alg.multiply(sequence_.elements[static_cast<std::size_t>(lo.element)],
                                              sequence_.elements[static_cast<std::size_t>(hi.element)]);
        auto& slot = product[static_cast<std::size_t>(lo.row)][static_cast<std::size_t>(hi.col)];
        slot = slot + term.scaled(lo.sign * hi.sign);
      }
    for (const auto& row : product)
      for (const RingElement& entry : row)
        if (!entry.is_zero()) throw std::logic_error("Koszul complex: d∘d is nonzero");
  }
}

Index KoszulComplex::term_rank(int k) const {
  if (k < 0 || k > length()) return 0;
  return static_cast<Index>(subsets_[static_cast<std::size_t>(k)].size());
}

const std::vector<std::uint32_t>& KoszulComplex::subsets(int k) const {
  return subsets_.at(static_cast<std::size_t>(k));
}

std::vector<DifferentialEntry> KoszulComplex::differential(int k) const {
  std::vector<DifferentialEntry> entries;
  if (k < 1 || k > length()) return entries;
  const auto& cols = subsets_[static_cast<std::size_t>(k)];
  const auto& rows = subsets_[static_cast<std::size_t>(k - 1)];
  for (std::size_t c = 0; c < cols.size(); ++c) {
    int position = 0;
    for (int j = 0; j < length(); ++j) {
      if (!(cols[c] & (std::uint32_t{1} << j))) continue;
      ++position;
      const std::uint32_t face = cols[c] & ~(std::uint32_t{1} << j);
      const auto row = std::lower_bound(rows.begin(), rows.end(), face) - rows.begin();
      entries.push_back({static_cast<Index>(row), static_cast<Index>(c), position % 2 == 1 ? 1 : -1, j});
    }
  }
  return entries;
}

Matrix KoszulComplex::expanded_differential(int k) const {
  const Index n = algebra()->dim();
  Matrix out = Matrix::Zero(n * term_rank(k - 1), n * term_rank(k));
  const PrimeField& field = algebra()->field();
  for (const DifferentialEntry& e : differential(k)) {
    const Matrix& op = element_ops_[static_cast<std::size_t>(e.element)];
    out.block(e.row * n, e.col * n, n, n) = e.sign > 0 ? op : Matrix(field.reduced(-op));
  }
  return out;
}

namespace {

HomologyModule module_from(int k, Index copies, const Matrix& outgoing, const Matrix& incoming,
                           const PrimeField& field) {
  return {k, copies, kernel_basis(outgoing, field), column_space(incoming, field)};
}

}  // namespace

HomologyModule homology_module(const KoszulComplex& complex, int k) {
  if (k < 0 || k > complex.length()) throw std::out_of_range("homology degree out of range");
  return module_from(k, complex.term_rank(k), complex.expanded_differential(k),
                     complex.expanded_differential(k + 1), complex.algebra()->field());
}

Subquotient as_subquotient(const HomologyModule& h, const AlgebraPtr& algebra) {
  return {algebra, h.cycles, h.boundaries, h.copies};
}

HomologyProfile homology_profile(const KoszulComplex& complex) {
  HomologyProfile profile;
  const PrimeField& field = complex.algebra()->field();
  Matrix outgoing = complex.expanded_differential(0);
  for (int k = 0; k <= complex.length(); ++k) {
    Matrix incoming = complex.expanded_differential(k + 1);
    const HomologyModule h = module_from(k, complex.term_rank(k), outgoing, incoming, field);
    profile.lengths.push_back(h.length());
    profile.loewy.push_back(loewy_length(as_subquotient(h, complex.algebra())));
    outgoing = std::move(incoming);
  }
  return profile;
}

std::vector<Index> homology_lengths(const KoszulComplex& complex) {
  const PrimeField& field = complex.algebra()->field();
  const Index n = complex.algebra()->dim();
  std::vector<Index> ranks;  // rank of d_k for k = 0..s+1
  for (int k = 0; k <= complex.length() + 1; ++k)
    ranks.push_back(matrix_rank(complex.expanded_differential(k), field));
  std::vector<Index> lengths;
  for (int k = 0; k <= complex.length(); ++k)
    lengths.push_back(n * complex.term_rank(k) - ranks[static_cast<std::size_t>(k)] -
                      ranks[static_cast<std::size_t>(k) + 1]);
  return lengths;
}

long long euler_sum(const HomologyProfile& profile) {
  long long sum = 0;
  for (std::size_t i = 1; i < profile.lengths.size(); ++i)
    sum += (i % 2 == 1 ? -1 : 1) * static_cast<long long>(profile.lengths[i]);
  return sum;
}

Fingerprint submodule_fingerprint(const HomologyModule& h) { return {h.cycles, h.boundaries}; }

}  // namespace koszpert

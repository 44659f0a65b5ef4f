#pragma once

#include "koszpert/field.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace koszpert {

using Exponents = std::vector<int>;

inline int total_degree(const Exponents& e) {
  int d = 0;
  for (int v : e) d += v;
  return d;
}

/// Sparse polynomial with coefficients in [1, p). Terms of degree above the
/// truncation degree are never stored.
struct Polynomial {
  std::map<Exponents, Residue> terms;

  bool is_zero() const { return terms.empty(); }
  Residue constant_term() const;
  friend bool operator==(const Polynomial&, const Polynomial&) = default;
};

/// Input error carrying the source (file name or "--seq"), a 1-based line, and
/// the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, int line, std::string token, const std::string& message);

  const std::string& source() const { return source_; }
  int line() const { return line_; }
  const std::string& token() const { return token_; }
  const std::string& message() const { return message_; }

 private:
  std::string source_;
  int line_;
  std::string token_;
  std::string message_;
};

struct Presentation {
  PrimeField field{2};
  std::vector<std::string> vars;
  int trunc_degree = 1;
  std::vector<Polynomial> relations;
  std::vector<std::string> relation_texts;  // kept so the ring can be rebuilt at another D

  int num_vars() const { return static_cast<int>(vars.size()); }
  /// Adds a relation from text; throws ParseError or std::invalid_argument.
  void add_relation(std::string_view text);
};

/// Grammar: sum of terms joined by '+'/'-'; term = [integer] ['*'] factor ('*' factor)*
/// or a bare integer; factor = var ['^' natural].
Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& vars,
                            const PrimeField& field, int max_degree);

inline Polynomial parse_polynomial(std::string_view text, const Presentation& pres) {
  return parse_polynomial(text, pres.vars, pres.field, pres.trunc_degree);
}

std::string format_polynomial(const Polynomial& poly, const std::vector<std::string>& vars);

Presentation parse_ring_text(std::string_view text, const std::string& source);
Presentation parse_ring_file(const std::string& path);

/// Splits "x, y^2 + z" into trimmed items.
std::vector<std::string> split_sequence(std::string_view comma_list);

}  // namespace koszpert

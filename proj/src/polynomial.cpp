#include "koszpert/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace koszpert {

Residue Polynomial::constant_term() const {
  for (const auto& [exps, coeff] : terms)
    if (total_degree(exps) == 0) return coeff;
  return 0;
}

ParseError::ParseError(std::string source, int line, std::string token, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + message +
                         (token.empty() ? std::string() : " near '" + token + "'")),
      source_(std::move(source)),
      line_(line),
      token_(std::move(token)),
      message_(message) {}

namespace {

constexpr int kExponentCap = 1 << 20;

class PolynomialParser {
 public:
  PolynomialParser(std::string_view text, const std::vector<std::string>& vars,
                   const PrimeField& field, int max_degree)
      : text_(text), vars_(vars), field_(field), max_degree_(max_degree) {}

  Polynomial parse() {
    Polynomial out;
    skip_space();
    if (at_end()) fail("", "empty polynomial");
    bool first = true;
    while (!at_end()) {
      Residue sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        advance();
      } else if (!first) {
        fail(current_token(), "expected '+' or '-'");
      }
      first = false;
      skip_space();
      parse_term(sign, out);
      skip_space();
    }
    return out;
  }

 private:
  void parse_term(Residue sign, Polynomial& out) {
    Residue coeff = 1;
    Exponents exps(vars_.size(), 0);
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = parse_residue();
      skip_space();
      if (peek() == '*') {
        advance();
        skip_space();
        parse_factor(exps);
      } else if (is_ident_start(peek())) {
        parse_factor(exps);
      }
    } else {
      parse_factor(exps);
    }
    skip_space();
    while (peek() == '*') {
      advance();
      skip_space();
      parse_factor(exps);
      skip_space();
    }
    if (!at_end() && peek() != '+' && peek() != '-') fail(current_token(), "malformed token");

    if (total_degree(exps) > max_degree_) return;
    Residue& slot = out.terms[exps];
    slot = field_.add(slot, field_.mul(sign, coeff));
    if (slot == 0) out.terms.erase(exps);
  }

  void parse_factor(Exponents& exps) {
    if (!is_ident_start(peek())) fail(current_token(), "malformed token");
    const std::size_t start = pos_;
    while (!at_end() && is_ident_char(peek())) advance();
    const std::string name(text_.substr(start, pos_ - start));
    const auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it == vars_.end()) fail(name, "unknown variable");
    int power = 1;
    skip_space();
    if (peek() == '^') {
      advance();
      skip_space();
      if (peek() == '-') fail("^-", "negative exponent");
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail(current_token(), "malformed exponent");
      power = parse_exponent();
    }
    int& slot = exps[static_cast<std::size_t>(it - vars_.begin())];
    slot = std::min(slot + power, kExponentCap);
  }

  Residue parse_residue() {
    Residue v = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      v = field_.reduce(v * 10 + (peek() - '0'));
      advance();
    }
    return v;
  }

  int parse_exponent() {
    long long v = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      v = std::min<long long>(v * 10 + (peek() - '0'), kExponentCap);
      advance();
    }
    return static_cast<int>(v);
  }

  static bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  std::string current_token() const {
    if (at_end()) return "<end>";
    std::size_t end = pos_ + 1;
    while (end < text_.size() && !std::isspace(static_cast<unsigned char>(text_[end])) &&
           is_ident_char(text_[end]) && is_ident_char(text_[pos_]))
      ++end;
    return std::string(text_.substr(pos_, end - pos_));
  }

  [[noreturn]] void fail(const std::string& token, const std::string& message) const {
    throw ParseError("<polynomial>", 1, token, message);
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void advance() { ++pos_; }

  std::string_view text_;
  const std::vector<std::string>& vars_;
  const PrimeField& field_;
  int max_degree_;
  std::size_t pos_ = 0;
};

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool valid_identifier(const std::string& name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_') return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

}  // namespace

Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& vars,
                            const PrimeField& field, int max_degree) {
  return PolynomialParser(text, vars, field, max_degree).parse();
}

std::string format_polynomial(const Polynomial& poly, const std::vector<std::string>& vars) {
  if (poly.is_zero()) return "0";
  // Highest degree first, then lexicographically larger exponent first.
  std::vector<std::pair<Exponents, Residue>> terms(poly.terms.begin(), poly.terms.end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    const int da = total_degree(a.first), db = total_degree(b.first);
    if (da != db) return da < db;
    return a.first > b.first;
  });
  std::ostringstream out;
  bool first = true;
  for (const auto& [exps, coeff] : terms) {
    if (!first) out << " + ";
    first = false;
    std::vector<std::string> factors;
    for (std::size_t j = 0; j < exps.size(); ++j) {
      if (exps[j] == 0) continue;
      factors.push_back(exps[j] == 1 ? vars[j] : vars[j] + "^" + std::to_string(exps[j]));
    }
    if (factors.empty()) {
      out << coeff;
      continue;
    }
    if (coeff != 1) out << coeff << "*";
    for (std::size_t f = 0; f < factors.size(); ++f) out << (f ? "*" : "") << factors[f];
  }
  return out.str();
}

void Presentation::add_relation(std::string_view text) {
  Polynomial rel = parse_polynomial(text, vars, field, trunc_degree);
  if (rel.constant_term() != 0)
    throw std::invalid_argument("relation '" + std::string(text) +
                                "' has a nonzero constant term (relations must lie in m)");
  relations.push_back(std::move(rel));
  relation_texts.emplace_back(trim(text));
}

Presentation parse_ring_text(std::string_view text, const std::string& source) {
  Presentation pres;
  bool have_p = false, have_vars = false, have_d = false;
  std::vector<std::pair<int, std::string>> pending_relations;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw.substr(0, raw.find('#'));
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(source, line_no, line, "expected 'key = value'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));

    if (key == "p") {
      Residue p = 0;
      try {
        std::size_t used = 0;
        p = std::stoll(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing");
        pres.field = PrimeField(p);
      } catch (const std::exception&) {
        throw ParseError(source, line_no, value, "characteristic must be a prime below 65536");
      }
      have_p = true;
    } else if (key == "vars") {
      std::istringstream names(value);
      std::string name;
      pres.vars.clear();
      while (names >> name) {
        if (!valid_identifier(name)) throw ParseError(source, line_no, name, "invalid variable name");
        if (std::find(pres.vars.begin(), pres.vars.end(), name) != pres.vars.end())
          throw ParseError(source, line_no, name, "duplicate variable");
        pres.vars.push_back(name);
      }
      if (pres.vars.empty()) throw ParseError(source, line_no, value, "no variables given");
      have_vars = true;
    } else if (key == "D") {
      try {
        std::size_t used = 0;
        const long long d = std::stoll(value, &used);
        if (used != value.size() || d < 1 || d > 1000) throw std::invalid_argument("range");
        pres.trunc_degree = static_cast<int>(d);
      } catch (const std::exception&) {
        throw ParseError(source, line_no, value, "truncation degree must be a natural number >= 1");
      }
      have_d = true;
    } else if (key == "rel") {
      pending_relations.emplace_back(line_no, value);
    } else {
      throw ParseError(source, line_no, key, "unknown key");
    }
  }
  if (!have_p) throw ParseError(source, line_no, "p", "missing characteristic 'p = <prime>'");
  if (!have_vars) throw ParseError(source, line_no, "vars", "missing 'vars = ...'");
  if (!have_d) throw ParseError(source, line_no, "D", "missing truncation degree 'D = ...'");

  for (const auto& [rel_line, rel_text] : pending_relations) {
    try {
      pres.add_relation(rel_text);
    } catch (const ParseError& e) {
      throw ParseError(source, rel_line, e.token(), e.message());
    } catch (const std::invalid_argument& e) {
      throw ParseError(source, rel_line, rel_text, e.what());
    }
  }
  return pres;
}

Presentation parse_ring_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "", "file not found");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_ring_text(buf.str(), path);
}

std::vector<std::string> split_sequence(std::string_view comma_list) {
  std::vector<std::string> items;
  std::size_t start = 0;
  while (start <= comma_list.size()) {
    const std::size_t comma = comma_list.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? comma_list.size() : comma;
    std::string item = trim(comma_list.substr(start, end - start));
    if (!item.empty()) items.push_back(std::move(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return items;
}

}  // namespace koszpert

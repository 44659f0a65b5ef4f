#include "koszpert/report.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace koszpert {

namespace {

std::string monomial_text(const Exponents& e, const std::vector<std::string>& vars) {
  std::string out;
  for (std::size_t j = 0; j < e.size(); ++j) {
    if (e[j] == 0) continue;
    if (!out.empty()) out += "*";
    out += vars[j];
    if (e[j] > 1) out += "^" + std::to_string(e[j]);
  }
  return out.empty() ? "1" : out;
}

std::string inline_value(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + inline_value(v[i]);
    return out + "]";
  }
  if (v.is_null()) return "-";
  return v.dump();
}

bool is_table(const Json& v) {
  return v.is_array() && !v.empty() &&
         std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_object(); });
}

void emit_text(const Json& obj, int indent, std::ostringstream& out) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  std::size_t width = 0;
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!it->is_object() && !is_table(*it)) width = std::max(width, it.key().size());

  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const Json& v = *it;
    if (v.is_object()) {
      out << pad << it.key() << ":\n";
      emit_text(v, indent + 2, out);
    } else if (is_table(v)) {
      std::set<std::string> columns;
      for (const Json& row : v)
        for (auto c = row.begin(); c != row.end(); ++c) columns.insert(c.key());
      std::vector<std::string> cols(columns.begin(), columns.end());
      std::vector<std::size_t> widths;
      for (const std::string& c : cols) {
        std::size_t w = c.size();
        for (const Json& row : v) w = std::max(w, inline_value(row.value(c, Json())).size());
        widths.push_back(w);
      }
      out << pad << it.key() << ":\n";
      auto line = [&](auto cell) {
        std::string text = pad + "  ";
        for (std::size_t c = 0; c < cols.size(); ++c) {
          std::string value = cell(c);
          if (c + 1 < cols.size()) value.resize(widths[c], ' ');
          text += value + (c + 1 < cols.size() ? "  " : "");
        }
        out << text << "\n";
      };
      line([&](std::size_t c) { return cols[c]; });
      for (const Json& row : v) line([&](std::size_t c) { return inline_value(row.value(cols[c], Json())); });
    } else {
      std::string key = it.key();
      key.resize(width, ' ');
      out << pad << key << "  " << inline_value(v) << "\n";
    }
  }
}

template <typename T>
std::vector<T> vec(const Json& j) {
  return j.get<std::vector<T>>();
}

}  // namespace

Json ring_json(const LocalAlgebra& algebra) {
  const Presentation& pres = algebra.presentation();
  return Json{{"p", pres.field.characteristic()},
              {"vars", pres.vars},
              {"D", pres.trunc_degree},
              {"dim_R", algebra.dim()},
              {"version", std::string(kVersion)}};
}

Json info_json(const LocalAlgebra& algebra) {
  const Presentation& pres = algebra.presentation();
  std::vector<std::string> basis;
  for (Index idx : algebra.quotient_basis())
    basis.push_back(monomial_text(algebra.monomials()[static_cast<std::size_t>(idx)], pres.vars));
  std::vector<Index> powers;
  for (int n = 0; n <= algebra.loewy_length(); ++n) powers.push_back(algebra.m_power(n).dim());
  return Json{{"relations", pres.relation_texts},
              {"standard_monomials", basis},
              {"m_power_dims", powers},
              {"loewy_R", algebra.loewy_length()}};
}

Json profile_json(const HomologyProfile& profile) {
  return Json{{"lengths", profile.lengths}, {"loewy", profile.loewy}, {"euler_sum", euler_sum(profile)}};
}

Json invariants_json(const SequenceInvariants& inv) {
  Json j = profile_json(inv.base);
  j["a"] = inv.a;
  j["ar"] = inv.ar;
  j["colon_length"] = inv.colon_len;
  return j;
}

Json bound_json(const PerturbationBound& bound, const NkTable& nk) {
  return Json{{"a", bound.a},
              {"ar", bound.ar},
              {"weighted", bound.weighted},
              {"N", bound.N},
              {"single_c", bound.single_c},
              {"nk", nk.values}};
}

Json to_json(const Witness& w) {
  return Json{{"trial", w.trial},       {"epsilons", w.epsilons}, {"coords", w.coords},
              {"failed", w.failed},     {"lengths", w.lengths},   {"loewy", w.loewy}};
}

Witness witness_from_json(const Json& j) {
  Witness w;
  w.trial = j.at("trial").get<std::uint64_t>();
  w.epsilons = vec<std::string>(j.at("epsilons"));
  w.coords = j.at("coords").get<std::vector<std::vector<Residue>>>();
  w.failed = vec<std::string>(j.at("failed"));
  w.lengths = vec<Index>(j.at("lengths"));
  w.loewy = vec<int>(j.at("loewy"));
  return w;
}

Json to_json(const PerturbationReport& report) {
  Json j = invariants_json(report.invariants);
  j["sequence"] = report.sequence;
  j["weighted"] = report.bound.weighted;
  j["bound_N"] = report.bound.N;
  j["single_c"] = report.bound.single_c;
  j["nk"] = report.nk.values;
  j["N"] = report.N;
  j["mode"] = std::string(to_string(report.mode));
  j["trials"] = report.trials;
  j["seed"] = report.seed;
  j["verdict"] = report.verdict ? "PASS" : "FAIL";
  Json checks = Json::object();
  for (std::size_t c = 0; c < kCheckCount; ++c) {
    const Check check = static_cast<Check>(c);
    const CheckTally& t = report.tallies[c];
    checks[std::string(check_key(check))] = Json{{"name", std::string(check_name(check))},
                                                 {"guaranteed", is_guaranteed(check)},
                                                 {"pass", t.pass},
                                                 {"fail", t.fail},
                                                 {"not_applicable", t.not_applicable}};
  }
  j["checks"] = checks;
  Json witnesses = Json::array();
  for (const Witness& w : report.witnesses) witnesses.push_back(to_json(w));
  j["witnesses"] = witnesses;
  return j;
}

PerturbationReport report_from_json(const Json& j) {
  PerturbationReport r;
  r.sequence = vec<std::string>(j.at("sequence"));
  r.invariants.a = vec<int>(j.at("a"));
  r.invariants.ar = vec<int>(j.at("ar"));
  r.invariants.base.lengths = vec<Index>(j.at("lengths"));
  r.invariants.base.loewy = vec<int>(j.at("loewy"));
  r.invariants.colon_len = j.at("colon_length").get<Index>();
  r.bound.a = r.invariants.a;
  r.bound.ar = r.invariants.ar;
  r.bound.weighted = j.at("weighted").get<long long>();
  r.bound.N = j.at("bound_N").get<long long>();
  r.bound.single_c = j.at("single_c").get<long long>();
  r.nk.values = j.at("nk").get<std::vector<std::vector<long long>>>();
  r.nk.s = static_cast<int>(r.nk.values.size());
  r.N = j.at("N").get<int>();
  const std::string mode = j.at("mode").get<std::string>();
  if (mode != "exhaustive" && mode != "sampled") throw std::invalid_argument("unknown mode '" + mode + "'");
  r.mode = mode == "exhaustive" ? EnumerationMode::exhaustive : EnumerationMode::sampled;
  r.trials = j.at("trials").get<std::uint64_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.verdict = j.at("verdict").get<std::string>() == "PASS";
  for (std::size_t c = 0; c < kCheckCount; ++c) {
    const Json& t = j.at("checks").at(std::string(check_key(static_cast<Check>(c))));
    r.tallies[c] = {t.at("pass").get<std::uint64_t>(), t.at("fail").get<std::uint64_t>(),
                    t.at("not_applicable").get<std::uint64_t>()};
  }
  for (const Json& w : j.at("witnesses")) r.witnesses.push_back(witness_from_json(w));
  return r;
}

Json to_json(const IndexSearchResult& result) {
  Json probes = Json::array();
  for (const IndexProbe& p : result.probes) {
    Json probe{{"N", p.N},
               {"mode", std::string(to_string(p.mode))},
               {"trials", p.trials},
               {"refuted", p.refuted},
               {"witness_trial", nullptr},
               {"witness_epsilons", nullptr}};
    if (p.witness) {
      probe["witness_trial"] = p.witness->trial;
      probe["witness_epsilons"] = p.witness->epsilons;
    }
    probes.push_back(probe);
  }
  auto optional_json = [](const auto& v) { return v ? Json(*v) : Json(nullptr); };
  return Json{{"index", optional_json(result.index)},
              {"certified_index", optional_json(result.certified_index)},
              {"certified", result.certified},
              {"bound_N", result.bound_N},
              {"gap", optional_json(result.gap)},
              {"probes", probes}};
}

Json to_json(const StabilityReport& report) {
  return Json{{"D", report.D},
              {"at_D", invariants_json(report.at_D)},
              {"at_D_plus_1", invariants_json(report.at_next)},
              {"a_stable", report.a_stable},
              {"ar_stable", report.ar_stable},
              {"lengths_stable", report.lengths_stable},
              {"stable", report.stable}};
}

Json to_json(const std::vector<oracle::OracleReport>& reports) {
  Json rows = Json::array();
  bool all = true;
  for (const oracle::OracleReport& r : reports) {
    rows.push_back(Json{{"quantity", r.quantity},
                        {"main", r.main_value},
                        {"oracle", r.oracle_value},
                        {"agree", r.agree}});
    all = all && r.agree;
  }
  return Json{{"cross_check", rows},
              {"cross_check_instance", reports.empty() ? std::string() : reports.front().instance},
              {"cross_check_agree", all}};
}

Json document(const LocalAlgebra& algebra, const Json& body) {
  Json doc = ring_json(algebra);
  doc.update(body);
  return doc;
}

std::string emit(const Json& doc, Format format) {
  if (format == Format::json) return doc.dump(2) + "\n";
  std::ostringstream out;
  emit_text(doc, 0, out);
  return out.str();
}

}  // namespace koszpert

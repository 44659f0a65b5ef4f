#include "koszpert/cli.hpp"

#include "koszpert/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <ostream>

namespace koszpert {

namespace {

struct Options {
  std::string ring_path;
  std::string seq;
  std::string seq_file;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  std::uint64_t budget = std::uint64_t{1} << 20;
  int max_N = 8;
  std::optional<int> N;
  unsigned threads = 1;
  std::string format = "text";
  std::string quantity = "all";
  bool cross_check = false;
};

enum class Needs { ring, sequence };

struct Verb {
  const char* name;
  const char* help;
  Needs needs;
};

const Verb kVerbs[] = {
    {"info", "Describe R = GF(p)[x]/(J + m^{D+1}): standard monomials, dim of each m^n, Loewy length.",
     Needs::ring},
    {"homology",
     "Koszul homology H_0..H_s of the sequence: lengths and Loewy lengths. Exercises "
     "H_0 = R/I, H_s = (0:I) and the vanishing of the alternating sum of lengths.",
     Needs::sequence},
    {"invariants",
     "Colon Loewy lengths a_i of the filter regular sequence and Artin-Rees numbers of "
     "(x_1..x_i), the inputs of the perturbation theorems.",
     Needs::sequence},
    {"bound",
     "Explicit perturbation order N = max{a_1 + 2a_2 + ... + 2^{s-1}a_s, ar_1..ar_s} + 1 of "
     "the main invariance theorem, with the n_k table bounding Loewy lengths of perturbed homology.",
     Needs::sequence},
    {"verify",
     "Main invariance theorem: for every tested e in (m^N)^s, the alternating sum of lengths, "
     "H_s as a submodule, the last colon length and the n_k Loewy bounds are unchanged by "
     "x -> x + e. Also measures each length separately and the single element annihilator "
     "equality (0:x_1') = (0:x_1).",
     Needs::sequence},
    {"index-search",
     "Per-index invariance (each length of H_i, i >= 1, preserved): smallest N at which no "
     "tested perturbation changes any length, compared with the explicit bound.",
     Needs::sequence},
    {"stability",
     "Recompute a, ar and homology lengths in the truncations at D and D + 1 and report "
     "whether they agree.",
     Needs::sequence},
    {"cross-check",
     "Compare the main computations with independent oracles: the long exact sequence "
     "recursion for homology lengths, brute-force annihilators and a naive Artin-Rees search.",
     Needs::sequence},
};

std::vector<std::string> read_sequence_file(const std::string& path, std::vector<int>& lines) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "", "file not found");
  std::vector<std::string> items;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    items.push_back(line.substr(first, last - first + 1));
    lines.push_back(line_no);
  }
  return items;
}

SequenceSpec load_sequence(const AlgebraPtr& algebra, const Options& opt) {
  if (!opt.seq_file.empty()) {
    std::vector<int> lines;
    const std::vector<std::string> items = read_sequence_file(opt.seq_file, lines);
    if (items.empty()) throw ParseError(opt.seq_file, 0, "", "empty sequence");
    try {
      return parse_sequence(algebra, items);
    } catch (const ParseError& e) {
      throw ParseError(opt.seq_file, lines[static_cast<std::size_t>(e.line() - 1)], e.token(), e.message());
    }
  }
  const std::vector<std::string> items = split_sequence(opt.seq);
  if (items.empty()) throw ParseError("--seq", 1, opt.seq, "empty sequence");
  return parse_sequence(algebra, items);
}

StabilityQuantity parse_quantity(const std::string& text) {
  static const std::map<std::string, StabilityQuantity> names{{"a", StabilityQuantity::a},
                                                              {"ar", StabilityQuantity::ar},
                                                              {"lengths", StabilityQuantity::lengths},
                                                              {"all", StabilityQuantity::all}};
  return names.at(text);
}

/// Returns the exit code; writes the document to `doc`.
int dispatch(const std::string& verb, const Options& opt, Json& doc) {
  const Presentation pres = parse_ring_file(opt.ring_path);
  const AlgebraPtr algebra = build_algebra(pres);
  if (verb == "info") {
    doc = document(*algebra, info_json(*algebra));
    return kExitOk;
  }

  const SequenceSpec seq = load_sequence(algebra, opt);
  Json body{{"sequence", seq.labels}};
  int code = kExitOk;

  if (verb == "homology") {
    body.update(profile_json(homology_profile(KoszulComplex(seq))));
  } else if (verb == "invariants") {
    body.update(invariants_json(sequence_profile(seq)));
  } else if (verb == "bound") {
    const SequenceInvariants inv = sequence_profile(seq);
    body.update(bound_json(bound_N(inv), nk_table(inv.a)));
  } else if (verb == "verify") {
    VerifyOptions v;
    v.trials = opt.trials;
    v.budget = opt.budget;
    v.seed = opt.seed;
    v.N = opt.N;
    v.threads = opt.threads;
    const PerturbationReport report = verify(seq, v);
    body.update(to_json(report));
    if (!report.verdict) code = kExitCheckFailed;
  } else if (verb == "index-search") {
    IndexSearchOptions s;
    s.max_N = opt.max_N;
    s.budget = opt.budget;
    s.trials = opt.trials;
    s.seed = opt.seed;
    s.threads = opt.threads;
    body.update(to_json(index_search(seq, s)));
  } else if (verb == "stability") {
    body.update(to_json(truncation_stability(pres, seq.labels, parse_quantity(opt.quantity))));
  }

  if (verb == "cross-check" || opt.cross_check) {
    const Json cc = to_json(oracle::cross_check(seq, opt.budget));
    body.update(cc);
    if (!cc.at("cross_check_agree").get<bool>()) code = kExitCheckFailed;
  }
  doc = document(*algebra, body);
  return code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"koszpert: Koszul homology and perturbation invariance over truncated local algebras"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  Options opt;
  for (const Verb& verb : kVerbs) {
    CLI::App* sub = app.add_subcommand(verb.name, verb.help);
    sub->add_option("ring", opt.ring_path, "Ring file (p = ..., vars = ..., D = ..., rel = ...)")->required();
    sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    if (verb.needs == Needs::ring) continue;
    auto* seq = sub->add_option("--seq", opt.seq, "Comma-separated sequence, e.g. \"x, y^2 + x*y\"");
    auto* seq_file = sub->add_option("--seq-file", opt.seq_file, "File with one polynomial per line");
    seq->excludes(seq_file);
    sub->add_option("--budget", opt.budget, "Largest enumeration size tried exhaustively")->capture_default_str();
    sub->add_flag("--cross-check", opt.cross_check, "Also compare against the independent oracles");
    const std::string name = verb.name;
    if (name == "verify" || name == "index-search") {
      sub->add_option("--trials", opt.trials, "Samples drawn when enumeration exceeds the budget")
          ->capture_default_str();
      sub->add_option("--seed", opt.seed, "Sampling seed")->capture_default_str();
      sub->add_option("--threads", opt.threads, "Worker threads; output does not depend on it")
          ->check(CLI::Range(1u, 1024u))
          ->capture_default_str();
    }
    if (name == "verify") sub->add_option("--N", opt.N, "Perturbation order (default: the explicit bound)");
    if (name == "index-search")
      sub->add_option("--max-N", opt.max_N, "Largest N probed")->check(CLI::PositiveNumber)->capture_default_str();
    if (name == "stability")
      sub->add_option("--quantity", opt.quantity, "Compared quantity")
          ->check(CLI::IsMember({"a", "ar", "lengths", "all"}))
          ->capture_default_str();
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  const std::string verb = chosen->get_name();
  if (verb != "info" && opt.seq.empty() && opt.seq_file.empty()) {
    err << "error: " << verb << " requires --seq or --seq-file\n";
    return kExitInputError;
  }

  Json doc;
  int code = kExitOk;
  try {
    code = dispatch(verb, opt, doc);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::logic_error& e) {
    err << "internal check failed: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  out << emit(doc, opt.format == "json" ? Format::json : Format::text);
  return code;
}

}  // namespace koszpert

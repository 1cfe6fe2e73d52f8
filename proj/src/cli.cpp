#include "permucoh/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "permucoh/checker.hpp"
#include "permucoh/generator.hpp"
#include "permucoh/permutahedron.hpp"
#include "permucoh/print.hpp"

namespace permucoh {

namespace {

constexpr const char* kGrammar =
    "usage:\n"
    "  permucoh gen -n <N> [--format text|latex|sexp|json] [--lengths] [--max-steps S] [--out FILE]\n"
    "  permucoh check -n <N> [--json] [--max-steps S]\n"
    "  permucoh encode <WORD>\n"
    "  permucoh decode <d0> <d1> ...\n"
    "  permucoh facets -n <LETTERS> [--regions]\n"
    "  permucoh locate <c1> ... <cn>\n"
    "  permucoh verify-partition -n <LETTERS> [--denominator D] [--json]\n"
    "  permucoh layout -n <3|4> [--out FILE.svg]\n"
    "  permucoh parse [--format text|latex|sexp|json]   (s-expression on stdin)\n";

class UsageError : public Error {
 public:
  using Error::Error;
};

std::size_t max_n() {
  const char* env = std::getenv("PERMUCOH_MAX_N");
  if (!env || !*env) return kDefaultMaxN;
  std::size_t v = 0;
  const char* end = env + std::char_traits<char>::length(env);
  auto [p, ec] = std::from_chars(env, end, v);
  if (ec != std::errc() || p != end)
    throw UsageError(std::string("PERMUCOH_MAX_N is not a non-negative integer: '") + env + "'");
  return v;
}

void check_n(std::size_t n) {
  std::size_t bound = max_n();
  if (n > bound)
    throw UsageError("n = " + std::to_string(n) + " exceeds the generation limit " +
                     std::to_string(bound) + " (raise it with PERMUCOH_MAX_N)");
}

std::string side_bits(const std::vector<Side>& sides) {
  std::string s;
  for (Side d : sides) s += d == Side::Lo ? '0' : '1';
  return s;
}

// Writes to --out when given, otherwise to `out`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& out) : out_(&out), path_(path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw Error("cannot open " + path + " for writing");
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }
  void finish() {
    out_->flush();
    if (!*out_) throw Error(path_.empty() ? "write to stdout failed" : "write to " + path_ + " failed");
  }

 private:
  std::ostream* out_;
  std::ofstream file_;
  std::string path_;
};

Format format_arg(const std::string& name) {
  std::optional<Format> f = parse_format(name);
  if (!f) throw UsageError("unknown format '" + name + "'");
  return *f;
}

int cmd_gen(std::size_t n, const std::string& format, bool lengths, std::uint64_t max_steps,
            const std::string& out_path, std::ostream& out) {
  check_n(n);
  PrintOptions popts;
  popts.format = format_arg(format);
  if (lengths && popts.format == Format::Sexp)
    throw UsageError("--lengths is not available for the sexp format");
  GenerateOptions gopts;
  gopts.normalize.max_steps = max_steps;
  Term t = simplex_type(n, gopts);
  Annotation ann;
  if (lengths) {
    ann = annotate_lengths(t);
    popts.lengths = &ann;
  }
  Sink sink(out_path, out);
  pretty_print(sink.stream(), t, popts);
  sink.finish();
  return kExitOk;
}

int cmd_check(std::size_t n, bool as_json, std::uint64_t max_steps, std::ostream& out) {
  check_n(n);
  if (n == 0) throw UsageError("check needs n >= 1");
  GenerateOptions gopts;
  gopts.normalize.max_steps = max_steps;
  CheckReport rep = check_formula(n, gopts);
  CombinatoricsReport comb = cross_check_combinatorics(n, gopts);
  bool ok = rep.ok() && comb.ok();
  if (as_json) {
    nlohmann::ordered_json j;
    j["n"] = n;
    j["checks"] = rep.checks;
    j["violations"] = nlohmann::ordered_json::array();
    for (const Violation& v : rep.violations)
      j["violations"].push_back(
          {{"kind", v.kind}, {"location", v.location}, {"expected", v.expected}, {"found", v.found}});
    j["corners"] = nlohmann::ordered_json::array();
    for (const Corner& c : rep.corners)
      j["corners"].push_back({{"sides", side_bits(c.sides)},
                              {"type_word", c.type_word},
                              {"endpoint_word", c.endpoint_word}});
    j["combinatorics"] = {{"products", comb.products},
                          {"atoms", comb.atoms},
                          {"corners", comb.corners},
                          {"problems", comb.problems}};
    j["ok"] = ok;
    out << j.dump(2) << '\n';
  } else {
    out << "n=" << n << " checks=" << rep.checks << " violations=" << rep.violations.size()
        << '\n';
    for (const Violation& v : rep.violations)
      out << "violation " << v.kind << " at " << v.location << "\n  expected: " << v.expected
          << "\n  found:    " << v.found << '\n';
    for (const Corner& c : rep.corners)
      out << "corner " << side_bits(c.sides) << ' ' << c.type_word << '\n';
    out << "combinatorics products=" << comb.products << " atoms=" << comb.atoms
        << " corners=" << comb.corners << " problems=" << comb.problems.size() << '\n';
    for (const std::string& p : comb.problems) out << "problem " << p << '\n';
    out << (ok ? "ok" : "FAILED") << '\n';
  }
  return ok ? kExitOk : kExitViolation;
}

int cmd_encode(const std::string& word, std::ostream& out) {
  MixedRadixCode code = encode_permutation(word);
  for (std::size_t i = 0; i < code.digits.size(); ++i) out << (i ? " " : "") << code.digits[i];
  out << '\n';
  return kExitOk;
}

int cmd_decode(const std::vector<std::string>& digits, std::ostream& out) {
  MixedRadixCode code;
  for (const std::string& d : digits) {
    unsigned v = 0;
    auto [p, ec] = std::from_chars(d.data(), d.data() + d.size(), v);
    if (ec != std::errc() || p != d.data() + d.size())
      throw CombinatoricsError("not a digit: '" + d + "'");
    code.digits.push_back(v);
  }
  out << decode_permutation(code) << '\n';
  return kExitOk;
}

int cmd_facets(std::size_t letters, bool regions, std::ostream& out) {
  if (letters < 1 || letters > kMaxFacetLetters)
    throw UsageError("facets supports 1 to " + std::to_string(kMaxFacetLetters) + " letters");
  for_each_facet(letters, [&](const OrderedPartition& f) {
    out << f.str();
    if (regions) out << '\t' << region_of(f).str();
    out << '\n';
  });
  return kExitOk;
}

int cmd_locate(const std::vector<std::string>& coords, std::ostream& out) {
  RationalPoint p;
  for (const std::string& c : coords) p.push_back(parse_rational(c));
  out << locate(p).str() << '\n';
  return kExitOk;
}

int cmd_verify(std::size_t letters, std::int64_t denominator, bool as_json, std::ostream& out) {
  if (letters < 1 || letters > kMaxVerifyLetters)
    throw UsageError("verify-partition supports 1 to " + std::to_string(kMaxVerifyLetters) +
                     " letters");
  if (denominator < 1) throw UsageError("--denominator must be at least 1");
  PartitionReport rep = verify_partition(letters, denominator);
  if (as_json) {
    nlohmann::ordered_json j = {{"letters", rep.letters},
                                {"denominator", rep.denominator},
                                {"facets", rep.facets},
                                {"pairs_checked", rep.pairs_checked},
                                {"grid_points", rep.grid_points},
                                {"located", rep.located},
                                {"violations", rep.violations},
                                {"ok", rep.ok()}};
    out << j.dump(2) << '\n';
  } else {
    out << "letters=" << rep.letters << " denominator=" << rep.denominator
        << " facets=" << rep.facets << " pairs=" << rep.pairs_checked
        << " grid_points=" << rep.grid_points << " located=" << rep.located
        << " violations=" << rep.violations.size() << '\n';
    for (const std::string& v : rep.violations) out << "violation " << v << '\n';
  }
  return rep.ok() ? kExitOk : kExitViolation;
}

int cmd_layout(std::size_t letters, const std::string& out_path, std::ostream& out) {
  if (letters != 3 && letters != 4) throw UsageError("layout supports -n 3 or -n 4");
  Sink sink(out_path, out);
  sink.stream() << emit_layout(letters);
  sink.finish();
  return kExitOk;
}

int cmd_parse(const std::string& format, std::istream& in, std::ostream& out) {
  PrintOptions popts;
  popts.format = format_arg(format);
  std::string src((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  Term t = parse_sexp(src);
  pretty_print(out, t, popts);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Coherence cells of the permutahedra: generation, checking and combinatorics",
               "permucoh"};
  app.require_subcommand(1);

  std::size_t n = 0;
  std::string format = "text";
  std::string out_path;
  bool lengths = false;
  bool as_json = false;
  bool regions = false;
  std::uint64_t max_steps = NormalizeOptions{}.max_steps;
  std::int64_t denominator = 2;
  std::string word;
  std::vector<std::string> items;

  auto* gen = app.add_subcommand("gen", "print the coherence type for the (n+1)-permutahedron");
  gen->add_option("-n", n, "dimension")->required();
  gen->add_option("--format", format, "text, latex, sexp or json");
  gen->add_flag("--lengths", lengths, "annotate Moore lengths");
  gen->add_option("--max-steps", max_steps, "reduction steps allowed per normalization");
  gen->add_option("--out", out_path, "write to FILE instead of stdout");

  auto* check = app.add_subcommand("check", "verify boundaries, seams and corners");
  check->add_option("-n", n, "dimension")->required();
  check->add_flag("--json", as_json);
  check->add_option("--max-steps", max_steps, "reduction steps allowed per normalization");

  auto* enc = app.add_subcommand("encode", "permutation word to mixed-radix digits");
  enc->add_option("word", word)->required();

  auto* dec = app.add_subcommand("decode", "mixed-radix digits to permutation word");
  dec->add_option("digits", items)->required();

  auto* fac = app.add_subcommand("facets", "list ordered partitions");
  fac->add_option("-n", n, "number of letters")->required();
  fac->add_flag("--regions", regions, "also print the region of each facet");

  auto* loc = app.add_subcommand("locate", "ordered partition whose region contains a point");
  loc->add_option("coords", items)->required();

  auto* ver = app.add_subcommand("verify-partition", "check that the regions tile the box");
  ver->add_option("-n", n, "number of letters")->required();
  ver->add_option("--denominator", denominator, "grid spacing 1/D");
  ver->add_flag("--json", as_json);

  auto* lay = app.add_subcommand("layout", "SVG of the regions for 3 or 4 letters");
  lay->add_option("-n", n, "number of letters")->required();
  lay->add_option("--out", out_path, "write to FILE instead of stdout");

  auto* par = app.add_subcommand("parse", "read an s-expression term from stdin and print it");
  par->add_option("--format", format, "text, latex, sexp or json (default sexp)");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << kGrammar;
    return kExitUsage;
  }

  try {
    if (*gen) return cmd_gen(n, format, lengths, max_steps, out_path, out);
    if (*check) return cmd_check(n, as_json, max_steps, out);
    if (*enc) return cmd_encode(word, out);
    if (*dec) return cmd_decode(items, out);
    if (*fac) return cmd_facets(n, regions, out);
    if (*loc) return cmd_locate(items, out);
    if (*ver) return cmd_verify(n, denominator, as_json, out);
    if (*lay) return cmd_layout(n, out_path, out);
    if (*par) return cmd_parse(par->count("--format") ? format : "sexp", in, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n' << kGrammar;
    return kExitUsage;
  } catch (const NormalizeLimitError& e) {
    err << "error: " << e.what() << " (raise it with --max-steps)\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitViolation;
  }
  err << kGrammar;
  return kExitUsage;
}

}  // namespace permucoh

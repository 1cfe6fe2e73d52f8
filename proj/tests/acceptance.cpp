// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include <sys/resource.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include "json.hpp"
#include "listing_parser.hpp"
#include "oracles.hpp"
#include "permucoh/cli.hpp"
#include "permucoh/display.hpp"
#include "permucoh/generator.hpp"
#include "permucoh/kernel.hpp"
#include "permucoh/permutahedron.hpp"
#include "permucoh/print.hpp"
#include "random_terms.hpp"

using namespace permucoh;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = run(args, in, out, err);
  return {code, out.str(), err.str()};
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string golden(std::size_t n) {
  return read_file(std::string(PERMUCOH_GOLDEN_DIR) + "/simplex_" + std::to_string(n) + ".txt");
}

std::set<std::string> atoms_of(const Term& t) {
  std::vector<std::string> v = letter_atoms(t);
  return {v.begin(), v.end()};
}

Outcome golden_listings() {
  Outcome o;
  std::ostringstream d;
  for (std::size_t n = 1; n <= 4; ++n) {
    auto t0 = std::chrono::steady_clock::now();
    CliResult r = cli({"gen", "-n", std::to_string(n), "--format", "latex"});
    double secs = seconds_since(t0);
    if (r.code != 0) {
      o.fail("gen -n " + std::to_string(n) + " exited " + std::to_string(r.code));
      continue;
    }
    Term got = testsupport::parse_listing(testsupport::unescape_latex(r.out));
    Term want = testsupport::parse_listing(golden(n));
    if (got != want) o.fail("listing " + std::to_string(n) + " differs from the reference listing");
    if (secs >= 1.0) o.fail("gen -n " + std::to_string(n) + " took " + std::to_string(secs) + " s");
    d << (n > 1 ? ", " : "") << "n=" << n << " " << static_cast<int>(secs * 1000) << " ms";
  }
  if (o.ok) o.detail = "structural match for n=1..4 (" + d.str() + ")";
  return o;
}

Outcome scale() {
  Outcome o;
  auto path = std::filesystem::temp_directory_path() / "permucoh_acceptance_gen8.txt";
  auto t0 = std::chrono::steady_clock::now();
  CliResult r = cli({"gen", "-n", "8", "--out", path.string()});
  double secs = seconds_since(t0);
  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  double peak_gb = static_cast<double>(usage.ru_maxrss) / (1024.0 * 1024.0);
  auto bytes = std::filesystem::exists(path) ? std::filesystem::file_size(path) : 0;
  std::filesystem::remove(path);
  if (r.code != 0) o.fail("gen -n 8 exited " + std::to_string(r.code) + ": " + r.err);
  if (secs > 600) o.fail("gen -n 8 took " + std::to_string(secs) + " s");
  if (peak_gb > 8) o.fail("peak memory " + std::to_string(peak_gb) + " GB");
  if (o.ok) {
    std::ostringstream d;
    d << "gen -n 8 in " << secs << " s, " << bytes << " bytes written, process peak RSS "
      << usage.ru_maxrss / 1024 << " MB";
    o.detail = d.str();
  }
  return o;
}

Outcome census() {
  Outcome o;
  for (std::size_t n = 1; n <= 8; ++n) {
    CliResult r = cli({"gen", "-n", std::to_string(n), "--format", "sexp"});
    std::set<std::string> got = atoms_of(parse_sexp(r.out));
    if (got != testsupport::proper_subsets(n + 1))
      o.fail("n=" + std::to_string(n) + " has " + std::to_string(got.size()) + " letter atoms");
  }
  std::set<std::string> listed = atoms_of(testsupport::parse_listing(golden(3)));
  if (listed.size() != 14 || listed != testsupport::proper_subsets(4))
    o.fail("reference listing 3 has " + std::to_string(listed.size()) + " arguments");
  if (o.ok) o.detail = "2^(n+1)-2 proper subsets for n=1..8; listing 3 has the same 14";
  return o;
}

Outcome boundary() {
  Outcome o;
  std::ostringstream d;
  for (std::size_t n = 1; n <= 6; ++n) {
    auto t0 = std::chrono::steady_clock::now();
    CliResult r = cli({"check", "-n", std::to_string(n), "--json"});
    double secs = seconds_since(t0);
    auto j = nlohmann::json::parse(r.out, nullptr, false);
    if (j.is_discarded()) {
      o.fail("check -n " + std::to_string(n) + " printed no report: " + r.err);
      continue;
    }
    if (r.code != 0 || !j["violations"].empty() || !j["combinatorics"]["problems"].empty())
      o.fail("check -n " + std::to_string(n) + " reports " +
             std::to_string(j["violations"].size()) + " violations");
    std::string identity, reversal;
    for (std::size_t k = 0; k <= n; ++k) identity += static_cast<char>('A' + k);
    reversal.assign(identity.rbegin(), identity.rend());
    auto letters = [](const std::string& w) {
      std::string s;
      for (char c : w)
        if (c >= 'A' && c <= 'Z') s += c;
      return s;
    };
    for (const auto& c : j["corners"]) {
      std::string sides = c["sides"];
      std::string w = letters(c["type_word"]);
      if (sides == std::string(n, '0') && w != identity) o.fail("all-lo corner is " + w);
      if (sides == std::string(n, '1') && w != reversal) o.fail("all-hi corner is " + w);
    }
    try {
      annotate_lengths(simplex_type(n));
    } catch (const Error& e) {
      o.fail(std::string("lengths: ") + e.what());
    }
    d << (n > 1 ? ", " : "") << j["checks"].get<std::size_t>() << " checks at n=" << n << " ("
      << static_cast<int>(secs * 1000) << " ms)";
  }
  if (o.ok) o.detail = "zero violations for n=1..6: " + d.str();
  return o;
}

Outcome encoding() {
  Outcome o;
  if (cli({"encode", "EBDAC"}).out != "0 1 2 1 3\n") o.fail("encode EBDAC gave " + cli({"encode", "EBDAC"}).out);
  auto t0 = std::chrono::steady_clock::now();
  std::size_t total = 0;
  for (std::size_t n = 1; n <= 7; ++n) {
    std::string w;
    for (std::size_t i = 0; i < n; ++i) w += static_cast<char>('A' + i);
    std::set<std::vector<unsigned>> codes;
    do {
      MixedRadixCode c = encode_permutation(w);
      if (decode_permutation(c) != w) o.fail("round trip failed for " + w);
      codes.insert(c.digits);
      ++total;
    } while (std::next_permutation(w.begin(), w.end()));
    std::size_t fact = 1;
    for (std::size_t i = 2; i <= n; ++i) fact *= i;
    if (codes.size() != fact) o.fail("encoding not injective on " + std::to_string(n) + " letters");
  }
  double secs = seconds_since(t0);
  if (secs >= 10) o.fail("bijectivity sweep took " + std::to_string(secs) + " s");
  if (o.ok)
    o.detail = "EBDAC -> 0 1 2 1 3; " + std::to_string(total) + " permutations round-trip in " +
               std::to_string(static_cast<int>(secs * 1000)) + " ms";
  return o;
}

Outcome point_location() {
  Outcome o;
  std::string got = cli({"locate", "1", "1.7", "2", "0.5"}).out;
  if (got != "[AE][BCD]\n") o.fail("locate gave " + got);
  std::string regions = cli({"facets", "-n", "5", "--regions"}).out;
  for (const char* line : {"[BD][C][AE]\t{0}×{1}×(0,1)×(3,4)\n", "[BC][ADE]\t(0,1)×{0}×(0,1)×(2,4)\n"})
    if (regions.find(line) == std::string::npos) o.fail(std::string("missing region line ") + line);
  if (o.ok) o.detail = "[AE][BCD]; {0}×{1}×(0,1)×(3,4); (0,1)×{0}×(0,1)×(2,4)";
  return o;
}

Outcome partition_tiling() {
  Outcome o;
  std::map<int, std::size_t> expected{{2, 3}, {3, 13}, {4, 75}, {5, 541}};
  auto t0 = std::chrono::steady_clock::now();
  std::ostringstream d;
  for (auto [letters, facets] : expected) {
    CliResult r = cli({"verify-partition", "-n", std::to_string(letters), "--denominator", "2", "--json"});
    auto j = nlohmann::json::parse(r.out, nullptr, false);
    if (j.is_discarded() || r.code != 0 || j["ok"] != true || j["facets"] != facets ||
        j["located"] != j["grid_points"]) {
      o.fail("verify-partition -n " + std::to_string(letters) + ": " + r.out + r.err);
      continue;
    }
    d << (letters > 2 ? ", " : "") << facets;
  }
  double secs = seconds_since(t0);
  if (secs >= 60) o.fail("took " + std::to_string(secs) + " s");
  if (o.ok) o.detail = "facets " + d.str() + ", disjoint, every grid point located once, " +
                       std::to_string(static_cast<int>(secs * 1000)) + " ms";
  return o;
}

Outcome kernel_laws() {
  Outcome o;
  constexpr int trials = 1000;
  testsupport::TermGen gen(2024);
  auto ren = [](std::size_t k) { return 2 * k + 3; };
  auto ren2 = [](std::size_t k) { return k / 2; };
  Substitution id = [](std::size_t k) { return Term::cvar(k); };
  NormalizeOptions budget;
  budget.max_steps = 20000;
  int counts[6] = {0, 0, 0, 0, 0, 0};
  for (int n = 0; n < trials; ++n) {
    Term t = gen(3, 2);
    if (rename(t, identity_renaming(), identity_renaming()) != t) o.fail("rename identity");
    ++counts[0];
    if (rename(rename(t, ren, ren), ren2, ren2) !=
        rename(t, [&](std::size_t k) { return ren2(ren(k)); }, [&](std::size_t k) { return ren2(ren(k)); }))
      o.fail("rename composition");
    if (substitute(t, id) != t) o.fail("substitution identity");
    ++counts[1];
    Term arg = gen(2, 2);
    Substitution beta = [&arg](std::size_t k) { return k == 0 ? arg : Term::cvar(k - 1); };
    if (shift_into(t, arg) != substitute(t, beta)) o.fail("beta via shift_into");
    ++counts[2];
    Renaming odd = [](std::size_t k) { return 2 * k + 1; };
    std::function<void(const Term&, std::vector<std::size_t>&)> ivars =
        [&](const Term& u, std::vector<std::size_t>& acc) {
          if (u.is(TermKind::IVar)) acc.push_back(u.index());
          for (std::size_t i = 0; i < u.arity(); ++i) ivars(u.child(i), acc);
        };
    std::vector<std::size_t> a, b;
    ivars(t, a);
    ivars(evens(t, odd), b);
    if (a != b) o.fail("evens moved an interval variable");
    ++counts[3];
  }
  int idem = 0;
  for (int n = 0; idem < trials && n < 4 * trials; ++n) {
    Term t = gen(2, 2);
    try {
      Term nf = normalize(t, budget);
      if (normalize(nf, budget) != nf || !nf.is_normal()) o.fail("normalize not idempotent");
      ++idem;
    } catch (const NormalizeLimitError&) {
    }
  }
  counts[4] = idem;
  testsupport::TermGen closed(99, testsupport::TermShape{false, true, false, 5});
  for (int n = 0; n < trials; ++n) {
    std::vector<Term> seq{closed(0, 0)};
    for (std::size_t k = 1; k <= 3; ++k) {
      seq = decalage(seq);
      if (seq.size() != (std::size_t{1} << k)) o.fail("decalage did not double");
    }
    ++counts[5];
  }
  for (int c : counts)
    if (c < trials) o.fail("only " + std::to_string(c) + " terms exercised for one law");
  if (o.ok)
    o.detail = "rename id/composition, substitution id, beta, evens, decalage over 1000 terms each; "
               "idempotence over " + std::to_string(idem) + " terminating terms";
  return o;
}

Outcome serialization() {
  Outcome o;
  testsupport::TermGen gen(77);
  for (int n = 0; n < 1000; ++n) {
    Term t = gen(3, 3);
    if (parse_sexp(to_sexp(t)) != t) o.fail("random term did not round-trip: " + to_sexp(t));
  }
  for (int n = 1; n <= 5; ++n) {
    std::string s = cli({"gen", "-n", std::to_string(n), "--format", "sexp"}).out;
    CliResult back = cli({"parse", "--format", "sexp"}, s);
    if (back.out != s || parse_sexp(s) != simplex_type(static_cast<std::size_t>(n)))
      o.fail("gen -n " + std::to_string(n) + " did not round-trip");
  }
  if (o.ok) o.detail = "1000 random terms and gen -n 1..5 through parse, identical";
  return o;
}

Outcome layout() {
  Outcome o;
  std::regex cell_re("data-label=\"([^\"]*)\" data-dim=\"(\\d)\" data-region=\"([^\"]*)\"");
  auto cells = [&](const std::string& s) {
    std::vector<std::array<std::string, 3>> out;
    for (auto it = std::sregex_iterator(s.begin(), s.end(), cell_re); it != std::sregex_iterator(); ++it)
      out.push_back({(*it)[1], (*it)[2], (*it)[3]});
    return out;
  };
  auto three = cells(cli({"layout", "-n", "3"}).out);
  if (three.size() != 13) o.fail(std::to_string(three.size()) + " cells for 3 letters");
  bool interior = false, edge = false;
  for (const auto& c : three) {
    if (c[0] == "[ABC]" && c[1] == "2") interior = true;
    if (c[0] == "[AB][C]" && c[2] == "{0}×(0,1)") edge = true;
  }
  if (!interior) o.fail("[ABC] is not the interior");
  if (!edge) o.fail("[AB][C] is not on the pinned-0 edge");

  std::string four = cli({"layout", "-n", "4"}).out;
  std::map<std::string, std::set<std::string>> faces;
  const std::string marker = "<g class=\"panel\" data-face=\"";
  std::size_t panels = 0;
  for (std::size_t at = four.find(marker); at != std::string::npos; ++panels) {
    std::size_t end = four.find('"', at + marker.size());
    std::string face = four.substr(at + marker.size(), end - at - marker.size());
    std::size_t next = four.find(marker, end);
    for (const auto& c : cells(four.substr(end, next == std::string::npos ? std::string::npos : next - end)))
      if (c[1] == "2") faces[face].insert(c[0]);
    at = next;
  }
  std::map<std::string, std::set<std::string>> expected{
      {"c1=0", {"[ABC][D]", "[BC][AD]", "[AC][BD]", "[C][ABD]"}},
      {"c1=1", {"[D][ABC]", "[AD][BC]", "[ABD][C]", "[BD][AC]"}},
      {"c2=0", {"[AB][CD]", "[B][ACD]"}},
      {"c2=2", {"[ACD][B]", "[CD][AB]"}},
      {"c3=0", {"[A][BCD]"}},
      {"c3=3", {"[BCD][A]"}},
  };
  if (panels != 6) o.fail(std::to_string(panels) + " panels for 4 letters");
  for (const auto& [face, labels] : expected)
    if (faces[face] != labels) o.fail("face " + face + " cell labels differ from the expected faces");
  if (o.ok) o.detail = "13 cells for 3 letters; six panels whose 2-cells match the expected faces";
  return o;
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"golden listings", golden_listings},
      {"scale n=8", scale},
      {"argument census", census},
      {"boundary coherence", boundary},
      {"encoding", encoding},
      {"point location", point_location},
      {"partition tiling", partition_tiling},
      {"kernel laws", kernel_laws},
      {"serialization", serialization},
      {"layout", layout},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": "
              << o.detail << std::endl;
    if (!o.ok) ++failed;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed ? 1 : 0;
}

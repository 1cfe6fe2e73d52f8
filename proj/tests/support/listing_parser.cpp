#include "listing_parser.hpp"

#include <cctype>
#include <stdexcept>
#include <vector>

namespace testsupport {

using permucoh::Term;

namespace {

const std::string kLambda = "λ";
const std::string kMu = "μ";
const std::string kDot = "·";

bool is_interval_name(const std::string& s) {
  return s.size() == 1 && s[0] >= 'i' && s[0] <= 'p';
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Term parse() {
    Term t = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw std::runtime_error("listing parse error: " + msg + " at byte " + std::to_string(pos_));
  }

  bool starts(const std::string& tok) const { return s_.substr(pos_, tok.size()) == tok; }

  void skip() {
    for (;;) {
      if (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\n' || s_[pos_] == '\t' ||
                               s_[pos_] == '\r')) {
        ++pos_;
        continue;
      }
      // subscript digits ₀..₉ are E2 82 80..89
      if (pos_ + 2 < s_.size() && static_cast<unsigned char>(s_[pos_]) == 0xE2 &&
          static_cast<unsigned char>(s_[pos_ + 1]) == 0x82 &&
          (static_cast<unsigned char>(s_[pos_ + 2]) & 0xF0) == 0x80) {
        pos_ += 3;
        continue;
      }
      return;
    }
  }

  std::string ident() {
    skip();
    if (starts(kMu)) {
      pos_ += kMu.size();
      return kMu;
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])))) ++pos_;
    if (start == pos_) fail("expected an identifier");
    return std::string(s_.substr(start, pos_ - start));
  }

  bool at_arg_start() {
    skip();
    if (pos_ >= s_.size()) return false;
    if (s_[pos_] == '(' || starts(kMu)) return true;
    if (!std::isalnum(static_cast<unsigned char>(s_[pos_]))) return false;
    return !starts("Path");
  }

  Term expr() {
    Term t = app();
    for (;;) {
      skip();
      if (!starts(kDot)) return t;
      pos_ += kDot.size();
      t = Term::comp(t, app());
    }
  }

  Term app() {
    skip();
    if (starts(kLambda)) {
      pos_ += kLambda.size();
      std::string name = ident();
      skip();
      if (pos_ >= s_.size() || s_[pos_] != '.') fail("expected '.'");
      ++pos_;
      bool interval = is_interval_name(name);
      (interval ? inames_ : cnames_).push_back(name);
      Term body = expr();
      (interval ? inames_ : cnames_).pop_back();
      return interval ? Term::line(body) : Term::lam(body);
    }
    if (starts("PathP")) {
      pos_ += 5;
      Term line = arg();
      if (!line.is(permucoh::TermKind::Line)) fail("PathP needs an interval line");
      Term a = arg();
      Term b = arg();
      return Term::pathp(line, a, b);
    }
    if (starts("Path")) {
      pos_ += 4;
      Term x = arg();
      Term a = arg();
      Term b = arg();
      return Term::path(x, a, b);
    }
    Term t = arg();
    while (at_arg_start()) {
      Term a = arg();
      t = a.is(permucoh::TermKind::IVar) ? Term::iapp(t, a) : Term::app(t, a);
    }
    return t;
  }

  Term arg() {
    skip();
    if (pos_ < s_.size() && s_[pos_] == '(') {
      ++pos_;
      Term t = expr();
      skip();
      if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return t;
    }
    std::string name = ident();
    for (std::size_t k = 0; k < inames_.size(); ++k)
      if (inames_[inames_.size() - 1 - k] == name) return Term::ivar(k);
    for (std::size_t k = 0; k < cnames_.size(); ++k)
      if (cnames_[cnames_.size() - 1 - k] == name) return Term::cvar(k);
    return Term::atom(name);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::vector<std::string> inames_;
  std::vector<std::string> cnames_;
};

void replace_all(std::string& s, const std::string& from, const std::string& to) {
  for (std::size_t p = s.find(from); p != std::string::npos; p = s.find(from, p + to.size()))
    s.replace(p, from.size(), to);
}

}  // namespace

Term parse_listing(std::string_view src) { return Parser(src).parse(); }

std::string unescape_latex(std::string_view src) {
  std::string s(src);
  std::string out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t nl = s.find('\n', pos);
    std::string line = s.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
    pos = nl == std::string::npos ? s.size() : nl + 1;
    if (line.rfind("\\begin{lstlisting}", 0) == 0 || line.rfind("\\end{lstlisting}", 0) == 0)
      continue;
    out += line + "\n";
  }
  replace_all(out, "(*$\\lambda$*)", kLambda);
  replace_all(out, "(*$\\mu$*)", kMu);
  replace_all(out, "(*$\\cdot$*)", kDot);
  for (std::size_t p = out.find("(*$_{"); p != std::string::npos; p = out.find("(*$_{", p)) {
    std::size_t end = out.find("}$*)", p);
    if (end == std::string::npos) break;
    out.erase(p, end + 4 - p);
  }
  return out;
}

}  // namespace testsupport

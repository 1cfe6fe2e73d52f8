#include "permucoh/print.hpp"

#include <cctype>
#include <deque>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace permucoh {

std::optional<Format> parse_format(std::string_view name) {
  if (name == "text") return Format::Text;
  if (name == "latex") return Format::Latex;
  if (name == "sexp") return Format::Sexp;
  if (name == "json") return Format::Json;
  return std::nullopt;
}

const char* format_name(Format f) {
  switch (f) {
    case Format::Text: return "text";
    case Format::Latex: return "latex";
    case Format::Sexp: return "sexp";
    case Format::Json: return "json";
  }
  return "?";
}

std::string interval_name(std::size_t depth) {
  static const char names[] = "ijklmnopqrstuvwxyz";
  if (depth < sizeof(names) - 1) return std::string(1, names[depth]);
  return "i" + std::to_string(depth);
}

namespace {

std::string context_name(std::size_t depth) {
  static const char names[] = "xyzw";
  if (depth < sizeof(names) - 1) return std::string(1, names[depth]);
  return "x" + std::to_string(depth);
}

const Annotation* kid_of(const Annotation* a, std::size_t i) {
  if (!a || a->kids.empty()) return nullptr;
  return &a->kids.at(i);
}

enum class Prec { Top, Arg };

class ListingPrinter {
 public:
  ListingPrinter(std::ostream& out, const PrintOptions& opts)
      : out_(out), latex_(opts.format == Format::Latex), listing_(opts.listing) {}

  void print(const Term& t, const Annotation* a) {
    if (latex_) out_ << "\\begin{lstlisting}[escapeinside={(*}{*)}]\n";
    term(t, a, 0, Prec::Top, 0);
    out_ << '\n';
    if (latex_) out_ << "\\end{lstlisting}\n";
  }

 private:
  void newline(int indent) {
    out_ << '\n';
    for (int i = 0; i < indent; ++i) out_ << ' ';
  }

  void sub(const Annotation* a) {
    if (!a || !a->length) return;
    std::string digits = std::to_string(*a->length);
    if (latex_) {
      out_ << "(*$_{" << digits << "}$*)";
      return;
    }
    static const char* subs[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
    for (char d : digits) out_ << subs[d - '0'];
  }

  void lambda() { out_ << (latex_ ? "(*$\\lambda$*)" : "λ"); }
  void cdot() { out_ << (latex_ ? "(*$\\cdot$*)" : "·"); }

  void atom(const std::string& name) {
    if (!latex_) {
      out_ << name;
      return;
    }
    std::size_t pos = 0;
    for (;;) {
      std::size_t hit = name.find("μ", pos);
      out_ << name.substr(pos, hit - pos);
      if (hit == std::string::npos) break;
      out_ << "(*$\\mu$*)";
      pos = hit + std::string("μ").size();
    }
  }

  static bool atomic(const Term& t) {
    switch (t.kind()) {
      case TermKind::Atom:
      case TermKind::IVar:
      case TermKind::CVar:
      case TermKind::SVar:
        return true;
      default:
        return false;
    }
  }

  bool has_comp(const Term& t) {
    if (t.kind() == TermKind::Comp) return true;
    if (t.arity() == 0) return false;
    auto it = comp_memo_.find(t.id());
    if (it != comp_memo_.end()) return it->second;
    bool r = false;
    for (std::size_t i = 0; i < t.arity() && !r; ++i) r = has_comp(t.child(i));
    comp_memo_.emplace(t.id(), r);
    return r;
  }

  void variable(const Term& t) {
    std::size_t k = t.index();
    if (t.kind() == TermKind::IVar) {
      if (k >= inames_.size())
        throw PrintError("unbound interval variable " + std::to_string(k));
      out_ << inames_[inames_.size() - 1 - k];
      return;
    }
    if (t.kind() == TermKind::CVar) {
      if (k >= cnames_.size()) throw PrintError("free context variable " + std::to_string(k));
      out_ << cnames_[cnames_.size() - 1 - k];
      return;
    }
    throw PrintError(std::string("unresolved schematic variable ") + meta_name(t.meta()) + " " +
                     std::to_string(k));
  }

  void binder_line(const Term& line, const Annotation* a, std::size_t c, int indent) {
    lambda();
    sub(a);
    inames_.push_back(interval_name(c));
    out_ << ' ' << inames_.back() << ". ";
    term(line.body(), kid_of(a, 0), c + 1, Prec::Top, indent);
    inames_.pop_back();
  }

  void term(const Term& t, const Annotation* a, std::size_t c, Prec p, int indent) {
    if (atomic(t)) {
      if (t.kind() == TermKind::Atom)
        atom(t.name());
      else
        variable(t);
      return;
    }
    bool parens = p == Prec::Arg;
    if (parens) out_ << '(';
    switch (t.kind()) {
      case TermKind::Lam:
        lambda();
        cnames_.push_back(context_name(cnames_.size()));
        out_ << ' ' << cnames_.back() << ". ";
        term(t.body(), kid_of(a, 0), c, Prec::Top, indent);
        cnames_.pop_back();
        break;
      case TermKind::Line:
        binder_line(t, a, c, indent);
        break;
      case TermKind::App:
      case TermKind::IApp: {
        std::deque<std::pair<const Term*, const Annotation*>> args;
        const Term* h = &t;
        const Annotation* ha = a;
        while (h->kind() == TermKind::App || h->kind() == TermKind::IApp) {
          args.emplace_front(&h->arg(), kid_of(ha, 1));
          ha = kid_of(ha, 0);
          h = &h->fun();
        }
        term(*h, ha, c, Prec::Arg, indent);
        for (auto& [arg, aa] : args) {
          out_ << ' ';
          term(*arg, aa, c, Prec::Arg, indent);
        }
        break;
      }
      case TermKind::Path:
        out_ << "Path";
        sub(a);
        out_ << ' ';
        term(t.space(), kid_of(a, 0), c + 1, Prec::Arg, indent);
        out_ << ' ';
        term(t.lhs(), kid_of(a, 1), c + 1, Prec::Arg, indent);
        out_ << ' ';
        term(t.rhs(), kid_of(a, 2), c + 1, Prec::Arg, indent);
        break;
      case TermKind::PathP: {
        out_ << "PathP";
        sub(a);
        out_ << " (";
        binder_line(t.space(), kid_of(a, 0), c, indent + 2);
        out_ << ')';
        for (std::size_t side = 1; side <= 2; ++side) {
          if (listing_)
            newline(indent + 2);
          else
            out_ << ' ';
          term(t.child(side), kid_of(a, side), c + 1, Prec::Arg, indent + 2);
        }
        break;
      }
      case TermKind::Comp: {
        bool split = listing_ && (has_comp(t.first()) || has_comp(t.second()));
        term(t.first(), kid_of(a, 0), c, Prec::Arg, indent + 2);
        if (split)
          newline(indent + 2);
        else
          out_ << ' ';
        cdot();
        sub(a);
        out_ << ' ';
        term(t.second(), kid_of(a, 1), c, Prec::Arg, indent + 2);
        break;
      }
      default:
        break;
    }
    if (parens) out_ << ')';
  }

  std::ostream& out_;
  bool latex_;
  bool listing_;
  std::vector<std::string> inames_;
  std::vector<std::string> cnames_;
  std::unordered_map<const void*, bool> comp_memo_;
};

void write_string(std::ostream& out, const std::string& s) {
  out << '"';
  for (std::size_t i = 0; i < s.size();) {
    unsigned char b = static_cast<unsigned char>(s[i]);
    std::uint32_t cp = b;
    std::size_t len = 1;
    if (b >= 0x80) {
      if ((b & 0xE0) == 0xC0) {
        cp = b & 0x1F;
        len = 2;
      } else if ((b & 0xF0) == 0xE0) {
        cp = b & 0x0F;
        len = 3;
      } else if ((b & 0xF8) == 0xF0) {
        cp = b & 0x07;
        len = 4;
      } else {
        throw PrintError("atom name is not valid UTF-8");
      }
      if (i + len > s.size()) throw PrintError("atom name is not valid UTF-8");
      for (std::size_t k = 1; k < len; ++k) cp = (cp << 6) | (s[i + k] & 0x3F);
    }
    i += len;
    if (cp == '"' || cp == '\\') {
      out << '\\' << static_cast<char>(cp);
    } else if (cp >= 0x20 && cp < 0x7F) {
      out << static_cast<char>(cp);
    } else {
      auto hex = [&out](std::uint32_t u) {
        static const char digits[] = "0123456789abcdef";
        out << "\\u";
        for (int sh = 12; sh >= 0; sh -= 4) out << digits[(u >> sh) & 0xF];
      };
      if (cp >= 0x10000) {
        cp -= 0x10000;
        hex(0xD800 + (cp >> 10));
        hex(0xDC00 + (cp & 0x3FF));
      } else {
        hex(cp);
      }
    }
  }
  out << '"';
}

void sexp(std::ostream& out, const Term& t) {
  switch (t.kind()) {
    case TermKind::SVar:
      out << "(svar " << meta_name(t.meta()) << ' ' << t.index() << ')';
      return;
    case TermKind::CVar:
    case TermKind::IVar:
      out << '(' << kind_name(t.kind()) << ' ' << t.index() << ')';
      return;
    case TermKind::Atom:
      out << "(atom ";
      write_string(out, t.name());
      out << ')';
      return;
    default:
      break;
  }
  out << '(' << kind_name(t.kind());
  for (std::size_t i = 0; i < t.arity(); ++i) {
    out << ' ';
    sexp(out, t.child(i));
  }
  out << ')';
}

const char* const* field_names(TermKind k) {
  static const char* body[] = {"body"};
  static const char* app[] = {"fun", "arg"};
  static const char* path[] = {"space", "lhs", "rhs"};
  static const char* pathp[] = {"line", "lhs", "rhs"};
  static const char* comp[] = {"first", "second"};
  switch (k) {
    case TermKind::Lam:
    case TermKind::Line: return body;
    case TermKind::App:
    case TermKind::IApp: return app;
    case TermKind::Path: return path;
    case TermKind::PathP: return pathp;
    case TermKind::Comp: return comp;
    default: return nullptr;
  }
}

void json(std::ostream& out, const Term& t, const Annotation* a) {
  out << "{\"kind\":\"" << kind_name(t.kind()) << '"';
  switch (t.kind()) {
    case TermKind::SVar:
      out << ",\"meta\":\"" << meta_name(t.meta()) << "\",\"level\":" << t.index();
      break;
    case TermKind::CVar:
    case TermKind::IVar:
      out << ",\"index\":" << t.index();
      break;
    case TermKind::Atom:
      out << ",\"name\":" << nlohmann::json(t.name()).dump();
      break;
    default: {
      if (a && a->length) out << ",\"length\":" << *a->length;
      const char* const* names = field_names(t.kind());
      for (std::size_t i = 0; i < t.arity(); ++i) {
        out << ",\"" << names[i] << "\":";
        json(out, t.child(i), kid_of(a, i));
      }
    }
  }
  out << '}';
}

}  // namespace

void pretty_print(std::ostream& out, const Term& t, const PrintOptions& opts) {
  switch (opts.format) {
    case Format::Text:
    case Format::Latex: {
      ListingPrinter p(out, opts);
      p.print(t, opts.lengths);
      return;
    }
    case Format::Sexp:
      sexp(out, t);
      out << '\n';
      return;
    case Format::Json:
      json(out, t, opts.lengths);
      out << '\n';
      return;
  }
}

std::string pretty_print(const Term& t, const PrintOptions& opts) {
  std::ostringstream os;
  pretty_print(os, t, opts);
  return os.str();
}

std::string to_sexp(const Term& t) {
  std::ostringstream os;
  sexp(os, t);
  return os.str();
}

namespace {

class SexpParser {
 public:
  explicit SexpParser(std::string_view s) : s_(s) {}

  Term parse_all() {
    Term t = term();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string symbol() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])))) ++pos_;
    if (start == pos_) fail("expected a keyword");
    return std::string(s_.substr(start, pos_ - start));
  }

  std::size_t number() {
    skip_ws();
    std::size_t start = pos_;
    std::size_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      std::size_t d = static_cast<std::size_t>(s_[pos_] - '0');
      if (v > (SIZE_MAX - d) / 10) fail("index too large");
      v = v * 10 + d;
      ++pos_;
    }
    if (start == pos_) fail("expected an index");
    return v;
  }

  static void put_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
      out += static_cast<char>(cp);
    } else if (cp < 0x800) {
      out += static_cast<char>(0xC0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
      out += static_cast<char>(0xE0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (cp >> 18));
      out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    }
  }

  std::uint32_t hex4() {
    if (pos_ + 4 > s_.size()) fail("truncated escape");
    std::uint32_t v = 0;
    for (int k = 0; k < 4; ++k) {
      char ch = s_[pos_++];
      v <<= 4;
      if (ch >= '0' && ch <= '9')
        v |= static_cast<std::uint32_t>(ch - '0');
      else if (ch >= 'a' && ch <= 'f')
        v |= static_cast<std::uint32_t>(ch - 'a' + 10);
      else if (ch >= 'A' && ch <= 'F')
        v |= static_cast<std::uint32_t>(ch - 'A' + 10);
      else
        fail("bad hex digit in escape");
    }
    return v;
  }

  std::string string() {
    expect('"');
    std::string out;
    for (;;) {
      if (pos_ >= s_.size()) fail("unterminated string");
      char ch = s_[pos_++];
      if (ch == '"') break;
      if (ch != '\\') {
        out += ch;
        continue;
      }
      if (pos_ >= s_.size()) fail("unterminated escape");
      char e = s_[pos_++];
      if (e == '"' || e == '\\') {
        out += e;
      } else if (e == 'u') {
        std::uint32_t cp = hex4();
        if (cp >= 0xD800 && cp < 0xDC00) {
          if (pos_ + 2 > s_.size() || s_[pos_] != '\\' || s_[pos_ + 1] != 'u')
            fail("unpaired surrogate");
          pos_ += 2;
          std::uint32_t lo = hex4();
          if (lo < 0xDC00 || lo >= 0xE000) fail("unpaired surrogate");
          cp = 0x10000 + ((cp - 0xD800) << 10) + (lo - 0xDC00);
        }
        put_utf8(out, cp);
      } else {
        fail(std::string("unknown escape \\") + e);
      }
    }
    return out;
  }

  Term term() {
    expect('(');
    std::size_t head_pos = pos_;
    std::string head = symbol();
    Term t;
    if (head == "svar") {
      std::string m = symbol();
      MetaKind meta;
      if (m == "X")
        meta = MetaKind::X;
      else if (m == "mu")
        meta = MetaKind::Mu;
      else if (m == "alpha")
        meta = MetaKind::Alpha;
      else
        fail("unknown schematic kind " + m);
      t = Term::svar(meta, number());
    } else if (head == "cvar") {
      t = Term::cvar(number());
    } else if (head == "ivar") {
      t = Term::ivar(number());
    } else if (head == "atom") {
      t = Term::atom(string());
    } else if (head == "lam") {
      t = Term::lam(term());
    } else if (head == "line") {
      t = Term::line(term());
    } else if (head == "app" || head == "iapp" || head == "comp") {
      Term a = term();
      Term b = term();
      t = head == "app" ? Term::app(a, b) : head == "iapp" ? Term::iapp(a, b) : Term::comp(a, b);
    } else if (head == "path" || head == "pathp") {
      std::size_t line_pos = pos_;
      Term a = term();
      Term b = term();
      Term c = term();
      if (head == "pathp" && a.kind() != TermKind::Line)
        throw ParseError("pathp type family must be a line", line_pos);
      t = head == "path" ? Term::path(a, b, c) : Term::pathp(a, b, c);
    } else {
      throw ParseError("unknown term former '" + head + "'", head_pos);
    }
    expect(')');
    return t;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Term parse_sexp(std::string_view src) { return SexpParser(src).parse_all(); }

}  // namespace permucoh

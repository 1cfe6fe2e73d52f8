#include "permucoh/checker.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "permucoh/kernel.hpp"
#include "permucoh/print.hpp"

namespace permucoh {

namespace {

bool is_mul(const Term& t) { return t.kind() == TermKind::Atom && t.name() == kMulAtom; }

// Renames every letter atom through `fn`, keeping sharing.
Term map_atoms(const Term& t, const std::function<std::string(const std::string&)>& fn,
               std::unordered_map<const void*, Term>& memo) {
  if (t.kind() == TermKind::Atom) {
    std::string name = fn(t.name());
    return name == t.name() ? t : Term::atom(std::move(name));
  }
  if (t.arity() == 0) return t;
  auto it = memo.find(t.id());
  if (it != memo.end()) return it->second;
  std::array<Term, 3> kids;
  for (std::size_t i = 0; i < t.arity(); ++i) kids[i] = map_atoms(t.child(i), fn, memo);
  Term out = t.with_children(kids.data(), t.arity());
  memo.emplace(t.id(), out);
  return out;
}

std::string inline_text(const Term& t) {
  PrintOptions o;
  o.listing = false;
  try {
    std::string s = pretty_print(t, o);
    if (!s.empty() && s.back() == '\n') s.pop_back();
    return s;
  } catch (const PrintError&) {
    return to_sexp(t);
  }
}

}  // namespace

Term instantiate_subset_type(const std::string& subset, const GenerateOptions& opts) {
  if (subset.size() < 2) throw CheckError("subset " + subset + " has no type (a point)");
  Term base = simplex_type(subset.size() - 1, opts);
  const std::string& alpha = opts.alphabet;
  std::unordered_map<const void*, Term> memo;
  return map_atoms(
      base,
      [&](const std::string& name) {
        if (name == kSpaceAtom || name == kMulAtom) return name;
        std::string out;
        for (char c : name) {
          std::size_t k = alpha.find(c);
          if (k == std::string::npos || k >= subset.size())
            throw CheckError("unexpected letter in generated type: " + name);
          out += subset[k];
        }
        return out;
      },
      memo);
}

LetterEnv::LetterEnv(std::size_t letters, const GenerateOptions& opts)
    : letters_(letters), alphabet_(opts.alphabet) {
  if (letters > alphabet_.size()) throw CheckError("not enough letters in the alphabet");
  std::vector<Term> base;
  for (std::size_t k = 0; k + 1 < letters; ++k) base.push_back(simplex_type(k, opts));
  for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << letters); ++mask) {
    std::string name;
    for (std::size_t b = 0; b < letters; ++b)
      if (mask & (std::size_t{1} << b)) name += alphabet_[b];
    if (name.size() < 2) continue;
    std::unordered_map<const void*, Term> memo;
    types_.emplace(name, map_atoms(
                             base[name.size() - 1],
                             [&](const std::string& a) {
                               if (a == kSpaceAtom || a == kMulAtom) return a;
                               std::string out;
                               for (char c : a) out += name[alphabet_.find(c)];
                               return out;
                             },
                             memo));
  }
}

bool LetterEnv::is_letter(const std::string& name) const {
  if (name.empty() || name.size() >= letters_) return false;
  std::size_t last = 0;
  for (std::size_t i = 0; i < name.size(); ++i) {
    std::size_t k = alphabet_.find(name[i]);
    if (k == std::string::npos || k >= letters_) return false;
    if (i > 0 && k <= last) return false;
    last = k;
  }
  return name.size() < letters_;
}

std::size_t LetterEnv::dimension(const std::string& name) const {
  if (!is_letter(name)) throw CheckError("unknown letter cell " + name);
  return name.size() - 1;
}

const Term& LetterEnv::type_of(const std::string& name) const {
  auto it = types_.find(name);
  if (it == types_.end()) throw CheckError("no instantiated type for " + name);
  return it->second;
}

namespace {

struct Arg {
  bool mark = false;
  Side side = Side::Lo;
  std::size_t ivar = 0;
};

struct Spine {
  const Term* head;
  std::vector<const Term*> args;
};

Spine ispine(const Term& t) {
  Spine s{&t, {}};
  while (s.head->kind() == TermKind::IApp) {
    s.args.push_back(&s.head->arg());
    s.head = &s.head->fun();
  }
  std::reverse(s.args.begin(), s.args.end());
  return s;
}

class Resolver {
 public:
  explicit Resolver(const LetterEnv& env) : env_(env) {}

  bool letter(const Term& t) const {
    return t.kind() == TermKind::Atom && env_.is_letter(t.name());
  }

  Term apply(const Term& f, const Arg& a) {
    if (a.mark) return mark(f, a.side);
    if (f.kind() == TermKind::Line) return instantiate_interval(f.body(), a.ivar);
    return Term::iapp(f, Term::ivar(a.ivar));
  }

  Term mark(const Term& f, Side s) {
    switch (f.kind()) {
      case TermKind::Line:
        return face(f.body(), 0, s);
      case TermKind::Comp:
        return s == Side::Lo ? mark(f.first(), s) : mark(f.second(), s);
      case TermKind::Atom:
      case TermKind::IApp: {
        Spine sp = ispine(f);
        std::vector<Arg> args = plain_args(sp);
        if (letter(*sp.head)) {
          args.push_back(Arg{true, s, 0});
          return resolve(sp.head->name(), args);
        }
        if (sp.args.empty()) break;
        Term cur = endpoint(*sp.head, sp.args.size(), s);
        for (const Arg& a : args) cur = apply(cur, a);
        return cur;
      }
      default:
        break;
    }
    throw CheckError("endpoint of a non-path: " + inline_text(f));
  }

  Term endpoint(const Term& t, std::size_t axis, Side s) {
    if (axis == 0) return mark(t, s);
    switch (t.kind()) {
      case TermKind::Line: {
        Term b = endpoint(t.body(), axis - 1, s);
        return Term::line(b);
      }
      case TermKind::Comp:
        return Term::comp(endpoint(t.first(), axis, s), endpoint(t.second(), axis, s));
      case TermKind::Atom:
      case TermKind::IApp: {
        Spine sp = ispine(t);
        if (letter(*sp.head)) {
          Term eta = Term::iapp(lift(t, 0, 1), Term::ivar(0));
          return Term::line(endpoint(eta, axis - 1, s));
        }
        if (sp.args.empty()) break;
        Term cur = endpoint(*sp.head, axis + sp.args.size(), s);
        for (const Arg& a : plain_args(sp)) cur = apply(cur, a);
        return cur;
      }
      default:
        break;
    }
    throw CheckError("endpoint along an axis a term does not have: " + inline_text(t));
  }

  Term face(const Term& t, std::size_t target, Side s) {
    if (t.ivar_span() <= target) return t;
    switch (t.kind()) {
      case TermKind::IVar:
        if (t.index() == target)
          throw CheckError("interval variable used outside an application");
        return t.index() > target ? Term::ivar(t.index() - 1) : t;
      case TermKind::Line:
        return Term::line(face(t.body(), target + 1, s));
      case TermKind::IApp: {
        Spine sp = ispine(t);
        Term head = sp.head->kind() == TermKind::Atom ? *sp.head : face(*sp.head, target, s);
        std::vector<Arg> args;
        bool any_mark = false;
        for (const Term* a : sp.args) {
          if (a->kind() != TermKind::IVar)
            throw CheckError("non-variable interval argument " + inline_text(*a));
          std::size_t k = a->index();
          if (k == target) {
            args.push_back(Arg{true, s, 0});
            any_mark = true;
          } else {
            args.push_back(Arg{false, s, k > target ? k - 1 : k});
          }
        }
        if (any_mark && letter(head)) return resolve(head.name(), args);
        Term cur = head;
        for (const Arg& a : args) cur = apply(cur, a);
        return cur;
      }
      default:
        break;
    }
    std::array<Term, 3> kids;
    for (std::size_t i = 0; i < t.arity(); ++i) kids[i] = face(t.child(i), target, s);
    return t.with_children(kids.data(), t.arity());
  }

 private:
  static std::vector<Arg> plain_args(const Spine& sp) {
    std::vector<Arg> out;
    for (const Term* a : sp.args) {
      if (a->kind() != TermKind::IVar)
        throw CheckError("non-variable interval argument " + inline_text(*a));
      out.push_back(Arg{false, Side::Lo, a->index()});
    }
    return out;
  }

  Term resolve(const std::string& name, const std::vector<Arg>& args) {
    std::size_t dim = env_.dimension(name);
    std::size_t p = 0;
    while (p < args.size() && !args[p].mark) ++p;
    if (p == args.size()) throw CheckError("resolve without an endpoint");
    if (p >= dim)
      throw CheckError("cell " + name + " has no axis " + std::to_string(p + 1));
    const Term* cur = &env_.type_of(name);
    for (std::size_t q = 0; q < p; ++q) cur = &cur->space().body();
    TermKind want = p + 1 < dim ? TermKind::PathP : TermKind::Path;
    if (cur->kind() != want) throw CheckError("malformed instantiated type for " + name);
    const Term& e = args[p].side == Side::Lo ? cur->lhs() : cur->rhs();
    std::vector<std::size_t> outer;
    for (std::size_t q = 0; q < p; ++q) outer.push_back(args[q].ivar);
    Term out = rename(e, identity_renaming(), [outer](std::size_t j) -> std::size_t {
      if (j >= outer.size()) throw CheckError("instantiated type is not closed");
      return outer[outer.size() - 1 - j];
    });
    for (std::size_t q = p + 1; q < args.size(); ++q) out = apply(out, args[q]);
    return out;
  }

  const LetterEnv& env_;
};

bool has_comp(const Term& t) {
  if (t.kind() == TermKind::Comp) return true;
  for (std::size_t i = 0; i < t.arity(); ++i)
    if (has_comp(t.child(i))) return true;
  return false;
}

struct Sites {
  std::vector<Term> comps;
  std::size_t cells = 0;
};

void scan_sites(const Term& t, std::size_t target, Sites& out) {
  if (t.ivar_span() <= target) return;
  switch (t.kind()) {
    case TermKind::Line:
      scan_sites(t.body(), target + 1, out);
      return;
    case TermKind::IVar:
      if (t.index() == target) ++out.cells;
      return;
    case TermKind::IApp:
      if (t.arg().kind() == TermKind::IVar && t.arg().index() == target) {
        if (t.fun().kind() == TermKind::Comp)
          out.comps.push_back(t.fun());
        else
          ++out.cells;
        scan_sites(t.fun(), target, out);
        return;
      }
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < t.arity(); ++i) scan_sites(t.child(i), target, out);
}

Term pick_part(const Term& t, std::size_t target, bool first) {
  if (t.ivar_span() <= target) return t;
  switch (t.kind()) {
    case TermKind::Line:
      return Term::line(pick_part(t.body(), target + 1, first));
    case TermKind::IApp:
      if (t.arg().kind() == TermKind::IVar && t.arg().index() == target &&
          t.fun().kind() == TermKind::Comp)
        return Term::iapp(first ? t.fun().first() : t.fun().second(), t.arg());
      break;
    default:
      break;
  }
  std::array<Term, 3> kids;
  for (std::size_t i = 0; i < t.arity(); ++i) kids[i] = pick_part(t.child(i), target, first);
  return t.with_children(kids.data(), t.arity());
}

// Moore length of a path-valued term along its axis-th remaining axis.
std::size_t axis_length(const Term& t, std::size_t axis);

// Length of the line bound by interval variable `target` in t.
std::optional<std::size_t> line_extent(const Term& t, std::size_t target) {
  if (t.ivar_span() <= target) return std::nullopt;
  std::optional<std::size_t> out;
  auto merge = [&out](std::optional<std::size_t> e) {
    if (!e) return;
    if (out && *out != *e) throw CheckError("line variable used with inconsistent lengths");
    out = e;
  };
  switch (t.kind()) {
    case TermKind::Line:
      return line_extent(t.body(), target + 1);
    case TermKind::IVar:
      throw CheckError("interval variable used outside an application");
    case TermKind::IApp: {
      Spine sp = ispine(t);
      bool letter_head = sp.head->kind() == TermKind::Atom;
      for (std::size_t p = 0; p < sp.args.size(); ++p) {
        const Term& a = *sp.args[p];
        if (a.kind() == TermKind::IVar && a.index() == target)
          merge(letter_head ? p + 1 : axis_length(*sp.head, p));
      }
      if (!letter_head) merge(line_extent(*sp.head, target));
      return out;
    }
    default:
      break;
  }
  for (std::size_t i = 0; i < t.arity(); ++i) merge(line_extent(t.child(i), target));
  return out;
}

std::size_t axis_length(const Term& t, std::size_t axis) {
  switch (t.kind()) {
    case TermKind::Comp:
      if (axis == 0) return axis_length(t.first(), 0) + axis_length(t.second(), 0);
      return axis_length(t.first(), axis);
    case TermKind::Line: {
      if (axis > 0) return axis_length(t.body(), axis - 1);
      std::optional<std::size_t> e = line_extent(t.body(), 0);
      if (!e) throw CheckError("degenerate line " + inline_text(t));
      return *e;
    }
    case TermKind::Atom:
    case TermKind::IApp: {
      Spine sp = ispine(t);
      if (sp.head->kind() == TermKind::Atom) return sp.args.size() + axis + 1;
      return axis_length(*sp.head, axis + sp.args.size());
    }
    default:
      throw CheckError("length of a non-path " + inline_text(t));
  }
}

Term distribute(const Term& t);

Term canon_rec(const Term& t) { return distribute(normalize(t)); }

Term distribute(const Term& t) {
  if (!has_comp(t)) return t;
  if (t.kind() == TermKind::Line) {
    Term b = distribute(t.body());
    Sites sites;
    scan_sites(b, 0, sites);
    if (sites.comps.empty()) return Term::line(b);
    if (sites.cells > 0)
      throw CheckError("line variable used both in a composite and in a cell: " +
                       inline_text(Term::line(b)));
    // Every composite the line runs through must break at the same length.
    std::size_t head = axis_length(sites.comps.front().first(), 0);
    std::size_t tail = axis_length(sites.comps.front().second(), 0);
    for (const Term& c : sites.comps)
      if (axis_length(c.first(), 0) != head || axis_length(c.second(), 0) != tail)
        throw CheckError("line variable runs through misaligned composites: " +
                         inline_text(Term::line(b)));
    return Term::comp(canon_rec(Term::line(pick_part(b, 0, true))),
                      canon_rec(Term::line(pick_part(b, 0, false))));
  }
  std::array<Term, 3> kids;
  for (std::size_t i = 0; i < t.arity(); ++i) kids[i] = distribute(t.child(i));
  return t.with_children(kids.data(), t.arity());
}

void comp_parts(const Term& t, std::vector<Term>& out) {
  if (t.kind() == TermKind::Comp) {
    comp_parts(t.first(), out);
    comp_parts(t.second(), out);
  } else {
    out.push_back(t);
  }
}

bool is_product(const Term& t) {
  return t.kind() == TermKind::App && t.fun().kind() == TermKind::App && is_mul(t.fun().fun());
}

void product_factors(const Term& t, std::vector<Term>& out) {
  if (is_product(t)) {
    product_factors(t.fun().arg(), out);
    product_factors(t.arg(), out);
  } else {
    out.push_back(t);
  }
}

Term reassociate(const Term& t) {
  if (t.kind() == TermKind::Comp) {
    std::vector<Term> parts;
    comp_parts(t, parts);
    Term out = reassociate(parts.back());
    for (std::size_t i = parts.size() - 1; i-- > 0;) out = Term::comp(reassociate(parts[i]), out);
    return out;
  }
  if (is_product(t)) {
    std::vector<Term> fs;
    product_factors(t, fs);
    Term mu = t.fun().fun();
    Term out = reassociate(fs.back());
    for (std::size_t i = fs.size() - 1; i-- > 0;)
      out = Term::app(Term::app(mu, reassociate(fs[i])), out);
    return out;
  }
  if (t.arity() == 0) return t;
  std::array<Term, 3> kids;
  for (std::size_t i = 0; i < t.arity(); ++i) kids[i] = reassociate(t.child(i));
  return t.with_children(kids.data(), t.arity());
}

}  // namespace

Term canonicalize(const Term& t) { return reassociate(canon_rec(t)); }

Term face(const Term& t, std::size_t ivar, Side side, const LetterEnv& env) {
  return Resolver(env).face(t, ivar, side);
}

Term endpoint_eval(const Term& t, std::size_t axis, Side side, const LetterEnv& env) {
  return canonicalize(Resolver(env).endpoint(t, axis, side));
}

std::string Word::str() const {
  std::string out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) out += "·";
    out += factors[i].kind() == TermKind::Atom ? factors[i].name() : inline_text(factors[i]);
  }
  return out;
}

std::string Word::letters() const {
  std::string out;
  for (const Term& f : factors) {
    if (f.kind() != TermKind::Atom || f.name().size() != 1) return {};
    out += f.name();
  }
  return out;
}

Word flatten_word(const Term& point) {
  Term c = canonicalize(point);
  Word w;
  product_factors(c, w.factors);
  for (const Term& f : w.factors) {
    switch (f.kind()) {
      case TermKind::Atom:
        continue;
      case TermKind::IApp:
        if (ispine(f).head->kind() == TermKind::Atom) continue;
        break;
      default:
        break;
    }
    throw CheckError("not a point-level word: " + inline_text(point));
  }
  return w;
}

namespace {

std::string side_name(Side s) { return s == Side::Lo ? "0" : "1"; }

class FormulaChecker {
 public:
  FormulaChecker(const LetterEnv& env, CheckReport& report) : env_(env), r_(env), report_(report) {}

  void walk(const Term& t, const std::string& loc) {
    switch (t.kind()) {
      case TermKind::PathP: {
        const Term& inner = t.space().body();
        if (inner.kind() != TermKind::Path && inner.kind() != TermKind::PathP) {
          violation("shape", loc, "Path or PathP family", kind_name(inner.kind()));
          break;
        }
        for (Side side : {Side::Lo, Side::Hi}) {
          const Term& e = side == Side::Lo ? t.lhs() : t.rhs();
          std::string where = loc + (side == Side::Lo ? "/lhs" : "/rhs");
          compare("boundary", where + "@0",
                  [&] { return canonicalize(r_.face(inner.lhs(), 0, side)); },
                  [&] { return canonicalize(r_.mark(e, Side::Lo)); });
          compare("boundary", where + "@1",
                  [&] { return canonicalize(r_.face(inner.rhs(), 0, side)); },
                  [&] { return canonicalize(r_.mark(e, Side::Hi)); });
        }
        walk(inner, loc + "/line");
        walk(t.lhs(), loc + "/lhs");
        walk(t.rhs(), loc + "/rhs");
        break;
      }
      case TermKind::Path:
        walk(t.lhs(), loc + "/lhs");
        walk(t.rhs(), loc + "/rhs");
        break;
      case TermKind::Comp:
        compare("glue", loc, [&] { return canonicalize(r_.mark(t.first(), Side::Hi)); },
                [&] { return canonicalize(r_.mark(t.second(), Side::Lo)); });
        walk(t.first(), loc + "/first");
        walk(t.second(), loc + "/second");
        break;
      case TermKind::Line:
        walk(t.body(), loc + "/body");
        break;
      default:
        break;
    }
  }

  void violation(std::string kind, std::string loc, std::string expected, std::string found) {
    report_.violations.push_back(
        Violation{std::move(kind), std::move(loc), std::move(expected), std::move(found)});
  }

 private:
  template <class F, class G>
  void compare(const char* kind, const std::string& loc, F expected, G found) {
    ++report_.checks;
    Term e, f;
    try {
      e = expected();
      f = found();
    } catch (const Error& err) {
      violation(kind, loc, e.valid() ? inline_text(e) : "", std::string("error: ") + err.what());
      return;
    }
    if (e != f) violation(kind, loc, inline_text(e), inline_text(f));
  }

  const LetterEnv& env_;
  Resolver r_;
  CheckReport& report_;
};

Term corner_point_type(const Term& t, std::size_t n, const std::vector<Side>& corner,
                       Resolver& r) {
  Term cur = t;
  for (std::size_t a = 0; a < n; ++a) {
    if (a + 1 < n) {
      if (cur.kind() != TermKind::PathP) throw CheckError("type route: expected PathP");
      cur = r.face(cur.space().body(), 0, corner[a]);
    } else {
      if (cur.kind() != TermKind::Path) throw CheckError("type route: expected Path");
      cur = corner[a] == Side::Lo ? cur.lhs() : cur.rhs();
    }
  }
  return cur;
}

Term corner_point_endpoints(const Term& t, std::size_t n, const std::vector<Side>& corner,
                            Resolver& r) {
  if (t.kind() != TermKind::Path && t.kind() != TermKind::PathP)
    throw CheckError("endpoint route: not a path type");
  Term cur = corner[0] == Side::Lo ? t.lhs() : t.rhs();
  for (std::size_t a = 1; a < n; ++a) cur = r.mark(cur, corner[a]);
  return cur;
}

std::string corner_name(const std::vector<Side>& c) {
  std::string s;
  for (Side x : c) s += side_name(x);
  return s;
}

}  // namespace

Word corner_word(const Term& t, std::size_t n, const std::vector<Side>& corner,
                 const LetterEnv& env) {
  if (corner.size() != n)
    throw CheckError("corner has " + std::to_string(corner.size()) + " sides for n = " +
                     std::to_string(n));
  if (n == 0) return flatten_word(t);
  Resolver r(env);
  return flatten_word(corner_point_type(t, n, corner, r));
}

Word corner_word(std::size_t n, const std::vector<Side>& corner, const LetterEnv& env) {
  return corner_word(simplex_type(n), n, corner, env);
}

CheckReport check_term(const Term& t, std::size_t n, const LetterEnv& env) {
  CheckReport report;
  report.n = n;
  FormulaChecker fc(env, report);
  if (n == 0) return report;

  ++report.checks;
  try {
    annotate_lengths(t);
  } catch (const Error& e) {
    fc.violation("length", "/", "consistent Moore lengths", e.what());
  }

  fc.walk(t, "");

  Resolver r(env);
  std::string identity(env.alphabet().substr(0, n + 1));
  std::string reversal(identity.rbegin(), identity.rend());
  std::set<std::string> seen;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<Side> c(n);
    for (std::size_t a = 0; a < n; ++a) c[a] = (mask >> (n - 1 - a)) & 1 ? Side::Hi : Side::Lo;
    Corner corner{c, {}, {}};
    std::string where = "corner " + corner_name(c);
    report.checks += 2;
    std::string letters;
    try {
      Word tw = flatten_word(corner_point_type(t, n, c, r));
      corner.type_word = tw.str();
      corner.endpoint_word = flatten_word(corner_point_endpoints(t, n, c, r)).str();
      letters = tw.letters();
    } catch (const Error& e) {
      fc.violation("corner", where, "a word", std::string("error: ") + e.what());
      report.corners.push_back(corner);
      continue;
    }
    if (corner.type_word != corner.endpoint_word)
      fc.violation("corner", where, corner.type_word, corner.endpoint_word);
    std::string sorted = letters;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != identity)
      fc.violation("corner", where, "a permutation of " + identity, corner.type_word);
    if (!seen.insert(letters).second) fc.violation("corner", where, "a new permutation", letters);
    if (mask == 0 && letters != identity) fc.violation("corner", where, identity, letters);
    if (mask + 1 == (std::size_t{1} << n) && letters != reversal)
      fc.violation("corner", where, reversal, letters);
    report.corners.push_back(corner);
  }
  return report;
}

CheckReport check_formula(std::size_t n, const GenerateOptions& opts) {
  LetterEnv env(n + 1, opts);
  return check_term(simplex_type(n, opts), n, env);
}

namespace {

std::string support(const Term& t, std::vector<std::string>& problems, const LetterEnv& env,
                    std::size_t& products) {
  if (is_product(t)) {
    ++products;
    std::string a = support(t.fun().arg(), problems, env, products);
    std::string b = support(t.arg(), problems, env, products);
    if (a.empty() || b.empty())
      problems.push_back("product with an empty factor: " + inline_text(t));
    for (char c : a)
      if (b.find(c) != std::string::npos) {
        problems.push_back("product with overlapping supports: " + inline_text(t));
        break;
      }
    std::string s = a + b;
    std::sort(s.begin(), s.end());
    return s;
  }
  if (t.kind() == TermKind::Atom) return env.is_letter(t.name()) ? t.name() : std::string();
  std::string acc;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    const Term& c = t.child(i);
    std::string s = support(c, problems, env, products);
    if (is_product(c)) {
      std::string full = env.alphabet().substr(0, env.letters());
      if (s != full)
        problems.push_back("maximal product does not use every letter: " + inline_text(c));
      continue;
    }
    acc += s;
  }
  std::sort(acc.begin(), acc.end());
  acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
  return acc;
}

}  // namespace

CombinatoricsReport cross_check_combinatorics(const Term& t, std::size_t n, const LetterEnv& env) {
  CombinatoricsReport rep;
  rep.n = n;
  support(t, rep.problems, env, rep.products);

  std::vector<std::string> atoms = letter_atoms(t);
  rep.atoms = atoms.size();
  std::size_t want = (std::size_t{1} << (n + 1)) - 2;
  if (atoms.size() != want)
    rep.problems.push_back("found " + std::to_string(atoms.size()) + " letter atoms, expected " +
                           std::to_string(want));
  for (const std::string& a : atoms)
    if (!env.is_letter(a) || a.size() > n) rep.problems.push_back("unexpected atom " + a);

  if (n > 0) {
    std::set<std::string> words;
    Resolver r(env);
    std::string identity = env.alphabet().substr(0, n + 1);
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      std::vector<Side> c(n);
      for (std::size_t a = 0; a < n; ++a) c[a] = (mask >> (n - 1 - a)) & 1 ? Side::Hi : Side::Lo;
      try {
        std::string w = flatten_word(corner_point_type(t, n, c, r)).letters();
        std::string sorted = w;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != identity) rep.problems.push_back("corner word " + w + " is not a permutation");
        words.insert(w);
      } catch (const Error& e) {
        rep.problems.push_back(std::string("corner evaluation failed: ") + e.what());
      }
    }
    rep.corners = words.size();
    if (words.size() != (std::size_t{1} << n))
      rep.problems.push_back("only " + std::to_string(words.size()) + " distinct corner words");
  }
  return rep;
}

CombinatoricsReport cross_check_combinatorics(std::size_t n, const GenerateOptions& opts) {
  LetterEnv env(n + 1, opts);
  return cross_check_combinatorics(simplex_type(n, opts), n, env);
}

}  // namespace permucoh

#include "permucoh/term.hpp"

#include <functional>
#include <limits>
#include <unordered_set>
#include <utility>
#include <vector>

namespace permucoh {

const char* kind_name(TermKind k) {
  switch (k) {
    case TermKind::SVar: return "svar";
    case TermKind::CVar: return "cvar";
    case TermKind::IVar: return "ivar";
    case TermKind::Atom: return "atom";
    case TermKind::Lam: return "lam";
    case TermKind::Line: return "line";
    case TermKind::App: return "app";
    case TermKind::IApp: return "iapp";
    case TermKind::Path: return "path";
    case TermKind::PathP: return "pathp";
    case TermKind::Comp: return "comp";
  }
  return "?";
}

const char* meta_name(MetaKind m) {
  switch (m) {
    case MetaKind::X: return "X";
    case MetaKind::Mu: return "mu";
    case MetaKind::Alpha: return "alpha";
  }
  return "?";
}

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = a + b;
  return r < a ? std::numeric_limits<std::uint64_t>::max() : r;
}

}  // namespace

Term Term::make(TermKind k, std::array<Term, 3> kids, std::size_t n) {
  auto node = std::make_shared<detail::Node>();
  node->kind = k;
  node->nkids = static_cast<std::uint8_t>(n);
  std::size_t h = mix(0, static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < n; ++i) {
    if (!kids[i].valid()) throw Error(std::string("missing child in ") + kind_name(k));
    const detail::Node& c = *kids[i].node_;
    node->has_svar = node->has_svar || c.has_svar;
    node->normal = node->normal && c.normal;
    node->cspan = std::max(node->cspan, c.cspan);
    node->ispan = std::max(node->ispan, c.ispan);
    node->size = sat_add(node->size, c.size);
    h = mix(h, c.hash);
  }
  if (k == TermKind::Lam && node->cspan > 0) node->cspan -= 1;
  if (k == TermKind::Line && node->ispan > 0) node->ispan -= 1;
  if (k == TermKind::App && kids[0].kind() == TermKind::Lam) node->normal = false;
  if (k == TermKind::IApp && kids[0].kind() == TermKind::Line) node->normal = false;
  node->hash = h;
  node->kids = std::move(kids);
  return Term(std::move(node));
}

Term Term::svar(MetaKind meta, std::size_t level) {
  auto node = std::make_shared<detail::Node>();
  node->kind = TermKind::SVar;
  node->meta = meta;
  node->index = level;
  node->has_svar = true;
  node->hash = mix(mix(mix(0, 0), static_cast<std::size_t>(meta) + 1), level);
  return Term(std::move(node));
}

Term Term::cvar(std::size_t index) {
  auto node = std::make_shared<detail::Node>();
  node->kind = TermKind::CVar;
  node->index = index;
  node->cspan = index + 1;
  node->hash = mix(mix(0, 1), index);
  return Term(std::move(node));
}

Term Term::ivar(std::size_t index) {
  auto node = std::make_shared<detail::Node>();
  node->kind = TermKind::IVar;
  node->index = index;
  node->ispan = index + 1;
  node->hash = mix(mix(0, 2), index);
  return Term(std::move(node));
}

Term Term::atom(std::string name) {
  auto node = std::make_shared<detail::Node>();
  node->kind = TermKind::Atom;
  node->hash = mix(mix(0, 3), std::hash<std::string>{}(name));
  node->name = std::move(name);
  return Term(std::move(node));
}

Term Term::lam(Term body) { return make(TermKind::Lam, {std::move(body)}, 1); }
Term Term::line(Term body) { return make(TermKind::Line, {std::move(body)}, 1); }
Term Term::app(Term fun, Term arg) {
  return make(TermKind::App, {std::move(fun), std::move(arg)}, 2);
}
Term Term::iapp(Term fun, Term iarg) {
  return make(TermKind::IApp, {std::move(fun), std::move(iarg)}, 2);
}
Term Term::path(Term space, Term lhs, Term rhs) {
  return make(TermKind::Path, {std::move(space), std::move(lhs), std::move(rhs)}, 3);
}
Term Term::pathp(Term line, Term lhs, Term rhs) {
  if (!line.valid() || line.kind() != TermKind::Line)
    throw Error("pathp: type family must be a line");
  return make(TermKind::PathP, {std::move(line), std::move(lhs), std::move(rhs)}, 3);
}
Term Term::comp(Term first, Term second) {
  return make(TermKind::Comp, {std::move(first), std::move(second)}, 2);
}

MetaKind Term::meta() const {
  if (kind() != TermKind::SVar) throw Error("meta: not a schematic variable");
  return node_->meta;
}

std::size_t Term::index() const {
  TermKind k = kind();
  if (k != TermKind::SVar && k != TermKind::CVar && k != TermKind::IVar)
    throw Error(std::string("index: not a variable but ") + kind_name(k));
  return node_->index;
}

const std::string& Term::name() const {
  if (kind() != TermKind::Atom) throw Error("name: not an atom");
  return node_->name;
}

Term Term::with_children(const Term* kids, std::size_t n) const {
  bool same = true;
  for (std::size_t i = 0; i < n; ++i) same = same && kids[i].node_ == child(i).node_;
  if (same) return *this;
  if (kind() == TermKind::PathP) return pathp(kids[0], kids[1], kids[2]);
  std::array<Term, 3> a;
  for (std::size_t i = 0; i < n; ++i) a[i] = kids[i];
  return make(kind(), std::move(a), n);
}

namespace {

struct PairHash {
  std::size_t operator()(const std::pair<const void*, const void*>& p) const {
    return mix(std::hash<const void*>{}(p.first), std::hash<const void*>{}(p.second));
  }
};

using SeenPairs = std::unordered_set<std::pair<const void*, const void*>, PairHash>;

bool equal_rec(const Term& a, const Term& b, SeenPairs& seen) {
  if (a.id() == b.id()) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind() || a.size() != b.size()) return false;
  switch (a.kind()) {
    case TermKind::SVar:
      return a.meta() == b.meta() && a.index() == b.index();
    case TermKind::CVar:
    case TermKind::IVar:
      return a.index() == b.index();
    case TermKind::Atom:
      return a.name() == b.name();
    default:
      break;
  }
  // Shared subterms make naive recursion exponential on large DAGs.
  bool memo = a.size() > 64;
  if (memo && seen.count({a.id(), b.id()})) return true;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (!equal_rec(a.child(i), b.child(i), seen)) return false;
  if (memo) seen.insert({a.id(), b.id()});
  return true;
}

}  // namespace

bool operator==(const Term& a, const Term& b) {
  if (!a.valid() || !b.valid()) return a.valid() == b.valid();
  SeenPairs seen;
  return equal_rec(a, b, seen);
}

namespace {

struct ScopeKey {
  const void* id;
  std::size_t dc, di;
  bool operator==(const ScopeKey&) const = default;
};
struct ScopeKeyHash {
  std::size_t operator()(const ScopeKey& k) const {
    return mix(mix(std::hash<const void*>{}(k.id), k.dc), k.di);
  }
};
using ScopeSeen = std::unordered_set<ScopeKey, ScopeKeyHash>;

std::string scope_rec(const Term& t, const Scope& s, std::size_t dc, std::size_t di,
                      ScopeSeen& seen) {
  switch (t.kind()) {
    case TermKind::SVar: {
      const std::optional<std::size_t>* lim = nullptr;
      switch (t.meta()) {
        case MetaKind::X: lim = &s.x_env; break;
        case MetaKind::Mu: lim = &s.mu_env; break;
        case MetaKind::Alpha: lim = &s.alpha_env; break;
      }
      if (*lim && t.index() >= **lim)
        return std::string("schematic ") + meta_name(t.meta()) + " variable " +
               std::to_string(t.index()) + " outside environment of size " +
               std::to_string(**lim);
      return {};
    }
    case TermKind::CVar:
      if (t.index() >= s.cvars + dc)
        return "unbound context variable " + std::to_string(t.index());
      return {};
    case TermKind::IVar:
      if (t.index() >= s.ivars + di)
        return "unbound interval variable " + std::to_string(t.index());
      return {};
    case TermKind::Atom:
      return {};
    case TermKind::Lam:
      return scope_rec(t.body(), s, dc + 1, di, seen);
    case TermKind::Line:
      return scope_rec(t.body(), s, dc, di + 1, seen);
    case TermKind::IApp:
      if (t.arg().kind() != TermKind::IVar)
        return std::string("interval application to a ") + kind_name(t.arg().kind());
      break;
    default:
      break;
  }
  if (t.size() > 16 && !seen.insert({t.id(), dc, di}).second) return {};
  for (std::size_t i = 0; i < t.arity(); ++i) {
    std::string e = scope_rec(t.child(i), s, dc, di, seen);
    if (!e.empty()) return e;
  }
  return {};
}

}  // namespace

std::string scope_error(const Term& t, const Scope& scope) {
  if (!t.valid()) return "empty term";
  ScopeSeen seen;
  return scope_rec(t, scope, 0, 0, seen);
}

bool is_well_scoped(const Term& t, const Scope& scope) { return scope_error(t, scope).empty(); }

void check_scope(const Term& t, const Scope& scope) {
  std::string e = scope_error(t, scope);
  if (!e.empty()) throw ScopeError(e);
}

}  // namespace permucoh

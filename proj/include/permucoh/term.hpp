#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

namespace permucoh {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ScopeError : public Error {
 public:
  using Error::Error;
};

enum class TermKind : std::uint8_t {
  SVar,
  CVar,
  IVar,
  Atom,
  Lam,
  Line,
  App,
  IApp,
  Path,
  PathP,
  Comp,
};

// Which environment a schematic variable is looked up in.
enum class MetaKind : std::uint8_t { X, Mu, Alpha };

const char* kind_name(TermKind k);
const char* meta_name(MetaKind m);

namespace detail {
struct Node;
}

// Immutable, structurally shared term. Copies are cheap.
class Term {
 public:
  Term() = default;

  static Term svar(MetaKind meta, std::size_t level);
  static Term cvar(std::size_t index);
  static Term ivar(std::size_t index);
  static Term atom(std::string name);
  static Term lam(Term body);
  static Term line(Term body);
  static Term app(Term fun, Term arg);
  static Term iapp(Term fun, Term iarg);
  static Term path(Term space, Term lhs, Term rhs);
  // `line` must be a Line node.
  static Term pathp(Term line, Term lhs, Term rhs);
  static Term comp(Term first, Term second);

  bool valid() const { return node_ != nullptr; }
  TermKind kind() const;
  MetaKind meta() const;
  std::size_t index() const;
  const std::string& name() const;

  std::size_t arity() const;
  const Term& child(std::size_t i) const;

  const Term& body() const { return child(0); }
  const Term& fun() const { return child(0); }
  const Term& arg() const { return child(1); }
  const Term& space() const { return child(0); }
  const Term& lhs() const { return child(1); }
  const Term& rhs() const { return child(2); }
  const Term& first() const { return child(0); }
  const Term& second() const { return child(1); }

  bool is(TermKind k) const { return kind() == k; }

  // One past the largest free CVar / IVar index, 0 when there is none.
  std::size_t cvar_span() const;
  std::size_t ivar_span() const;
  bool closed() const { return cvar_span() == 0 && ivar_span() == 0; }
  bool has_svar() const;
  // No App-of-Lam or IApp-of-Line redex anywhere below.
  bool is_normal() const;
  std::size_t hash() const;
  // Tree size (shared subterms counted once per occurrence), saturating.
  std::uint64_t size() const;
  const void* id() const { return node_.get(); }

  // Rebuild with new children, reusing this node when nothing changed.
  Term with_children(const Term* kids, std::size_t n) const;

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  explicit Term(std::shared_ptr<const detail::Node> n) : node_(std::move(n)) {}
  static Term make(TermKind k, std::array<Term, 3> kids, std::size_t n);

  std::shared_ptr<const detail::Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

struct Scope {
  std::size_t cvars = 0;
  std::size_t ivars = 0;
  // Environment sizes for schematic variables; nullopt means "not checked".
  std::optional<std::size_t> x_env;
  std::optional<std::size_t> mu_env;
  std::optional<std::size_t> alpha_env;
};

// Empty string when well scoped, otherwise a description of the first problem.
std::string scope_error(const Term& t, const Scope& scope = {});
bool is_well_scoped(const Term& t, const Scope& scope = {});
void check_scope(const Term& t, const Scope& scope = {});

namespace detail {

struct Node {
  TermKind kind;
  MetaKind meta = MetaKind::X;
  std::uint8_t nkids = 0;
  bool has_svar = false;
  bool normal = true;
  std::size_t index = 0;
  std::size_t cspan = 0;
  std::size_t ispan = 0;
  std::size_t hash = 0;
  std::uint64_t size = 1;
  std::string name;
  std::array<Term, 3> kids;
};

}  // namespace detail

inline TermKind Term::kind() const { return node_->kind; }
inline std::size_t Term::arity() const { return node_->nkids; }
inline const Term& Term::child(std::size_t i) const { return node_->kids[i]; }
inline std::size_t Term::cvar_span() const { return node_->cspan; }
inline std::size_t Term::ivar_span() const { return node_->ispan; }
inline bool Term::has_svar() const { return node_->has_svar; }
inline bool Term::is_normal() const { return node_->normal; }
inline std::size_t Term::hash() const { return node_->hash; }
inline std::uint64_t Term::size() const { return node_->size; }

}  // namespace permucoh

#include "permucoh/display.hpp"

#include <string>

namespace permucoh {

Term evens(const Term& t, const Renaming& rho) {
  switch (t.kind()) {
    case TermKind::SVar:
      return Term::svar(t.meta(), 2 * t.index());
    case TermKind::CVar:
      return Term::cvar(rho(t.index()));
    case TermKind::IVar:
    case TermKind::Atom:
      return t;
    case TermKind::Lam: {
      if (t.cvar_span() == 0 && !t.has_svar()) return t;
      Term b = evens(t.body(), weaken(rho));
      return t.with_children(&b, 1);
    }
    default:
      break;
  }
  if (t.cvar_span() == 0 && !t.has_svar()) return t;
  std::array<Term, 3> kids;
  for (std::size_t i = 0; i < t.arity(); ++i) kids[i] = evens(t.child(i), rho);
  return t.with_children(kids.data(), t.arity());
}

namespace {

Renaming odd_slots() {
  return [](std::size_t n) { return 2 * n + 1; };
}

Term display_path_like(const Term& space, const Term& lhs, const Term& rhs, bool new_line) {
  Term x = lift(display(space), 1, new_line ? 1 : 0);
  Term fam = Term::line(Term::app(x, Term::iapp(Term::cvar(0), Term::ivar(0))));
  return Term::lam(Term::pathp(fam, lift(display(lhs), 1, 0), lift(display(rhs), 1, 0)));
}

}  // namespace

Term display(const Term& t) {
  switch (t.kind()) {
    case TermKind::SVar:
      return Term::svar(t.meta(), 2 * t.index() + 1);
    case TermKind::CVar:
      return Term::cvar(2 * t.index());
    case TermKind::IVar:
      throw DisplayError("display of an interval variable");
    case TermKind::Atom:
      throw DisplayError("display of atom '" + t.name() + "'");
    case TermKind::Lam:
      return Term::lam(Term::lam(display(t.body())));
    case TermKind::Line:
      return Term::line(display(t.body()));
    case TermKind::App:
      return Term::app(Term::app(display(t.fun()), evens(t.arg(), odd_slots())),
                       display(t.arg()));
    case TermKind::IApp:
      return Term::iapp(display(t.fun()), t.arg());
    case TermKind::Path:
      return display_path_like(t.space(), t.lhs(), t.rhs(), true);
    case TermKind::PathP:
      return display_path_like(t.space().body(), t.lhs(), t.rhs(), false);
    case TermKind::Comp:
      return Term::comp(display(t.first()), display(t.second()));
  }
  throw DisplayError("display: unknown term former");
}

std::vector<Term> decalage(const std::vector<Term>& seeds) {
  std::vector<Term> out;
  out.reserve(2 * seeds.size());
  for (const Term& t : seeds) {
    out.push_back(evens(t, odd_slots()));
    out.push_back(display(t));
  }
  return out;
}

namespace {

const Term& lookup(const std::vector<Term>& env, const Term& v, const char* which) {
  if (v.index() >= env.size())
    throw EvalError(std::string("schematic ") + which + " variable " + std::to_string(v.index()) +
                    " outside environment of size " + std::to_string(env.size()));
  return env[v.index()];
}

void check_closed(const std::vector<Term>& env, const char* which) {
  for (std::size_t i = 0; i < env.size(); ++i)
    if (!env[i].valid() || !env[i].closed())
      throw EvalError(std::string(which) + " environment entry " + std::to_string(i) +
                      " is not closed");
}

Term eval_rec(const Term& t, const std::vector<Term>& xe, const std::vector<Term>& me,
              const std::vector<Term>& ae) {
  if (!t.has_svar()) return t;
  if (t.kind() == TermKind::SVar) {
    switch (t.meta()) {
      case MetaKind::X: return lookup(xe, t, "X");
      case MetaKind::Mu: return lookup(me, t, "mu");
      case MetaKind::Alpha: return lookup(ae, t, "alpha");
    }
  }
  std::array<Term, 3> kids;
  for (std::size_t i = 0; i < t.arity(); ++i) kids[i] = eval_rec(t.child(i), xe, me, ae);
  return t.with_children(kids.data(), t.arity());
}

}  // namespace

Term eval_env(const Term& t, const std::vector<Term>& x_env, const std::vector<Term>& mu_env,
              const std::vector<Term>& alpha_env) {
  check_closed(x_env, "X");
  check_closed(mu_env, "mu");
  check_closed(alpha_env, "alpha");
  return eval_rec(t, x_env, mu_env, alpha_env);
}

}  // namespace permucoh

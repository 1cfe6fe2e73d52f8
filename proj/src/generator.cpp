#include "permucoh/generator.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "permucoh/display.hpp"

namespace permucoh {

const SeedPair& seeds() {
  static const SeedPair s = [] {
    Term mu = Term::svar(MetaKind::Mu, 0);
    Term a = Term::svar(MetaKind::Alpha, 0);
    auto mul = [&](Term l, Term r) { return Term::app(Term::app(mu, std::move(l)), std::move(r)); };
    Term x = Term::lam(Term::path(Term::svar(MetaKind::X, 0), mul(a, Term::cvar(0)),
                                  mul(Term::cvar(0), a)));
    auto at0 = [](std::size_t c) { return Term::iapp(Term::cvar(c), Term::ivar(0)); };
    Term m = Term::lam(Term::lam(Term::lam(Term::lam(
        Term::comp(Term::line(mul(at0(2), Term::cvar(1))),
                   Term::line(mul(Term::cvar(3), at0(0))))))));
    return SeedPair{x, m};
  }();
  return s;
}

GenState initial_state(std::string alphabet) {
  GenState s;
  s.sx = {seeds().x};
  s.smu = {seeds().mu};
  s.x_env = {Term::atom(kSpaceAtom)};
  s.mu_env = {Term::atom(kMulAtom)};
  s.alphabet = std::move(alphabet);
  return s;
}

namespace {

std::string letter(std::size_t step, const std::string& alphabet) {
  if (step >= alphabet.size())
    throw GenerationError("letter alphabet exhausted at step " + std::to_string(step) +
                          " (alphabet has " + std::to_string(alphabet.size()) + " letters)");
  std::string l(1, alphabet[step]);
  if (l == kSpaceAtom)
    throw GenerationError("letter " + l + " collides with the space atom; use another alphabet");
  return l;
}

}  // namespace

std::vector<std::string> batch_names(std::size_t step, const std::vector<std::string>& alpha_gen,
                                     const std::string& alphabet) {
  if (alpha_gen.size() + 1 != (std::size_t{1} << step))
    throw GenerationError("subset generator has " + std::to_string(alpha_gen.size()) +
                          " entries, inconsistent with step " + std::to_string(step));
  std::string l = letter(step, alphabet);
  std::vector<std::string> out;
  out.reserve(alpha_gen.size() + 1);
  out.push_back(l);
  for (const std::string& s : alpha_gen) out.push_back(s + l);
  return out;
}

std::vector<Term> batch_letters(std::size_t step, const std::vector<std::string>& alpha_gen,
                                const std::string& alphabet) {
  std::vector<Term> out;
  for (std::string& s : batch_names(step, alpha_gen, alphabet)) out.push_back(Term::atom(std::move(s)));
  return out;
}

GenState advance(const GenState& state, const AdvanceOptions& opts) {
  std::vector<Term> batch = batch_letters(state.step, state.alpha_gen, state.alphabet);
  GenState next;
  next.step = state.step + 1;
  next.alphabet = state.alphabet;
  next.x_env = state.x_env;
  next.mu_env = state.mu_env;
  for (const Term& x : state.sx)
    next.x_env.push_back(
        normalize(eval_env(x, state.x_env, state.mu_env, batch), opts.normalize));
  for (const Term& m : state.smu)
    next.mu_env.push_back(
        normalize(eval_env(m, state.x_env, state.mu_env, batch), opts.normalize));
  if (!opts.skip_decalage) {
    next.sx = decalage(state.sx);
    next.smu = decalage(state.smu);
  }
  next.alpha_gen = state.alpha_gen;
  std::string l = letter(state.step, state.alphabet);
  next.alpha_gen.push_back(l);
  for (const std::string& s : state.alpha_gen) next.alpha_gen.push_back(s + l);
  return next;
}

Term simplex_type(std::size_t n, const GenerateOptions& opts) {
  GenState s = initial_state(opts.alphabet);
  for (std::size_t k = 0; k < n; ++k) {
    AdvanceOptions a;
    a.normalize = opts.normalize;
    a.skip_decalage = k + 1 == n;
    s = advance(s, a);
  }
  std::vector<Term> batch = batch_letters(n, s.alpha_gen, s.alphabet);
  batch.pop_back();
  Term t = s.x_env.back();
  for (const Term& b : batch) t = Term::app(t, b);
  return normalize(t, opts.normalize);
}

namespace {

bool is_letter_name(const std::string& s) {
  return s != kSpaceAtom && s != kMulAtom && !s.empty();
}

struct Occurrences {
  std::set<std::size_t> extents;
  bool bad = false;
  std::string why;
};

// Extents at which interval variable `target` (relative to t) is used.
void collect_extents(const Term& t, std::size_t target, Occurrences& occ) {
  if (t.ivar_span() <= target) return;
  switch (t.kind()) {
    case TermKind::Line:
      collect_extents(t.body(), target + 1, occ);
      return;
    case TermKind::IApp: {
      std::vector<const Term*> args;
      const Term* h = &t;
      while (h->kind() == TermKind::IApp) {
        args.push_back(&h->arg());
        h = &h->fun();
      }
      std::reverse(args.begin(), args.end());
      bool letter_head = h->kind() == TermKind::Atom && is_letter_name(h->name());
      for (std::size_t p = 0; p < args.size(); ++p) {
        const Term& a = *args[p];
        if (a.kind() == TermKind::IVar && a.index() == target) {
          if (!letter_head) {
            occ.bad = true;
            occ.why = "interval variable applied to a non-letter path";
          } else if (p + 1 >= h->name().size()) {
            occ.bad = true;
            occ.why = "letter " + h->name() + " applied beyond its dimension";
          } else {
            occ.extents.insert(p + 1);
          }
        } else {
          collect_extents(a, target, occ);
        }
      }
      collect_extents(*h, target, occ);
      return;
    }
    case TermKind::IVar:
      if (t.index() == target) {
        occ.bad = true;
        occ.why = "interval variable used outside a letter application";
      }
      return;
    default:
      break;
  }
  for (std::size_t i = 0; i < t.arity(); ++i) collect_extents(t.child(i), target, occ);
}

bool has_path_structure(const Term& t) {
  switch (t.kind()) {
    case TermKind::Line:
    case TermKind::Comp:
    case TermKind::Path:
    case TermKind::PathP:
      return true;
    default:
      break;
  }
  for (std::size_t i = 0; i < t.arity(); ++i)
    if (has_path_structure(t.child(i))) return true;
  return false;
}

class LengthAnnotator {
 public:
  explicit LengthAnnotator(std::size_t n) : n_(n) {}

  Annotation type(const Term& t, std::size_t m) {
    Annotation a;
    a.length = m;
    if (m < n_) {
      if (t.kind() != TermKind::PathP)
        throw LengthError("expected PathP at nesting " + std::to_string(m) + ", found " +
                          kind_name(t.kind()));
      const Term& body = t.space().body();
      Occurrences occ;
      collect_extents(body, 0, occ);
      check_line(occ, m, "type line at nesting " + std::to_string(m));
      Annotation line;
      line.kids.push_back(type(body, m + 1));
      a.kids.push_back(std::move(line));
    } else {
      if (t.kind() != TermKind::Path)
        throw LengthError("expected Path at nesting " + std::to_string(m) + ", found " +
                          kind_name(t.kind()));
      if (has_path_structure(t.space())) throw LengthError("path structure inside the space");
      a.kids.emplace_back();
    }
    a.kids.push_back(cube(t.lhs(), m + 1));
    a.kids.push_back(cube(t.rhs(), m + 1));
    return a;
  }

 private:
  void check_line(const Occurrences& occ, std::size_t want, const std::string& where) {
    if (occ.bad) throw LengthError(where + ": " + occ.why);
    if (occ.extents.empty()) throw LengthError(where + ": degenerate line");
    if (occ.extents.size() > 1 || *occ.extents.begin() != want)
      throw LengthError(where + ": extent " + std::to_string(*occ.extents.rbegin()) +
                        " where " + std::to_string(want) + " was required");
  }

  // A cube whose first axis is `axis`; points when axis exceeds n.
  Annotation cube(const Term& t, std::size_t axis) {
    if (axis > n_) {
      if (has_path_structure(t)) throw LengthError("path structure inside a point");
      return {};
    }
    Annotation a = path(t, axis);
    if (*a.length != axis)
      throw LengthError("composite of length " + std::to_string(*a.length) + " on axis " +
                        std::to_string(axis) + " where " + std::to_string(axis) +
                        " was required: " + pretty_print(t, {Format::Text, false, nullptr}));
    return a;
  }

  Annotation path(const Term& t, std::size_t axis) {
    Annotation a;
    switch (t.kind()) {
      case TermKind::Comp: {
        Annotation p = path(t.first(), axis);
        Annotation q = path(t.second(), axis);
        a.length = *p.length + *q.length;
        a.kids.push_back(std::move(p));
        a.kids.push_back(std::move(q));
        return a;
      }
      case TermKind::Line: {
        Occurrences occ;
        collect_extents(t.body(), 0, occ);
        if (occ.bad) throw LengthError("line on axis " + std::to_string(axis) + ": " + occ.why);
        if (occ.extents.size() != 1)
          throw LengthError("line on axis " + std::to_string(axis) +
                            (occ.extents.empty() ? " is degenerate" : " has mixed extents"));
        a.length = *occ.extents.begin();
        a.kids.push_back(cube(t.body(), axis + 1));
        return a;
      }
      default:
        throw LengthError(std::string("expected a path on axis ") + std::to_string(axis) +
                          ", found " + kind_name(t.kind()));
    }
  }

  std::size_t n_;
};

}  // namespace

Annotation annotate_lengths(const Term& t) {
  std::size_t n = 1;
  const Term* cur = &t;
  while (cur->kind() == TermKind::PathP) {
    ++n;
    cur = &cur->space().body();
  }
  if (cur->kind() != TermKind::Path)
    throw LengthError("not a simplex type: innermost former is " +
                      std::string(kind_name(cur->kind())));
  return LengthAnnotator(n).type(t, 1);
}

std::vector<std::string> letter_atoms(const Term& t) {
  std::set<std::string> names;
  std::unordered_set<const void*> seen;
  std::vector<const Term*> stack{&t};
  while (!stack.empty()) {
    const Term* cur = stack.back();
    stack.pop_back();
    if (cur->kind() == TermKind::Atom) {
      if (is_letter_name(cur->name())) names.insert(cur->name());
      continue;
    }
    if (cur->arity() == 0 || !seen.insert(cur->id()).second) continue;
    for (std::size_t i = 0; i < cur->arity(); ++i) stack.push_back(&cur->child(i));
  }
  return {names.begin(), names.end()};
}

}  // namespace permucoh

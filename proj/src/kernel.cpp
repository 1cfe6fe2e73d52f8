#include "permucoh/kernel.hpp"

#include <string>
#include <unordered_map>
#include <utility>

namespace permucoh {

Renaming identity_renaming() {
  return [](std::size_t n) { return n; };
}

Renaming successor_renaming() {
  return [](std::size_t n) { return n + 1; };
}

Renaming weaken(Renaming rho) {
  return [rho = std::move(rho)](std::size_t n) -> std::size_t {
    return n == 0 ? 0 : rho(n - 1) + 1;
  };
}

Term rename(const Term& t, const Renaming& rc, const Renaming& ri) {
  switch (t.kind()) {
    case TermKind::CVar:
      return Term::cvar(rc(t.index()));
    case TermKind::IVar:
      return Term::ivar(ri(t.index()));
    case TermKind::SVar:
    case TermKind::Atom:
      return t;
    case TermKind::Lam:
      if (t.closed()) return t;
      return t.with_children(std::array<Term, 1>{rename(t.body(), weaken(rc), ri)}.data(), 1);
    case TermKind::Line:
      if (t.closed()) return t;
      return t.with_children(std::array<Term, 1>{rename(t.body(), rc, weaken(ri))}.data(), 1);
    default:
      break;
  }
  if (t.closed()) return t;
  std::array<Term, 3> kids;
  for (std::size_t i = 0; i < t.arity(); ++i) kids[i] = rename(t.child(i), rc, ri);
  return t.with_children(kids.data(), t.arity());
}

Substitution weaken_sub(Substitution sigma) {
  return [sigma = std::move(sigma)](std::size_t n) -> Term {
    if (n == 0) return Term::cvar(0);
    return rename(sigma(n - 1), successor_renaming(), identity_renaming());
  };
}

Substitution weaken_sub_interval(Substitution sigma) {
  return [sigma = std::move(sigma)](std::size_t n) -> Term {
    return rename(sigma(n), identity_renaming(), successor_renaming());
  };
}

Term substitute(const Term& t, const Substitution& sigma) {
  switch (t.kind()) {
    case TermKind::CVar:
      return sigma(t.index());
    case TermKind::IVar:
    case TermKind::SVar:
    case TermKind::Atom:
      return t;
    case TermKind::Lam:
      if (t.cvar_span() == 0) return t;
      return t.with_children(std::array<Term, 1>{substitute(t.body(), weaken_sub(sigma))}.data(),
                             1);
    case TermKind::Line:
      if (t.cvar_span() == 0) return t;
      return t.with_children(
          std::array<Term, 1>{substitute(t.body(), weaken_sub_interval(sigma))}.data(), 1);
    default:
      break;
  }
  if (t.cvar_span() == 0) return t;
  std::array<Term, 3> kids;
  for (std::size_t i = 0; i < t.arity(); ++i) kids[i] = substitute(t.child(i), sigma);
  return t.with_children(kids.data(), t.arity());
}

namespace {

struct Key {
  const void* id;
  std::size_t a, b;
  bool operator==(const Key&) const = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::size_t h = std::hash<const void*>{}(k.id);
    h ^= k.a + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= k.b + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

using Memo = std::unordered_map<Key, Term, KeyHash>;

// Small subterms are cheaper to rebuild than to look up.
constexpr std::uint64_t kMemoSize = 32;

template <class Leaf>
Term rebuild(const Term& t, std::size_t dc, std::size_t di, Memo& memo, const Leaf& leaf,
             bool (*untouched)(const Term&, std::size_t, std::size_t)) {
  if (untouched(t, dc, di)) return t;
  switch (t.kind()) {
    case TermKind::CVar:
    case TermKind::IVar:
      return leaf(t, dc, di);
    case TermKind::SVar:
    case TermKind::Atom:
      return t;
    default:
      break;
  }
  bool use_memo = t.size() > kMemoSize;
  if (use_memo) {
    auto it = memo.find({t.id(), dc, di});
    if (it != memo.end()) return it->second;
  }
  Term out;
  if (t.kind() == TermKind::Lam) {
    Term b = rebuild(t.body(), dc + 1, di, memo, leaf, untouched);
    out = t.with_children(&b, 1);
  } else if (t.kind() == TermKind::Line) {
    Term b = rebuild(t.body(), dc, di + 1, memo, leaf, untouched);
    out = t.with_children(&b, 1);
  } else {
    std::array<Term, 3> kids;
    for (std::size_t i = 0; i < t.arity(); ++i)
      kids[i] = rebuild(t.child(i), dc, di, memo, leaf, untouched);
    out = t.with_children(kids.data(), t.arity());
  }
  if (use_memo) memo.emplace(Key{t.id(), dc, di}, out);
  return out;
}

bool below_cutoffs(const Term& t, std::size_t cc, std::size_t ci) {
  return t.cvar_span() <= cc && t.ivar_span() <= ci;
}

bool cvars_below(const Term& t, std::size_t cc, std::size_t) { return t.cvar_span() <= cc; }

bool ivars_below(const Term& t, std::size_t, std::size_t ci) { return t.ivar_span() <= ci; }

}  // namespace

Term lift(const Term& t, std::size_t dc, std::size_t di) {
  if ((dc == 0 && di == 0) || t.closed()) return t;
  Memo memo;
  auto leaf = [dc, di](const Term& v, std::size_t cc, std::size_t ci) -> Term {
    if (v.kind() == TermKind::CVar)
      return v.index() >= cc ? Term::cvar(v.index() + dc) : v;
    return v.index() >= ci ? Term::ivar(v.index() + di) : v;
  };
  return rebuild(t, 0, 0, memo, leaf, below_cutoffs);
}

Term shift_into(const Term& body, const Term& arg) {
  if (body.cvar_span() == 0) return body;
  Memo memo;
  std::unordered_map<Key, Term, KeyHash> lifted;
  auto leaf = [&](const Term& v, std::size_t dc, std::size_t di) -> Term {
    if (v.kind() == TermKind::IVar) return v;
    std::size_t n = v.index();
    if (n < dc) return v;
    if (n > dc) return Term::cvar(n - 1);
    auto it = lifted.find({nullptr, dc, di});
    if (it != lifted.end()) return it->second;
    Term a = lift(arg, dc, di);
    lifted.emplace(Key{nullptr, dc, di}, a);
    return a;
  };
  return rebuild(body, 0, 0, memo, leaf, cvars_below);
}

Term instantiate_interval(const Term& body, std::size_t n) {
  if (body.ivar_span() == 0) return body;
  Memo memo;
  auto leaf = [n](const Term& v, std::size_t, std::size_t di) -> Term {
    if (v.kind() == TermKind::CVar) return v;
    std::size_t k = v.index();
    if (k < di) return v;
    if (k > di) return Term::ivar(k - 1);
    return Term::ivar(n + di);
  };
  return rebuild(body, 0, 0, memo, leaf, ivars_below);
}

namespace {

class Normalizer {
 public:
  Normalizer(const NormalizeOptions& opts, NormalizeStats* stats) : opts_(opts), stats_(stats) {}

  Term run(const Term& t) {
    if (t.is_normal()) return t;
    bool use_memo = t.size() > kMemoSize;
    if (use_memo) {
      auto it = memo_.find(t.id());
      if (it != memo_.end()) return it->second.second;
    }
    Term out = step(t);
    // The key is kept alive so its address cannot be reused by a later node.
    if (use_memo) memo_.emplace(t.id(), std::make_pair(t, out));
    return out;
  }

 private:
  void tick() {
    if (++steps_ > opts_.max_steps)
      throw NormalizeLimitError("normalization exceeded " + std::to_string(opts_.max_steps) +
                                " reduction steps");
    if (stats_) stats_->steps = steps_;
  }

  Term step(const Term& t) {
    switch (t.kind()) {
      case TermKind::App: {
        Term f = run(t.fun());
        Term a = run(t.arg());
        if (f.kind() == TermKind::Lam) {
          tick();
          return run(shift_into(f.body(), a));
        }
        std::array<Term, 2> kids{f, a};
        return t.with_children(kids.data(), 2);
      }
      case TermKind::IApp: {
        Term f = run(t.fun());
        Term i = run(t.arg());
        if (f.kind() == TermKind::Line) {
          if (i.kind() != TermKind::IVar)
            throw ReductionError(std::string("line applied to a non-variable interval term (") +
                                 kind_name(i.kind()) + ")");
          tick();
          return run(instantiate_interval(f.body(), i.index()));
        }
        std::array<Term, 2> kids{f, i};
        return t.with_children(kids.data(), 2);
      }
      default:
        break;
    }
    std::array<Term, 3> kids;
    for (std::size_t i = 0; i < t.arity(); ++i) kids[i] = run(t.child(i));
    return t.with_children(kids.data(), t.arity());
  }

  const NormalizeOptions& opts_;
  NormalizeStats* stats_;
  std::uint64_t steps_ = 0;
  std::unordered_map<const void*, std::pair<Term, Term>> memo_;
};

}  // namespace

Term normalize(const Term& t, const NormalizeOptions& opts, NormalizeStats* stats) {
  Normalizer n(opts, stats);
  return n.run(t);
}

}  // namespace permucoh

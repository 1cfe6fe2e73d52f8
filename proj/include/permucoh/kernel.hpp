#pragma once

#include <cstdint>
#include <functional>

#include "permucoh/term.hpp"

namespace permucoh {

class NormalizeLimitError : public Error {
 public:
  using Error::Error;
};

class ReductionError : public Error {
 public:
  using Error::Error;
};

using Renaming = std::function<std::size_t(std::size_t)>;
using Substitution = std::function<Term(std::size_t)>;

Renaming identity_renaming();
Renaming successor_renaming();
// 0 stays 0, n+1 goes to rho(n)+1.
Renaming weaken(Renaming rho);
// Under a context binder: 0 is CVar 0, n is rho(n-1) lifted past the binder.
Substitution weaken_sub(Substitution sigma);
// Under an interval binder: n is sigma(n) with its interval variables lifted.
Substitution weaken_sub_interval(Substitution sigma);

Term rename(const Term& t, const Renaming& rc, const Renaming& ri);
// Replaces every free CVar; IVars are left alone (with the binder lifting above).
Term substitute(const Term& t, const Substitution& sigma);

// Adds dc to free CVars and di to free IVars.
Term lift(const Term& t, std::size_t dc, std::size_t di);

// Body of a context binder with its variable 0 replaced by arg.
Term shift_into(const Term& body, const Term& arg);
// Body of a Line with its interval variable 0 replaced by IVar n.
Term instantiate_interval(const Term& body, std::size_t n);

struct NormalizeOptions {
  // Budget of reduction steps (App-Lam and IApp-Line contractions) per call.
  std::uint64_t max_steps = 1'000'000;
};

struct NormalizeStats {
  std::uint64_t steps = 0;
};

Term normalize(const Term& t, const NormalizeOptions& opts = {}, NormalizeStats* stats = nullptr);

}  // namespace permucoh

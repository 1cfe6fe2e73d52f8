#pragma once

#include <vector>

#include "permucoh/kernel.hpp"
#include "permucoh/term.hpp"

namespace permucoh {

class DisplayError : public Error {
 public:
  using Error::Error;
};

class EvalError : public Error {
 public:
  using Error::Error;
};

// Schematic levels n become 2n; free context variables go through rho.
Term evens(const Term& t, const Renaming& rho);
// Odd slots for schematic variables, even slots for context variables, each
// binder doubled into a dependent pair of binders.
Term display(const Term& t);
// Each entry t becomes the pair [evens(t, n -> 2n+1), display(t)].
std::vector<Term> decalage(const std::vector<Term>& seeds);

// Replaces schematic variables by closed environment entries.
Term eval_env(const Term& t, const std::vector<Term>& x_env, const std::vector<Term>& mu_env,
              const std::vector<Term>& alpha_env);

}  // namespace permucoh

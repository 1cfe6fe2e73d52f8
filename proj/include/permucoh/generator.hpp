#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "permucoh/kernel.hpp"
#include "permucoh/print.hpp"
#include "permucoh/term.hpp"

namespace permucoh {

class GenerationError : public Error {
 public:
  using Error::Error;
};

class LengthError : public Error {
 public:
  using Error::Error;
};

inline constexpr const char* kDefaultAlphabet = "ABCDEFGHIJKLMNOPQRSTUVWXYZ";
inline constexpr const char* kSpaceAtom = "X";
inline constexpr const char* kMulAtom = "μ";

struct SeedPair {
  Term x;
  Term mu;
};

// λ B. Path X (μ A B) (μ B A), abstracted over X, μ, A as schematic level 0.
const SeedPair& seeds();

struct GenState {
  std::size_t step = 0;
  std::vector<Term> sx;
  std::vector<Term> smu;
  std::vector<Term> x_env;
  std::vector<Term> mu_env;
  // Names of all nonempty subsets of the letters consumed so far, in batch order.
  std::vector<std::string> alpha_gen;
  std::string alphabet = kDefaultAlphabet;
};

GenState initial_state(std::string alphabet = kDefaultAlphabet);

// New letter first, then each earlier subset with the new letter appended.
std::vector<std::string> batch_names(std::size_t step, const std::vector<std::string>& alpha_gen,
                                     const std::string& alphabet = kDefaultAlphabet);
std::vector<Term> batch_letters(std::size_t step, const std::vector<std::string>& alpha_gen,
                                const std::string& alphabet = kDefaultAlphabet);

struct AdvanceOptions {
  NormalizeOptions normalize;
  // Skip the décalage of the seeds (only useful when no further step follows).
  bool skip_decalage = false;
};

GenState advance(const GenState& state, const AdvanceOptions& opts = {});

struct GenerateOptions {
  NormalizeOptions normalize;
  std::string alphabet = kDefaultAlphabet;
};

Term simplex_type(std::size_t n, const GenerateOptions& opts = {});

// Moore lengths for every Path, PathP, Line and Comp node, validated against
// the per-axis extents of the letter cells.
Annotation annotate_lengths(const Term& t);

// Free letter atoms (everything except the space and multiplication atoms).
std::vector<std::string> letter_atoms(const Term& t);

}  // namespace permucoh

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "permucoh/generator.hpp"
#include "permucoh/term.hpp"

namespace permucoh {

class CheckError : public Error {
 public:
  using Error::Error;
};

enum class Side { Lo, Hi };

// Instantiated simplex types for every proper letter subset with at least two
// letters; singleton letters are points.
class LetterEnv {
 public:
  explicit LetterEnv(std::size_t letters, const GenerateOptions& opts = {});

  std::size_t letters() const { return letters_; }
  const std::string& alphabet() const { return alphabet_; }
  bool is_letter(const std::string& name) const;
  // Dimension of the cell named by a subset: |S| - 1.
  std::size_t dimension(const std::string& name) const;
  const Term& type_of(const std::string& name) const;

 private:
  std::size_t letters_;
  std::string alphabet_;
  std::map<std::string, Term> types_;
};

// simplex_type(|S|-1) with its letters renamed into S.
Term instantiate_subset_type(const std::string& subset, const GenerateOptions& opts = {});

// Sets free interval variable `ivar` of t to an endpoint.
Term face(const Term& t, std::size_t ivar, Side side, const LetterEnv& env);

// Endpoint of a path-valued term along its axis-th remaining axis (0 is the
// outermost one), resolving letter cells through their instantiated types.
Term endpoint_eval(const Term& t, std::size_t axis, Side side, const LetterEnv& env);

// Normal form modulo associativity: β, composites lifted out of lines,
// right-nested composites and products.
Term canonicalize(const Term& t);

struct Word {
  std::vector<Term> factors;
  std::string str() const;
  // Letters in order when every factor is a single letter, empty otherwise.
  std::string letters() const;
};

Word flatten_word(const Term& point);

struct Violation {
  std::string kind;
  std::string location;
  std::string expected;
  std::string found;
};

struct Corner {
  std::vector<Side> sides;
  std::string type_word;
  std::string endpoint_word;
};

struct CheckReport {
  std::size_t n = 0;
  std::size_t checks = 0;
  std::vector<Violation> violations;
  std::vector<Corner> corners;
  bool ok() const { return violations.empty(); }
};

CheckReport check_term(const Term& t, std::size_t n, const LetterEnv& env);
CheckReport check_formula(std::size_t n, const GenerateOptions& opts = {});

Word corner_word(std::size_t n, const std::vector<Side>& corner, const LetterEnv& env);
Word corner_word(const Term& t, std::size_t n, const std::vector<Side>& corner,
                 const LetterEnv& env);

struct CombinatoricsReport {
  std::size_t n = 0;
  std::size_t products = 0;
  std::size_t atoms = 0;
  std::size_t corners = 0;
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

CombinatoricsReport cross_check_combinatorics(std::size_t n, const GenerateOptions& opts = {});
CombinatoricsReport cross_check_combinatorics(const Term& t, std::size_t n, const LetterEnv& env);

}  // namespace permucoh

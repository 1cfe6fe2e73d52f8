#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "permucoh/term.hpp"

namespace permucoh {

enum class Format { Text, Latex, Sexp, Json };

std::optional<Format> parse_format(std::string_view name);
const char* format_name(Format f);

class PrintError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t offset)
      : Error(msg + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Per-node metadata laid out as a tree parallel to the term. `kids` is either
// empty (nothing annotated below) or has one entry per child of the node.
struct Annotation {
  std::optional<std::size_t> length;
  std::vector<Annotation> kids;
};

struct PrintOptions {
  Format format = Format::Text;
  // Text and latex only: one PathP per line in listing layout.
  bool listing = true;
  const Annotation* lengths = nullptr;
};

// Interval binder names by nesting depth: i, j, k, l, m, ...
std::string interval_name(std::size_t depth);

void pretty_print(std::ostream& out, const Term& t, const PrintOptions& opts = {});
std::string pretty_print(const Term& t, const PrintOptions& opts = {});
std::string to_sexp(const Term& t);

Term parse_sexp(std::string_view src);

}  // namespace permucoh

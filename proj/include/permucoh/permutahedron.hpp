#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "permucoh/term.hpp"

namespace permucoh {

class CombinatoricsError : public Error {
 public:
  using Error::Error;
};

using Rational = boost::rational<std::int64_t>;

// Accepts integers, fractions "p/q" and decimals "1.75", exactly.
Rational parse_rational(std::string_view s);
std::string format_rational(const Rational& r);

// k-th digit (0-based) is below k+1.
struct MixedRadixCode {
  std::vector<unsigned> digits;
  bool operator==(const MixedRadixCode&) const = default;
};

MixedRadixCode encode_permutation(std::string_view word);
std::string decode_permutation(const MixedRadixCode& code);

// Groups are kept sorted alphabetically.
struct OrderedPartition {
  std::vector<std::string> groups;
  std::size_t letters() const;
  std::string str() const;
  bool operator==(const OrderedPartition&) const = default;
};

OrderedPartition parse_partition(std::string_view s);

inline constexpr std::size_t kMaxFacetLetters = 10;

void for_each_facet(std::size_t n_letters, const std::function<void(const OrderedPartition&)>& fn);
std::vector<OrderedPartition> enumerate_facets(std::size_t n_letters);

struct Coord {
  bool open = false;
  int lo = 0;  // the pinned value when !open
  int hi = 0;
  static Coord pin(int v) { return {false, v, v}; }
  static Coord interval(int lo, int hi) { return {true, lo, hi}; }
  bool operator==(const Coord&) const = default;
};

struct Region {
  std::vector<Coord> coords;
  std::size_t dimension() const;
  std::string str() const;
  bool operator==(const Region&) const = default;
};

using RationalPoint = std::vector<Rational>;

Region region_of(const OrderedPartition& facet);
OrderedPartition locate(const RationalPoint& p);
bool member(const Region& r, const RationalPoint& p);
bool regions_intersect(const Region& a, const Region& b);

struct PartitionReport {
  std::size_t letters = 0;
  std::int64_t denominator = 0;
  std::size_t facets = 0;
  std::uint64_t pairs_checked = 0;
  std::uint64_t grid_points = 0;
  std::uint64_t located = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

inline constexpr std::size_t kMaxVerifyLetters = 6;

PartitionReport verify_partition(std::size_t n_letters, std::int64_t denominator = 2);

// SVG for 3 letters (one rectangle) or 4 letters (six face panels).
std::string emit_layout(std::size_t n_letters);

}  // namespace permucoh

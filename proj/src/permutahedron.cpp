#include "permucoh/permutahedron.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <sstream>

namespace permucoh {

namespace {

constexpr const char* kLetters = "ABCDEFGHIJKLMNOPQRSTUVWXYZ";

char letter_at(std::size_t i) { return kLetters[i]; }

std::size_t letter_index(char c) {
  if (c < 'A' || c > 'Z') throw CombinatoricsError(std::string("not a letter: '") + c + "'");
  return static_cast<std::size_t>(c - 'A');
}

}  // namespace

Rational parse_rational(std::string_view s) {
  auto fail = [&s]() -> Rational {
    throw CombinatoricsError("not a rational number: '" + std::string(s) + "'");
  };
  if (s.empty()) fail();
  std::size_t pos = 0;
  bool neg = false;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    pos = 1;
  }
  auto digits = [&](std::int64_t& v, std::int64_t& scale) {
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      if (v > (std::numeric_limits<std::int64_t>::max() - 9) / 10) fail();
      v = v * 10 + (s[pos] - '0');
      scale *= 10;
      if (scale > std::numeric_limits<std::int64_t>::max() / 10) fail();
      ++pos;
    }
    return pos > start;
  };
  std::int64_t num = 0, unused = 1;
  bool had_int = digits(num, unused);
  Rational r(num);
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    std::int64_t frac = 0, scale = 1;
    bool had_frac = digits(frac, scale);
    if (!had_int && !had_frac) fail();
    r += Rational(frac, scale);
  } else if (pos < s.size() && s[pos] == '/') {
    if (!had_int) fail();
    ++pos;
    std::int64_t den = 0, scale2 = 1;
    if (!digits(den, scale2) || den == 0) fail();
    r = Rational(num, den);
  } else if (!had_int) {
    fail();
  }
  if (pos != s.size()) fail();
  return neg ? -r : r;
}

std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

void check_word(std::string_view word) {
  std::vector<bool> seen(word.size(), false);
  for (char c : word) {
    std::size_t k = letter_index(c);
    if (k >= word.size())
      throw CombinatoricsError(std::string("letter ") + c + " outside the first " +
                               std::to_string(word.size()) + " letters");
    if (seen[k]) throw CombinatoricsError(std::string("repeated letter ") + c);
    seen[k] = true;
  }
}

}  // namespace

MixedRadixCode encode_permutation(std::string_view word) {
  check_word(word);
  std::size_t n = word.size();
  MixedRadixCode code;
  for (std::size_t k = 0; k < n; ++k) {
    char x = letter_at(n - 1 - k);
    unsigned pos = 0;
    for (char c : word) {
      if (c == x) break;
      if (c > x) ++pos;
    }
    code.digits.push_back(pos);
  }
  return code;
}

std::string decode_permutation(const MixedRadixCode& code) {
  std::size_t n = code.digits.size();
  if (n > 26) throw CombinatoricsError("code longer than the alphabet");
  std::string word;
  for (std::size_t k = 0; k < n; ++k) {
    if (code.digits[k] > k)
      throw CombinatoricsError("digit " + std::to_string(k) + " is " +
                               std::to_string(code.digits[k]) + ", must be at most " +
                               std::to_string(k));
    word.insert(word.begin() + code.digits[k], letter_at(n - 1 - k));
  }
  return word;
}

std::size_t OrderedPartition::letters() const {
  std::size_t n = 0;
  for (const std::string& g : groups) n += g.size();
  return n;
}

std::string OrderedPartition::str() const {
  std::string out;
  for (const std::string& g : groups) out += "[" + g + "]";
  return out;
}

OrderedPartition parse_partition(std::string_view s) {
  OrderedPartition p;
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (s[pos] != '[') throw CombinatoricsError("expected '[' in " + std::string(s));
    std::size_t close = s.find(']', pos);
    if (close == std::string_view::npos || close == pos + 1)
      throw CombinatoricsError("empty or unterminated group in " + std::string(s));
    std::string g(s.substr(pos + 1, close - pos - 1));
    for (char c : g) letter_index(c);
    std::sort(g.begin(), g.end());
    p.groups.push_back(std::move(g));
    pos = close + 1;
  }
  std::string all;
  for (const std::string& g : p.groups) all += g;
  check_word(all);
  return p;
}

namespace {

void facets_rec(const std::string& rest, std::size_t groups_left, OrderedPartition& cur,
                const std::function<void(const OrderedPartition&)>& fn) {
  if (groups_left == 1) {
    cur.groups.push_back(rest);
    fn(cur);
    cur.groups.pop_back();
    return;
  }
  std::vector<std::string> firsts;
  std::size_t r = rest.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << r); ++mask) {
    std::size_t taken = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (r - taken < groups_left - 1) continue;
    std::string g;
    for (std::size_t b = 0; b < r; ++b)
      if (mask & (std::size_t{1} << b)) g += rest[b];
    firsts.push_back(std::move(g));
  }
  std::sort(firsts.begin(), firsts.end());
  for (const std::string& g : firsts) {
    std::string left;
    for (char c : rest)
      if (g.find(c) == std::string::npos) left += c;
    cur.groups.push_back(g);
    facets_rec(left, groups_left - 1, cur, fn);
    cur.groups.pop_back();
  }
}

}  // namespace

void for_each_facet(std::size_t n_letters, const std::function<void(const OrderedPartition&)>& fn) {
  if (n_letters < 1 || n_letters > kMaxFacetLetters)
    throw CombinatoricsError("facet enumeration supports 1 to " +
                             std::to_string(kMaxFacetLetters) + " letters, got " +
                             std::to_string(n_letters));
  std::string all(kLetters, n_letters);
  OrderedPartition cur;
  for (std::size_t m = 1; m <= n_letters; ++m) facets_rec(all, m, cur, fn);
}

std::vector<OrderedPartition> enumerate_facets(std::size_t n_letters) {
  std::vector<OrderedPartition> out;
  for_each_facet(n_letters, [&out](const OrderedPartition& p) { out.push_back(p); });
  return out;
}

std::size_t Region::dimension() const {
  return static_cast<std::size_t>(std::count_if(coords.begin(), coords.end(),
                                                [](const Coord& c) { return c.open; }));
}

std::string Region::str() const {
  if (coords.empty()) return "()";
  std::string out;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) out += "×";
    const Coord& c = coords[i];
    if (c.open)
      out += "(" + std::to_string(c.lo) + "," + std::to_string(c.hi) + ")";
    else
      out += "{" + std::to_string(c.lo) + "}";
  }
  return out;
}

Region region_of(const OrderedPartition& facet) {
  std::string all;
  for (const std::string& g : facet.groups) {
    if (g.empty()) throw CombinatoricsError("empty group in " + facet.str());
    all += g;
  }
  check_word(all);
  std::size_t n = all.size();
  Region r;
  for (std::size_t k = 1; k < n; ++k) {
    char x = letter_at(n - 1 - k);
    int prefix = 0;
    for (const std::string& g : facet.groups) {
      int restricted = static_cast<int>(std::count_if(g.begin(), g.end(), [x](char c) {
        return c >= x;
      }));
      if (g.find(x) != std::string::npos) {
        if (restricted == 1)
          r.coords.push_back(Coord::pin(prefix));
        else
          r.coords.push_back(Coord::interval(prefix, prefix + restricted - 1));
        break;
      }
      prefix += restricted;
    }
  }
  return r;
}

OrderedPartition locate(const RationalPoint& p) {
  std::size_t n = p.size();
  if (n + 1 > 26) throw CombinatoricsError("point has too many coordinates");
  OrderedPartition f;
  f.groups.push_back(std::string(1, letter_at(n)));
  for (std::size_t k = 1; k <= n; ++k) {
    const Rational& c = p[k - 1];
    if (c < Rational(0) || c > Rational(static_cast<std::int64_t>(k)))
      throw CombinatoricsError("coordinate " + std::to_string(k) + " = " + format_rational(c) +
                               " outside [0," + std::to_string(k) + "]");
    char x = letter_at(n - k);
    std::int64_t sum = 0;
    bool placed = false;
    for (std::size_t l = 0; l <= f.groups.size() && !placed; ++l) {
      if (c == Rational(sum)) {
        f.groups.insert(f.groups.begin() + static_cast<std::ptrdiff_t>(l), std::string(1, x));
        placed = true;
        break;
      }
      if (l == f.groups.size()) break;
      std::int64_t next = sum + static_cast<std::int64_t>(f.groups[l].size());
      if (c > Rational(sum) && c < Rational(next)) {
        std::string& g = f.groups[l];
        g.insert(g.begin(), x);
        placed = true;
      }
      sum = next;
    }
    if (!placed) throw CombinatoricsError("could not place coordinate " + std::to_string(k));
  }
  return f;
}

bool member(const Region& r, const RationalPoint& p) {
  if (r.coords.size() != p.size())
    throw CombinatoricsError("dimension mismatch between region and point");
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Coord& c = r.coords[i];
    if (c.open) {
      if (!(p[i] > Rational(c.lo) && p[i] < Rational(c.hi))) return false;
    } else if (p[i] != Rational(c.lo)) {
      return false;
    }
  }
  return true;
}

bool regions_intersect(const Region& a, const Region& b) {
  if (a.coords.size() != b.coords.size())
    throw CombinatoricsError("dimension mismatch between regions");
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    const Coord& x = a.coords[i];
    const Coord& y = b.coords[i];
    bool meet;
    if (!x.open && !y.open)
      meet = x.lo == y.lo;
    else if (!x.open)
      meet = y.lo < x.lo && x.lo < y.hi;
    else if (!y.open)
      meet = x.lo < y.lo && y.lo < x.hi;
    else
      meet = std::max(x.lo, y.lo) < std::min(x.hi, y.hi);
    if (!meet) return false;
  }
  return true;
}

PartitionReport verify_partition(std::size_t n_letters, std::int64_t denominator) {
  if (n_letters < 1 || n_letters > kMaxVerifyLetters)
    throw CombinatoricsError("partition verification supports 1 to " +
                             std::to_string(kMaxVerifyLetters) + " letters, got " +
                             std::to_string(n_letters));
  if (denominator < 1) throw CombinatoricsError("denominator must be positive");
  PartitionReport rep;
  rep.letters = n_letters;
  rep.denominator = denominator;
  std::vector<OrderedPartition> facets = enumerate_facets(n_letters);
  rep.facets = facets.size();
  std::vector<Region> regions;
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < facets.size(); ++i) {
    regions.push_back(region_of(facets[i]));
    index.emplace(facets[i].str(), i);
    if (regions.back().dimension() != n_letters - facets[i].groups.size())
      rep.violations.push_back("dimension of " + facets[i].str() + " is " +
                               std::to_string(regions.back().dimension()));
  }
  for (std::size_t i = 0; i < regions.size(); ++i)
    for (std::size_t j = i + 1; j < regions.size(); ++j) {
      ++rep.pairs_checked;
      if (regions_intersect(regions[i], regions[j]))
        rep.violations.push_back("regions of " + facets[i].str() + " and " + facets[j].str() +
                                 " overlap");
    }

  std::size_t n = n_letters - 1;
  std::vector<std::int64_t> num(n, 0);
  RationalPoint p(n);
  for (;;) {
    for (std::size_t k = 0; k < n; ++k) p[k] = Rational(num[k], denominator);
    ++rep.grid_points;
    std::string where = "(";
    for (std::size_t k = 0; k < n; ++k) where += (k ? "," : "") + format_rational(p[k]);
    where += ")";
    std::size_t containing = 0;
    std::size_t found = regions.size();
    for (std::size_t i = 0; i < regions.size(); ++i)
      if (member(regions[i], p)) {
        ++containing;
        found = i;
      }
    try {
      OrderedPartition f = locate(p);
      auto it = index.find(f.str());
      if (it == index.end()) {
        rep.violations.push_back("locate" + where + " returned unknown facet " + f.str());
      } else if (!member(regions[it->second], p)) {
        rep.violations.push_back("locate" + where + " = " + f.str() + " does not contain it");
      } else if (containing != 1 || found != it->second) {
        rep.violations.push_back("point " + where + " lies in " + std::to_string(containing) +
                                 " regions");
      } else {
        ++rep.located;
      }
    } catch (const Error& e) {
      rep.violations.push_back("locate" + where + " failed: " + e.what());
    }
    std::size_t k = 0;
    while (k < n) {
      if (num[k] < static_cast<std::int64_t>(k + 1) * denominator) {
        ++num[k];
        break;
      }
      num[k] = 0;
      ++k;
    }
    if (k == n) break;
  }
  return rep;
}

namespace {

struct Canvas {
  std::ostringstream out;
  double unit;
};

double centre(const Coord& c) { return c.open ? (c.lo + c.hi) / 2.0 : c.lo; }

// Draws one cell whose two visible coordinates are `v` (down) and `h` (across).
void draw_cell(std::ostream& out, const OrderedPartition& f, const Region& r, const Coord& v,
               const Coord& h, double unit, double ox, double oy) {
  std::size_t dim = (v.open ? 1 : 0) + (h.open ? 1 : 0);
  out << "  <g class=\"cell\" data-label=\"" << f.str() << "\" data-dim=\"" << dim
      << "\" data-region=\"" << r.str() << "\">\n";
  double x0 = ox + h.lo * unit, x1 = ox + h.hi * unit;
  double y0 = oy + v.lo * unit, y1 = oy + v.hi * unit;
  if (dim == 2) {
    out << "    <rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << x1 - x0
        << "\" height=\"" << y1 - y0 << "\" fill=\"#eef3fb\" stroke=\"none\"/>\n";
  } else if (dim == 1) {
    out << "    <line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x1 << "\" y2=\"" << y1
        << "\" stroke=\"#333\" stroke-width=\"2\"/>\n";
  } else {
    out << "    <circle cx=\"" << x0 << "\" cy=\"" << y0 << "\" r=\"4\" fill=\"#333\"/>\n";
  }
  double tx = ox + centre(h) * unit, ty = oy + centre(v) * unit;
  double size = dim == 2 ? 14 : dim == 1 ? 11 : 9;
  if (dim == 1 && !v.open) ty -= 5;
  if (dim == 1 && !h.open) tx += 5;
  if (dim == 0) {
    tx += 6;
    ty -= 6;
  }
  out << "    <text x=\"" << tx << "\" y=\"" << ty << "\" font-size=\"" << size
      << "\" font-family=\"monospace\" text-anchor=\"" << (dim == 1 && !h.open ? "start" : "middle")
      << "\">" << f.str() << "</text>\n";
  out << "  </g>\n";
}

void draw_panel(std::ostream& out, const std::vector<OrderedPartition>& facets,
                const std::vector<Region>& regions, std::size_t vert, std::size_t horiz,
                double unit, double ox, double oy) {
  for (std::size_t want : {2u, 1u, 0u})
    for (std::size_t i = 0; i < facets.size(); ++i) {
      const Coord& v = regions[i].coords[vert];
      const Coord& h = regions[i].coords[horiz];
      if ((v.open ? 1u : 0u) + (h.open ? 1u : 0u) != want) continue;
      draw_cell(out, facets[i], regions[i], v, h, unit, ox, oy);
    }
}

}  // namespace

std::string emit_layout(std::size_t n_letters) {
  if (n_letters != 3 && n_letters != 4)
    throw CombinatoricsError("layout is available for 3 or 4 letters, got " +
                             std::to_string(n_letters));
  std::vector<OrderedPartition> all = enumerate_facets(n_letters);
  std::ostringstream out;
  const double margin = 70;
  if (n_letters == 3) {
    const double unit = 170;
    std::vector<OrderedPartition> facets = all;
    std::vector<Region> regions;
    for (const OrderedPartition& f : facets) regions.push_back(region_of(f));
    double w = 2 * unit + 2 * margin, h = unit + 2 * margin;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w
        << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n"
        << "  <desc>Regions of the 3-permutahedron in [0,1]x[0,2]; coordinate 1 runs down, "
           "coordinate 2 runs across.</desc>\n";
    draw_panel(out, facets, regions, 0, 1, unit, margin, margin);
    out << "</svg>\n";
    return out.str();
  }

  const double unit = 80;
  const double cell_w = 3 * unit + 2 * margin;
  const double cell_h = 2 * unit + 2 * margin;
  double w = 3 * cell_w, h = 2 * cell_h;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w
      << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n"
      << "  <desc>Boundary regions of the 4-permutahedron on the six faces of "
         "[0,1]x[0,2]x[0,3]; in each panel the smaller free coordinate runs down.</desc>\n";
  std::size_t slot = 0;
  for (std::size_t axis = 0; axis < 3; ++axis)
    for (int value : {0, static_cast<int>(axis) + 1}) {
      std::vector<OrderedPartition> facets;
      std::vector<Region> regions;
      for (const OrderedPartition& f : all) {
        Region r = region_of(f);
        if (!r.coords[axis].open && r.coords[axis].lo == value) {
          facets.push_back(f);
          regions.push_back(r);
        }
      }
      std::size_t free1 = axis == 0 ? 1 : 0;
      std::size_t free2 = axis == 2 ? 1 : 2;
      double ox = static_cast<double>(slot % 3) * cell_w + margin;
      double oy = static_cast<double>(slot / 3) * cell_h + margin;
      std::string face = "c" + std::to_string(axis + 1) + "=" + std::to_string(value);
      out << " <g class=\"panel\" data-face=\"" << face << "\">\n"
          << "  <text x=\"" << ox << "\" y=\"" << oy - 35
          << "\" font-size=\"15\" font-family=\"sans-serif\">" << face << "  (down: c"
          << free1 + 1 << ", across: c" << free2 + 1 << ")</text>\n";
      draw_panel(out, facets, regions, free1, free2, unit, ox, oy);
      out << " </g>\n";
      ++slot;
    }
  out << "</svg>\n";
  return out.str();
}

}  // namespace permucoh

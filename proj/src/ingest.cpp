#include "ovshift/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <cmath>
#include <string>

#include <json.hpp>

#include "ovshift/errors.hpp"

namespace ovshift {

namespace {

using boost::multiprecision::cpp_int;

cpp_int pow10(unsigned e) {
  cpp_int r = 1;
  for (unsigned k = 0; k < e; ++k) r *= 10;
  return r;
}

cpp_int floor_int(const Rational& x) {
  const cpp_int num = boost::multiprecision::numerator(x);
  const cpp_int den = boost::multiprecision::denominator(x);
  cpp_int q = num / den;
  if (num < 0 && q * den != num) --q;
  return q;
}

bool is_integer(const Rational& x) { return boost::multiprecision::denominator(x) == 1; }

const Rational& tie_epsilon() {
  static const Rational eps(cpp_int(1), pow10(12));
  return eps;
}

bool near_tie(const Rational& x) {
  const Rational a = abs(x);
  return a != 0 && a < tie_epsilon();
}

std::string show(const Rational& x) {
  return std::to_string(static_cast<double>(x));
}

}  // namespace

Rational parse_decimal(std::string_view text) {
  std::size_t k = 0;
  bool negative = false;
  if (k < text.size() && (text[k] == '-' || text[k] == '+')) negative = text[k++] == '-';
  cpp_int mantissa = 0;
  int scale = 0;
  bool digits = false;
  for (; k < text.size() && std::isdigit(static_cast<unsigned char>(text[k])); ++k, digits = true)
    mantissa = mantissa * 10 + (text[k] - '0');
  if (k < text.size() && text[k] == '.') {
    for (++k; k < text.size() && std::isdigit(static_cast<unsigned char>(text[k])); ++k, digits = true) {
      mantissa = mantissa * 10 + (text[k] - '0');
      --scale;
    }
  }
  if (!digits) throw ParseError("", "not a decimal number: '" + std::string(text) + "'");
  if (k < text.size() && (text[k] == 'e' || text[k] == 'E')) {
    int exponent = 0;
    auto [ptr, ec] = std::from_chars(text.data() + k + 1 + (k + 1 < text.size() && text[k + 1] == '+'),
                                     text.data() + text.size(), exponent);
    if (ec != std::errc() || ptr != text.data() + text.size())
      throw ParseError("", "bad exponent in '" + std::string(text) + "'");
    scale += exponent;
    k = text.size();
  }
  if (k != text.size()) throw ParseError("", "trailing characters in '" + std::string(text) + "'");
  Rational r = scale >= 0 ? Rational(mantissa * pow10(scale)) : Rational(mantissa, pow10(-scale));
  return negative ? -r : r;
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw ParseError("", "non-finite number");
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return parse_decimal(std::string_view(buf, static_cast<std::size_t>(ptr - buf)));
}

CircleMap::CircleMap(std::vector<AffinePiece> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw ValidationError("circle map has no pieces");
  std::sort(pieces_.begin(), pieces_.end(),
            [](const AffinePiece& a, const AffinePiece& b) { return a.from < b.from; });
  if (pieces_.front().from != 0) throw ValidationError("circle map pieces must start at 0");
  if (pieces_.back().to != 1) throw ValidationError("circle map pieces must end at 1");
  shift_.assign(pieces_.size(), 0);
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    const auto& p = pieces_[k];
    if (p.to <= p.from) throw ValidationError("circle map piece " + std::to_string(k + 1) + " is empty");
    if (p.slope == 0) throw ValidationError("circle map piece " + std::to_string(k + 1) + " has zero slope");
    if (k + 1 == pieces_.size()) break;
    const auto& q = pieces_[k + 1];
    if (q.from != p.to)
      throw ValidationError("circle map pieces " + std::to_string(k + 1) + " and " + std::to_string(k + 2) +
                            " do not tile [0,1)");
    const Rational jump = p.slope * p.to + p.intercept - (q.slope * p.to + q.intercept);
    if (!is_integer(jump))
      throw ValidationError("circle map is discontinuous at " + show(p.to));
    shift_[k + 1] = shift_[k] + jump;
  }
  const auto& last = pieces_.back();
  degree_ = last.slope + last.intercept + shift_.back() - pieces_.front().intercept;
  if (!is_integer(degree_)) throw ValidationError("circle map is discontinuous at 0");
}

Rational CircleMap::lift(const Rational& x) const {
  const cpp_int q = floor_int(x);
  const Rational r = x - Rational(q);
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), r,
                             [](const Rational& v, const AffinePiece& p) { return v < p.from; });
  const std::size_t k = static_cast<std::size_t>(it - pieces_.begin()) - 1;
  return pieces_[k].slope * r + pieces_[k].intercept + shift_[k] + Rational(q) * degree_;
}

std::pair<Rational, Rational> CircleMap::image(const Rational& a, const Rational& b) const {
  Rational lo = lift(a), hi = lo;
  auto take = [&](const Rational& x) {
    const Rational y = lift(x);
    if (y < lo) lo = y;
    if (y > hi) hi = y;
  };
  take(b);
  for (cpp_int q = floor_int(a); q <= floor_int(b); ++q)
    for (const auto& p : pieces_) {
      const Rational x = p.from + Rational(q);
      if (x > a && x < b) take(x);
    }
  return {lo, hi};
}

Arc make_arc(const Rational& a, const Rational& b) {
  const Rational length = b - a;
  if (length <= 0 || length >= 1)
    throw ValidationError("arc [" + show(a) + ", " + show(b) + "] must have length in (0, 1)");
  return {a - Rational(floor_int(a)), length};
}

bool arcs_intersect(const Arc& a, const Arc& b) {
  // Starts lie in [0,1) and lengths below 1, so shifts of -1, 0, 1 suffice.
  Rational best;
  for (int k = -1; k <= 1; ++k) {
    const Rational s = b.start + k, e = b.end() + k;
    const Rational gap = std::max(a.start, s) - std::min(a.end(), e);
    if (k == -1 || gap < best) best = gap;
  }
  if (near_tie(best)) throw DegenerateCover("arc intersection is within 1e-12 of a tie");
  return best <= 0;
}

TIGraph ti_from_circle(const CircleMap& map, const IntervalCover& cover, const Rational& margin) {
  if (margin < 0) throw ValidationError("margin must be nonnegative");
  const auto& arcs = cover.arcs;
  const std::size_t n = arcs.size();
  if (n == 0) throw ValidationError("interval cover is empty");
  std::vector<Edge> t_edges, i_edges;
  for (Vertex i = 0; i < n; ++i) {
    const auto [lo, hi] = map.image(arcs[i].start, arcs[i].end());
    for (Vertex j = 0; j < n; ++j) {
      const Rational a = arcs[j].start - margin, b = arcs[j].end() + margin;
      bool first = true;
      Rational best;
      for (cpp_int k = floor_int(lo - b) - 1; k <= floor_int(hi - a) + 1; ++k) {
        const Rational s = std::min(a + Rational(k) - lo, hi - (b + Rational(k)));
        if (first || s > best) best = s;
        first = false;
      }
      if (near_tie(best))
        throw DegenerateCover("covering test N" + std::to_string(i + 1) + " -> N" + std::to_string(j + 1) +
                              " is within 1e-12 of a tie");
      if (best >= 0) t_edges.emplace_back(i, j);
    }
    for (Vertex j = i + 1; j < n; ++j)
      if (arcs_intersect(arcs[i], arcs[j])) i_edges.emplace_back(i, j);
  }
  return TIGraph(Digraph(n, t_edges), UGraph(n, i_edges));
}

namespace {

using nlohmann::json;

Rational number_at(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(cpp_int(v.get<long long>()));
  if (v.is_number()) return rational_from_double(v.get<double>());
  if (v.is_string()) {
    try {
      return parse_decimal(v.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(where, e.what());
    }
  }
  throw ParseError(where, "expected a number");
}

std::pair<Rational, Rational> pair_at(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) throw ParseError(where, "expected [a, b]");
  return {number_at(v[0], where + "/0"), number_at(v[1], where + "/1")};
}

}  // namespace

CircleSpec parse_circle_spec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), "malformed JSON");
  }
  if (!doc.is_object()) throw ParseError("/", "expected an object");
  for (const auto& key : {"pieces", "intervals"})
    if (!doc.contains(key) || !doc[key].is_array()) throw ParseError(std::string("/") + key, "expected an array");
  for (const auto& [key, value] : doc.items())
    if (key != "pieces" && key != "intervals" && key != "margin") throw ParseError("/" + key, "unknown field");

  std::vector<AffinePiece> pieces;
  for (std::size_t k = 0; k < doc["pieces"].size(); ++k) {
    const auto& p = doc["pieces"][k];
    const std::string where = "/pieces/" + std::to_string(k);
    if (!p.is_object() || !p.contains("from") || !p.contains("slope") || !p.contains("intercept"))
      throw ParseError(where, "expected {\"from\":[a,b],\"slope\":s,\"intercept\":c}");
    const auto [from, to] = pair_at(p["from"], where + "/from");
    pieces.push_back({from, to, number_at(p["slope"], where + "/slope"),
                      number_at(p["intercept"], where + "/intercept")});
  }
  IntervalCover cover;
  for (std::size_t k = 0; k < doc["intervals"].size(); ++k) {
    const std::string where = "/intervals/" + std::to_string(k);
    const auto [a, b] = pair_at(doc["intervals"][k], where);
    try {
      cover.arcs.push_back(make_arc(a, b));
    } catch (const ValidationError& e) {
      throw ValidationError(where + ": " + e.what());
    }
  }
  Rational margin = 0;
  if (doc.contains("margin")) margin = number_at(doc["margin"], "/margin");
  return {CircleMap(std::move(pieces)), std::move(cover), margin};
}

}  // namespace ovshift

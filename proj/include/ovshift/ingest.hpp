#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ovshift/graph.hpp"

namespace ovshift {

using Rational = boost::multiprecision::cpp_rational;

/// Parses a decimal literal ("-0.35", "1e-3", "7") exactly.
Rational parse_decimal(std::string_view text);
/// Exact value of the shortest decimal that round-trips to `x`.
Rational rational_from_double(double x);

/// x -> slope*x + intercept (mod 1) on [from, to).
struct AffinePiece {
  Rational from, to, slope, intercept;
};

/// Piecewise-affine circle map. The pieces tile [0,1) in order, and the map
/// is continuous mod 1, so it has a continuous lift F with F(x+1) = F(x) + degree.
class CircleMap {
 public:
  /// Throws ValidationError on gaps, zero slopes, or discontinuities.
  explicit CircleMap(std::vector<AffinePiece> pieces);

  const std::vector<AffinePiece>& pieces() const { return pieces_; }
  const Rational& degree() const { return degree_; }
  /// The continuous lift, defined on all of R.
  Rational lift(const Rational& x) const;
  /// Image of [a, b] under the lift (a <= b): [min F, max F].
  std::pair<Rational, Rational> image(const Rational& a, const Rational& b) const;

 private:
  std::vector<AffinePiece> pieces_;
  std::vector<Rational> shift_;  // integer offset of piece k's lift
  Rational degree_;
};

/// Closed arc of the circle, stored as start in [0,1) and length in (0,1).
struct Arc {
  Rational start, length;
  Rational end() const { return start + length; }
};

/// Normalizes [a, b] (b > a, b - a < 1) to an Arc. Throws ValidationError.
Arc make_arc(const Rational& a, const Rational& b);

struct IntervalCover {
  std::vector<Arc> arcs;
};

bool arcs_intersect(const Arc& a, const Arc& b);

/// T-edge i->j iff the lifted image of N_i contains a lift of N_j widened by
/// `margin` on each side; I-edge iff the arcs meet. Ties count as covering
/// and as meeting. Throws DegenerateCover when a decision comes within 1e-12
/// of a tie without being one.
TIGraph ti_from_circle(const CircleMap& map, const IntervalCover& cover, const Rational& margin = 0);

struct CircleSpec {
  CircleMap map;
  IntervalCover cover;
  Rational margin;
};

/// {"pieces":[{"from":[a,b],"slope":s,"intercept":c}],"intervals":[[a,b],...],"margin":m}
/// with "margin" optional. Throws ParseError or ValidationError.
CircleSpec parse_circle_spec(std::string_view json);

}  // namespace ovshift

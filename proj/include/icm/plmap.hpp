#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "icm/errors.hpp"
#include "icm/rational.hpp"

namespace icm {

inline constexpr std::size_t kDefaultBreakpointCap = 10'000'000;

// Closed subinterval [lo, hi] of the unit interval. lo == hi is allowed.
struct Interval {
  Rational lo;
  Rational hi;

  // Throws DomainError unless 0 <= lo <= hi <= 1.
  static Interval make(Rational lo, Rational hi);
  static Interval unit() { return {Rational(0), Rational(1)}; }

  bool degenerate() const { return lo == hi; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool interior_contains(const Rational& x) const { return lo < x && x < hi; }
  Rational length() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / Rational(2); }

  friend bool operator==(const Interval&, const Interval&) = default;
};

std::ostream& operator<<(std::ostream& os, const Interval& j);

struct Breakpoint {
  Rational x;
  Rational y;

  friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

// Piecewise-linear self-map of [0,1], stored in canonical form: x strictly
// increasing from 0 to 1, values in [0,1], every segment has nonzero slope and
// consecutive collinear segments are merged. Structural equality is therefore
// equality of maps.
class PLMap {
 public:
  // Validates and canonicalizes. Throws DomainError.
  static PLMap make(std::vector<Breakpoint> points);

  const std::vector<Breakpoint>& breakpoints() const { return pts_; }
  std::size_t segment_count() const { return pts_.size() - 1; }

  // Slope sign (+1 / -1) of segment i, i.e. over [x_i, x_{i+1}].
  int direction(std::size_t i) const { return pts_[i + 1].y > pts_[i].y ? 1 : -1; }

  // Index of the segment whose closed x-range contains x, preferring the
  // segment to the right at interior breakpoints.
  std::size_t segment_at(const Rational& x) const;

  Rational operator()(const Rational& x) const;

  friend bool operator==(const PLMap&, const PLMap&) = default;

 private:
  friend PLMap canonical_plmap(std::vector<Breakpoint> points);
  explicit PLMap(std::vector<Breakpoint> pts) : pts_(std::move(pts)) {}

  std::vector<Breakpoint> pts_;
};

inline PLMap make_plmap(std::vector<Breakpoint> points) { return PLMap::make(std::move(points)); }

enum class Extremum { max, min };

struct CriticalPoint {
  Rational x;
  Extremum kind;

  friend bool operator==(const CriticalPoint&, const CriticalPoint&) = default;
};

// Interior breakpoints where the slope changes sign, sorted.
struct CriticalSet {
  std::vector<CriticalPoint> points;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  bool contains(const Rational& x) const;
  std::vector<Rational> xs() const;
};

// Exact solution set of f(x) = x.
struct FixedSet {
  std::vector<Rational> isolated;
  std::vector<Interval> segments;

  bool empty() const { return isolated.empty() && segments.empty(); }
  bool contains(const Rational& x) const;
  // Smallest fixed point, if any.
  std::optional<Rational> least() const;

  friend bool operator==(const FixedSet&, const FixedSet&) = default;
};

FixedSet intersect(const FixedSet& a, const FixedSet& b);

PLMap identity_map();

// Symmetric n-tent map: breakpoints (i/n, i mod 2). Throws DomainError for n < 2.
PLMap tent(int n);

// Throws DomainError when x is outside [0,1].
Rational eval(const PLMap& f, const Rational& x);

CriticalSet critical_points(const PLMap& f);

// f ∘ g. Throws ResourceError if the result would exceed `cap` breakpoints.
PLMap compose(const PLMap& f, const PLMap& g, std::size_t cap = kDefaultBreakpointCap);

// f ∘ ... ∘ f (k times), k >= 1.
PLMap iterate(const PLMap& f, int k, std::size_t cap = kDefaultBreakpointCap);

// All x with f(x) = y, sorted.
std::vector<Rational> preimage_point(const PLMap& f, const Rational& y);

// Connected components of f^{-1}(J), sorted and pairwise disjoint.
std::vector<Interval> preimage_interval(const PLMap& f, const Interval& j);

// [min, max] of f over J.
Interval image(const PLMap& f, const Interval& j);

bool is_onto(const PLMap& f);

// True iff no critical point of f lies in the interior of J.
bool is_monotone(const PLMap& f, const Interval& j);

// Whether f|J : J -> K is an open map. Throws DomainError if f(J) is not
// contained in K.
bool is_open(const PLMap& f, const Interval& j, const Interval& k);

FixedSet fixed_points(const PLMap& f);

// Inverse of a PL homeomorphism of [0,1]. Throws DomainError otherwise.
PLMap inverse(const PLMap& h);

bool is_homeomorphism(const PLMap& h);

// h^{-1} ∘ f ∘ h.
PLMap conjugate(const PLMap& f, const PLMap& h);

// ".pwl" text format: one "X Y" pair per line, '#' comment lines.
PLMap read_pwl(std::istream& in);
PLMap read_pwl_file(const std::string& path);
void write_pwl(std::ostream& out, const PLMap& f);

std::ostream& operator<<(std::ostream& os, const PLMap& f);

}  // namespace icm

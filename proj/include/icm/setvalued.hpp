#pragma once

#include <iosfwd>
#include <vector>

#include "icm/plmap.hpp"
#include "icm/report.hpp"

namespace icm {

// Closed segment of the unit square with a <= b lexicographically. a == b
// encodes an isolated point.
struct Segment {
  Point a;
  Point b;

  static Segment make(Point p, Point q);
  bool is_point() const { return a == b; }
  bool contains(const Point& p) const;

  friend bool operator==(const Segment&, const Segment&) = default;
  friend auto operator<=>(const Segment& s, const Segment& t) {
    if (auto c = s.a <=> t.a; c != 0) return c;
    return s.b <=> t.b;
  }
};

// Closed subset of [0,1]^2 given as a finite union of segments, kept in a
// canonical form: collinear overlapping or touching segments are merged,
// points lying on a segment are dropped, and the result is sorted.
class SegmentSet {
 public:
  SegmentSet() = default;
  static SegmentSet from(std::vector<Segment> segments);

  const std::vector<Segment>& segments() const { return segs_; }
  std::size_t size() const { return segs_.size(); }
  bool empty() const { return segs_.empty(); }
  bool contains(const Point& p) const;

  friend bool operator==(const SegmentSet&, const SegmentSet&) = default;

 private:
  std::vector<Segment> segs_;
};

// Vertices (g(t), f(t)) for t running over the union of breakpoints of f and g.
std::vector<Point> forward_polyline(const PLMap& f, const PLMap& g);

// Graph of f∘g⁻¹, i.e. {(g(t), f(t)) : t in [0,1]}.
SegmentSet forward_graph(const PLMap& f, const PLMap& g);

// Graph of g⁻¹∘f, i.e. {(x, y) : g(y) = f(x)}.
SegmentSet pullback_graph(const PLMap& f, const PLMap& g);

// True iff every point of `inner` lies in `outer`.
bool covers(const SegmentSet& outer, const SegmentSet& inner);

// Point-set equality.
bool graphs_equal(const SegmentSet& a, const SegmentSet& b);

bool commute(const PLMap& f, const PLMap& g);
bool strongly_commute(const PLMap& f, const PLMap& g);

enum class FeatureKind { hat, end_hat, endpoint_a, endpoint_b };

const char* to_string(FeatureKind k);

struct GraphFeature {
  Point location;
  FeatureKind kind;

  friend bool operator==(const GraphFeature&, const GraphFeature&) = default;
};

// Points (c, y) of g⁻¹∘f with c critical for f and y not critical for g,
// sorted by location. End-hats are reported with kind end_hat.
std::vector<GraphFeature> hats(const PLMap& f, const PLMap& g);

// Endpoints of g⁻¹∘f (both types), sorted by location.
std::vector<GraphFeature> endpoints(const PLMap& f, const PLMap& g);

struct Profile {
  std::vector<int> hat_counts;       // h_1 .. h_n
  std::vector<int> endpoint_counts;  // e_0 .. e_n
  int total_hats = 0;
  int total_endpoints = 0;
  // e_0+h_1 >= 2, h_i+e_i+h_{i+1} >= 2 (1 <= i < n), h_n+e_n >= 2, in that
  // order. Empty when f has no critical points.
  std::vector<bool> inequalities;

  bool inequalities_hold() const;
};

// Throws PreconditionError unless both maps are onto.
Profile profile(const PLMap& f, const PLMap& g);

// Consequences of strong commutation, one named check per item.
// Throws PreconditionError if the pair does not strongly commute.
Report verify_strong_consequences(const PLMap& f, const PLMap& g);

// CSV with header "x1,y1,x2,y2", one segment per row.
void write_csv(std::ostream& out, const SegmentSet& s);
SegmentSet read_csv(std::istream& in);

}  // namespace icm

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "geometry.hpp"
#include "icm/errors.hpp"
#include "icm/setvalued.hpp"

namespace icm {

namespace detail {

void cut_points(const Segment& s, const Segment& o, std::vector<Point>& out) {
  if (s.is_point()) return;
  if (o.is_point()) {
    if (s.contains(o.a)) out.push_back(o.a);
    return;
  }
  const Rational d1x = s.b.x - s.a.x, d1y = s.b.y - s.a.y;
  const Rational d2x = o.b.x - o.a.x, d2y = o.b.y - o.a.y;
  const Rational ex = o.a.x - s.a.x, ey = o.a.y - s.a.y;
  const Rational denom = cross(d1x, d1y, d2x, d2y);
  if (denom.is_zero()) {
    if (!cross(ex, ey, d1x, d1y).is_zero()) return;
    if (s.contains(o.a)) out.push_back(o.a);
    if (s.contains(o.b)) out.push_back(o.b);
    return;
  }
  const Rational t = cross(ex, ey, d2x, d2y) / denom;
  const Rational u = cross(ex, ey, d1x, d1y) / denom;
  if (t.sign() < 0 || Rational(1) < t || u.sign() < 0 || Rational(1) < u) return;
  out.push_back({s.a.x + t * d1x, s.a.y + t * d1y});
}

}  // namespace detail

namespace {

struct LineKey {
  bool vertical;
  Rational slope;      // unused when vertical
  Rational intercept;  // x-coordinate when vertical

  friend bool operator==(const LineKey&, const LineKey&) = default;
  friend auto operator<=>(const LineKey& a, const LineKey& b) {
    if (a.vertical != b.vertical) return a.vertical ? std::strong_ordering::greater : std::strong_ordering::less;
    if (auto c = a.slope <=> b.slope; c != 0) return c;
    return a.intercept <=> b.intercept;
  }
};

LineKey line_of(const Segment& s) {
  if (s.a.x == s.b.x) return {true, Rational(0), s.a.x};
  Rational slope = (s.b.y - s.a.y) / (s.b.x - s.a.x);
  Rational intercept = s.a.y - slope * s.a.x;
  return {false, std::move(slope), std::move(intercept)};
}

Point at(const LineKey& k, const Rational& t) {
  if (k.vertical) return {k.intercept, t};
  return {t, k.slope * t + k.intercept};
}

Rational read_rational(const std::string& field, std::size_t line) {
  try {
    return Rational::parse(field);
  } catch (const std::exception&) {
    throw ParseError(line, "not a rational literal: '" + field + "'");
  }
}

}  // namespace

Segment Segment::make(Point p, Point q) {
  if (q < p) std::swap(p, q);
  return {std::move(p), std::move(q)};
}

bool Segment::contains(const Point& p) const {
  if (is_point()) return p == a;
  return detail::orient(a, b, p).is_zero() && a <= p && p <= b;
}

SegmentSet SegmentSet::from(std::vector<Segment> segments) {
  std::map<LineKey, std::vector<std::pair<Rational, Rational>>> lines;
  std::vector<Point> points;
  for (auto& s : segments) {
    if (s.b < s.a) std::swap(s.a, s.b);
    if (s.is_point()) {
      points.push_back(s.a);
      continue;
    }
    const LineKey key = line_of(s);
    if (key.vertical) lines[key].emplace_back(s.a.y, s.b.y);
    else lines[key].emplace_back(s.a.x, s.b.x);
  }

  SegmentSet out;
  for (auto& [key, spans] : lines) {
    std::sort(spans.begin(), spans.end());
    Rational lo = spans.front().first, hi = spans.front().second;
    for (std::size_t i = 1; i <= spans.size(); ++i) {
      if (i < spans.size() && spans[i].first <= hi) {
        if (hi < spans[i].second) hi = spans[i].second;
        continue;
      }
      out.segs_.push_back({at(key, lo), at(key, hi)});
      if (i < spans.size()) {
        lo = spans[i].first;
        hi = spans[i].second;
      }
    }
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  const std::size_t proper = out.segs_.size();
  for (auto& p : points) {
    const bool covered = std::any_of(out.segs_.begin(), out.segs_.begin() + static_cast<std::ptrdiff_t>(proper),
                                     [&](const Segment& s) { return s.contains(p); });
    if (!covered) out.segs_.push_back({p, p});
  }
  std::sort(out.segs_.begin(), out.segs_.end());
  return out;
}

bool SegmentSet::contains(const Point& p) const {
  return std::any_of(segs_.begin(), segs_.end(), [&](const Segment& s) { return s.contains(p); });
}

bool covers(const SegmentSet& outer, const SegmentSet& inner) {
  std::vector<Point> cuts;
  for (const auto& s : inner.segments()) {
    if (s.is_point()) {
      if (!outer.contains(s.a)) return false;
      continue;
    }
    cuts.assign({s.a, s.b});
    for (const auto& o : outer.segments()) detail::cut_points(s, o, cuts);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      if (!outer.contains(cuts[i])) return false;
      if (i + 1 < cuts.size()) {
        const Point mid{(cuts[i].x + cuts[i + 1].x) / Rational(2), (cuts[i].y + cuts[i + 1].y) / Rational(2)};
        if (!outer.contains(mid)) return false;
      }
    }
  }
  return true;
}

bool graphs_equal(const SegmentSet& a, const SegmentSet& b) {
  if (a == b) return true;
  return covers(a, b) && covers(b, a);
}

void write_csv(std::ostream& out, const SegmentSet& s) {
  out << "x1,y1,x2,y2\n";
  for (const auto& seg : s.segments())
    out << seg.a.x.str() << ',' << seg.a.y.str() << ',' << seg.b.x.str() << ',' << seg.b.y.str() << '\n';
}

SegmentSet read_csv(std::istream& in) {
  std::string line;
  std::size_t n = 0;
  if (!std::getline(in, line)) throw ParseError(0, "missing CSV header");
  ++n;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "x1,y1,x2,y2") throw ParseError(n, "unexpected CSV header '" + line + "'");
  std::vector<Segment> segs;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 4) throw ParseError(n, "expected 4 fields");
    segs.push_back(Segment::make({read_rational(fields[0], n), read_rational(fields[1], n)},
                                 {read_rational(fields[2], n), read_rational(fields[3], n)}));
  }
  return SegmentSet::from(std::move(segs));
}

}  // namespace icm

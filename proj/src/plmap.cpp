#include "icm/plmap.hpp"

#include <algorithm>
#include <ostream>
#include <string>

namespace icm {

namespace {

bool collinear(const Breakpoint& a, const Breakpoint& b, const Breakpoint& c) {
  return (b.y - a.y) * (c.x - b.x) == (c.y - b.y) * (b.x - a.x);
}

// x on segment [a, b] where the linear interpolant takes the value y.
Rational solve_on_segment(const Breakpoint& a, const Breakpoint& b, const Rational& y) {
  return a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y);
}

Rational interpolate(const Breakpoint& a, const Breakpoint& b, const Rational& x) {
  return a.y + (x - a.x) * (b.y - a.y) / (b.x - a.x);
}

void normalize(FixedSet& s) {
  std::sort(s.segments.begin(), s.segments.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> merged;
  for (auto& seg : s.segments) {
    if (!merged.empty() && seg.lo <= merged.back().hi) {
      merged.back().hi = max(merged.back().hi, seg.hi);
    } else {
      merged.push_back(seg);
    }
  }
  s.segments = std::move(merged);

  std::sort(s.isolated.begin(), s.isolated.end());
  s.isolated.erase(std::unique(s.isolated.begin(), s.isolated.end()), s.isolated.end());
  std::erase_if(s.isolated, [&](const Rational& x) {
    return std::any_of(s.segments.begin(), s.segments.end(),
                       [&](const Interval& j) { return j.contains(x); });
  });
}

}  // namespace

// Merges collinear neighbours; the caller guarantees every other invariant.
PLMap canonical_plmap(std::vector<Breakpoint> points) {
  std::vector<Breakpoint> out;
  out.reserve(points.size());
  for (auto& p : points) {
    if (!out.empty() && out.back().x == p.x) continue;
    if (out.size() >= 2 && collinear(out[out.size() - 2], out.back(), p)) out.back() = std::move(p);
    else out.push_back(std::move(p));
  }
  return PLMap(std::move(out));
}

Interval Interval::make(Rational lo, Rational hi) {
  if (lo.sign() < 0 || hi > Rational(1) || hi < lo)
    throw DomainError("invalid interval [" + lo.str() + ", " + hi.str() + "]");
  return {std::move(lo), std::move(hi)};
}

std::ostream& operator<<(std::ostream& os, const Interval& j) {
  return os << '[' << j.lo << ", " << j.hi << ']';
}

PLMap PLMap::make(std::vector<Breakpoint> points) {
  if (points.size() < 2) throw DomainError("a map needs at least two breakpoints");
  if (points.front().x != Rational(0) || points.back().x != Rational(1))
    throw DomainError("breakpoint x-range must be exactly [0,1]");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (p.y.sign() < 0 || p.y > Rational(1))
      throw DomainError("value " + p.y.str() + " at x=" + p.x.str() + " is outside [0,1]");
    if (i > 0) {
      if (!(points[i - 1].x < p.x))
        throw DomainError("breakpoint x not strictly increasing at x=" + p.x.str());
      if (points[i - 1].y == p.y)
        throw DomainError("constant piece on [" + points[i - 1].x.str() + ", " + p.x.str() + "]");
    }
  }
  return canonical_plmap(std::move(points));
}

std::size_t PLMap::segment_at(const Rational& x) const {
  auto it = std::upper_bound(pts_.begin(), pts_.end(), x,
                             [](const Rational& v, const Breakpoint& b) { return v < b.x; });
  std::size_t i = it == pts_.begin() ? 0 : static_cast<std::size_t>(it - pts_.begin()) - 1;
  return std::min(i, segment_count() - 1);
}

Rational PLMap::operator()(const Rational& x) const {
  if (x.sign() < 0 || x > Rational(1)) throw DomainError("x=" + x.str() + " is outside [0,1]");
  const std::size_t i = segment_at(x);
  if (x == pts_[i].x) return pts_[i].y;
  if (x == pts_[i + 1].x) return pts_[i + 1].y;
  return interpolate(pts_[i], pts_[i + 1], x);
}

bool CriticalSet::contains(const Rational& x) const {
  auto it = std::lower_bound(points.begin(), points.end(), x,
                             [](const CriticalPoint& c, const Rational& v) { return c.x < v; });
  return it != points.end() && it->x == x;
}

std::vector<Rational> CriticalSet::xs() const {
  std::vector<Rational> out;
  out.reserve(points.size());
  for (const auto& c : points) out.push_back(c.x);
  return out;
}

bool FixedSet::contains(const Rational& x) const {
  if (std::binary_search(isolated.begin(), isolated.end(), x)) return true;
  return std::any_of(segments.begin(), segments.end(),
                     [&](const Interval& j) { return j.contains(x); });
}

std::optional<Rational> FixedSet::least() const {
  std::optional<Rational> best;
  if (!isolated.empty()) best = isolated.front();
  if (!segments.empty() && (!best || segments.front().lo < *best)) best = segments.front().lo;
  return best;
}

FixedSet intersect(const FixedSet& a, const FixedSet& b) {
  FixedSet out;
  for (const auto& x : a.isolated)
    if (b.contains(x)) out.isolated.push_back(x);
  for (const auto& x : b.isolated)
    if (a.contains(x)) out.isolated.push_back(x);
  for (const auto& s : a.segments) {
    for (const auto& t : b.segments) {
      Rational lo = max(s.lo, t.lo);
      Rational hi = min(s.hi, t.hi);
      if (lo < hi) out.segments.push_back({lo, hi});
      else if (lo == hi) out.isolated.push_back(lo);
    }
  }
  normalize(out);
  return out;
}

PLMap identity_map() { return PLMap::make({{0, 0}, {1, 1}}); }

PLMap tent(int n) {
  if (n < 2) throw DomainError("tent map needs n >= 2, got " + std::to_string(n));
  std::vector<Breakpoint> pts;
  pts.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) pts.push_back({Rational(i, n), Rational(i % 2)});
  return PLMap::make(std::move(pts));
}

Rational eval(const PLMap& f, const Rational& x) { return f(x); }

CriticalSet critical_points(const PLMap& f) {
  CriticalSet out;
  const auto& p = f.breakpoints();
  for (std::size_t i = 1; i + 1 < p.size(); ++i) {
    const int left = f.direction(i - 1);
    const int right = f.direction(i);
    if (left != right) out.points.push_back({p[i].x, left > 0 ? Extremum::max : Extremum::min});
  }
  return out;
}

PLMap compose(const PLMap& f, const PLMap& g, std::size_t cap) {
  const auto& fp = f.breakpoints();
  const auto& gp = g.breakpoints();
  std::vector<Rational> fx;
  fx.reserve(fp.size());
  for (const auto& b : fp) fx.push_back(b.x);

  // Index range of f-breakpoints strictly between the values at the ends of
  // g's segment i.
  auto inner = [&](std::size_t i) {
    const Rational& lo = min(gp[i].y, gp[i + 1].y);
    const Rational& hi = max(gp[i].y, gp[i + 1].y);
    auto first = std::upper_bound(fx.begin(), fx.end(), lo);
    auto last = std::lower_bound(fx.begin(), fx.end(), hi);
    return std::pair{static_cast<std::size_t>(first - fx.begin()),
                     static_cast<std::size_t>(std::max(first, last) - fx.begin())};
  };

  std::size_t count = gp.size();
  for (std::size_t i = 0; i + 1 < gp.size(); ++i) {
    auto [a, b] = inner(i);
    count += b - a;
  }
  if (count > cap)
    throw ResourceError("composition needs " + std::to_string(count) +
                        " breakpoints, cap is " + std::to_string(cap));

  std::vector<Breakpoint> out;
  out.reserve(count);
  for (std::size_t i = 0; i + 1 < gp.size(); ++i) {
    const auto& a = gp[i];
    const auto& b = gp[i + 1];
    out.push_back({a.x, f(a.y)});
    auto [first, last] = inner(i);
    if (b.y > a.y) {
      for (std::size_t k = first; k < last; ++k)
        out.push_back({solve_on_segment(a, b, fx[k]), fp[k].y});
    } else {
      for (std::size_t k = last; k-- > first;)
        out.push_back({solve_on_segment(a, b, fx[k]), fp[k].y});
    }
  }
  out.push_back({gp.back().x, f(gp.back().y)});
  return canonical_plmap(std::move(out));
}

PLMap iterate(const PLMap& f, int k, std::size_t cap) {
  if (k < 1) throw DomainError("iterate needs k >= 1, got " + std::to_string(k));
  PLMap r = f;
  for (int i = 1; i < k; ++i) r = compose(f, r, cap);
  return r;
}

std::vector<Rational> preimage_point(const PLMap& f, const Rational& y) {
  std::vector<Rational> out;
  const auto& p = f.breakpoints();
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const Rational& lo = min(p[i].y, p[i + 1].y);
    const Rational& hi = max(p[i].y, p[i + 1].y);
    if (y < lo || hi < y) continue;
    Rational x = y == p[i].y ? p[i].x : (y == p[i + 1].y ? p[i + 1].x : solve_on_segment(p[i], p[i + 1], y));
    if (out.empty() || out.back() != x) out.push_back(std::move(x));
  }
  return out;
}

std::vector<Interval> preimage_interval(const PLMap& f, const Interval& j) {
  std::vector<Interval> out;
  const auto& p = f.breakpoints();
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const Rational& lo = max(min(p[i].y, p[i + 1].y), j.lo);
    const Rational& hi = min(max(p[i].y, p[i + 1].y), j.hi);
    if (hi < lo) continue;
    Rational a = solve_on_segment(p[i], p[i + 1], lo);
    Rational b = solve_on_segment(p[i], p[i + 1], hi);
    if (b < a) std::swap(a, b);
    if (!out.empty() && out.back().hi == a) out.back().hi = std::move(b);
    else out.push_back({std::move(a), std::move(b)});
  }
  return out;
}

Interval image(const PLMap& f, const Interval& j) {
  Rational lo = f(j.lo);
  Rational hi = lo;
  auto take = [&](const Rational& v) {
    if (v < lo) lo = v;
    if (hi < v) hi = v;
  };
  take(f(j.hi));
  for (const auto& b : f.breakpoints())
    if (j.interior_contains(b.x)) take(b.y);
  return {std::move(lo), std::move(hi)};
}

bool is_onto(const PLMap& f) { return image(f, Interval::unit()) == Interval::unit(); }

bool is_monotone(const PLMap& f, const Interval& j) {
  for (const auto& c : critical_points(f).points)
    if (j.interior_contains(c.x)) return false;
  return true;
}

bool is_open(const PLMap& f, const Interval& j, const Interval& k) {
  const Interval img = image(f, j);
  if (!k.contains(img))
    throw DomainError("image of restriction is not contained in the target interval");
  if (j.degenerate()) return k.degenerate();

  for (const auto& c : critical_points(f).points) {
    if (!j.interior_contains(c.x)) continue;
    const Rational v = f(c.x);
    if (v != (c.kind == Extremum::max ? k.hi : k.lo)) return false;
  }

  const auto& p = f.breakpoints();
  const int first = f.direction(f.segment_at(j.lo));
  if (f(j.lo) != (first > 0 ? k.lo : k.hi)) return false;

  auto it = std::lower_bound(p.begin(), p.end(), j.hi,
                             [](const Breakpoint& b, const Rational& v) { return b.x < v; });
  const std::size_t last_seg = static_cast<std::size_t>(it - p.begin()) - 1;
  const int last = f.direction(last_seg);
  return f(j.hi) == (last > 0 ? k.hi : k.lo);
}

FixedSet fixed_points(const PLMap& f) {
  FixedSet out;
  const auto& p = f.breakpoints();
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const Rational dx = p[i + 1].x - p[i].x;
    const Rational dy = p[i + 1].y - p[i].y;
    if (dx == dy) {
      if (p[i].y == p[i].x) out.segments.push_back({p[i].x, p[i + 1].x});
      continue;
    }
    // y0 + s (x - x0) = x  =>  x = (y0 - s x0) / (1 - s)
    const Rational s = dy / dx;
    Rational x = (p[i].y - s * p[i].x) / (Rational(1) - s);
    if (p[i].x <= x && x <= p[i + 1].x) out.isolated.push_back(std::move(x));
  }
  normalize(out);
  return out;
}

bool is_homeomorphism(const PLMap& h) {
  const auto& p = h.breakpoints();
  return critical_points(h).empty() &&
         ((p.front().y == Rational(0) && p.back().y == Rational(1)) ||
          (p.front().y == Rational(1) && p.back().y == Rational(0)));
}

PLMap inverse(const PLMap& h) {
  if (!is_homeomorphism(h)) throw DomainError("map is not a PL homeomorphism of [0,1]");
  std::vector<Breakpoint> pts;
  pts.reserve(h.breakpoints().size());
  for (const auto& b : h.breakpoints()) pts.push_back({b.y, b.x});
  if (pts.front().x > pts.back().x) std::reverse(pts.begin(), pts.end());
  return PLMap::make(std::move(pts));
}

PLMap conjugate(const PLMap& f, const PLMap& h) {
  const PLMap h_inv = inverse(h);
  return compose(h_inv, compose(f, h));
}

std::ostream& operator<<(std::ostream& os, const PLMap& f) {
  os << '[';
  bool first = true;
  for (const auto& b : f.breakpoints()) {
    if (!first) os << ", ";
    first = false;
    os << '(' << b.x << ", " << b.y << ')';
  }
  return os << ']';
}

}  // namespace icm

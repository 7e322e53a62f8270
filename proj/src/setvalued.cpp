#include <algorithm>
#include <set>
#include <sstream>

#include "geometry.hpp"
#include "icm/setvalued.hpp"

namespace icm {

namespace {

std::vector<Rational> merged_xs(const PLMap& f, const PLMap& g) {
  std::vector<Rational> ts;
  ts.reserve(f.breakpoints().size() + g.breakpoints().size());
  for (const auto& b : f.breakpoints()) ts.push_back(b.x);
  for (const auto& b : g.breakpoints()) ts.push_back(b.x);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  return ts;
}

// Linear piece of a map between consecutive breakpoints, inverted: the x on
// the piece where the value is v.
Rational solve(const Breakpoint& a, const Breakpoint& b, const Rational& v) {
  if (v == a.y) return a.x;
  if (v == b.y) return b.x;
  return a.x + (v - a.y) * (b.x - a.x) / (b.y - a.y);
}

std::string point_str(const Point& p) { return "(" + p.x.str() + ", " + p.y.str() + ")"; }

template <class Range>
std::string list_str(const Range& r) {
  std::string s;
  for (const auto& x : r) {
    if (!s.empty()) s += ", ";
    if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Point>) s += point_str(x);
    else s += x.str();
  }
  return "{" + s + "}";
}

}  // namespace

std::vector<Point> forward_polyline(const PLMap& f, const PLMap& g) {
  std::vector<Point> out;
  for (const auto& t : merged_xs(f, g)) out.push_back({g(t), f(t)});
  return out;
}

SegmentSet forward_graph(const PLMap& f, const PLMap& g) {
  const auto poly = forward_polyline(f, g);
  std::vector<Segment> segs;
  segs.reserve(poly.size());
  for (std::size_t i = 0; i + 1 < poly.size(); ++i) segs.push_back(Segment::make(poly[i], poly[i + 1]));
  return SegmentSet::from(std::move(segs));
}

SegmentSet pullback_graph(const PLMap& f, const PLMap& g) {
  const auto& fp = f.breakpoints();
  const auto& gp = g.breakpoints();
  std::vector<Segment> segs;
  for (std::size_t i = 0; i + 1 < fp.size(); ++i) {
    const Rational& flo = min(fp[i].y, fp[i + 1].y);
    const Rational& fhi = max(fp[i].y, fp[i + 1].y);
    for (std::size_t j = 0; j + 1 < gp.size(); ++j) {
      const Rational& lo = max(flo, min(gp[j].y, gp[j + 1].y));
      const Rational& hi = min(fhi, max(gp[j].y, gp[j + 1].y));
      if (hi < lo) continue;
      Point p{solve(fp[i], fp[i + 1], lo), solve(gp[j], gp[j + 1], lo)};
      Point q{solve(fp[i], fp[i + 1], hi), solve(gp[j], gp[j + 1], hi)};
      segs.push_back(Segment::make(std::move(p), std::move(q)));
    }
  }
  return SegmentSet::from(std::move(segs));
}

bool commute(const PLMap& f, const PLMap& g) { return compose(f, g) == compose(g, f); }

bool strongly_commute(const PLMap& f, const PLMap& g) {
  return commute(f, g) && graphs_equal(forward_graph(f, g), pullback_graph(f, g));
}

const char* to_string(FeatureKind k) {
  switch (k) {
    case FeatureKind::hat: return "hat";
    case FeatureKind::end_hat: return "end-hat";
    case FeatureKind::endpoint_a: return "endpoint-a";
    case FeatureKind::endpoint_b: return "endpoint-b";
  }
  return "?";
}

std::vector<GraphFeature> hats(const PLMap& f, const PLMap& g) {
  const CriticalSet cf = critical_points(f);
  const CriticalSet cg = critical_points(g);
  const Point start{g(Rational(0)), f(Rational(0))};
  const Point finish{g(Rational(1)), f(Rational(1))};
  std::vector<GraphFeature> out;
  for (const auto& c : cf.points) {
    for (auto& y : preimage_point(g, f(c.x))) {
      if (cg.contains(y)) continue;
      Point loc{c.x, std::move(y)};
      const bool end = start == finish && loc == start;
      out.push_back({std::move(loc), end ? FeatureKind::end_hat : FeatureKind::hat});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const GraphFeature& a, const GraphFeature& b) { return a.location < b.location; });
  return out;
}

std::vector<GraphFeature> endpoints(const PLMap& f, const PLMap& g) {
  const CriticalSet cf = critical_points(f);
  const CriticalSet cg = critical_points(g);
  std::vector<GraphFeature> out;
  for (int xi = 0; xi <= 1; ++xi) {
    const Rational x(xi);
    for (auto& y : preimage_point(g, f(x)))
      if (!cg.contains(y)) out.push_back({{x, std::move(y)}, FeatureKind::endpoint_a});
  }
  for (int yi = 0; yi <= 1; ++yi) {
    const Rational y(yi);
    for (auto& x : preimage_point(f, g(y))) {
      if (x.sign() == 0 || x == Rational(1) || cf.contains(x)) continue;
      out.push_back({{std::move(x), y}, FeatureKind::endpoint_b});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const GraphFeature& a, const GraphFeature& b) { return a.location < b.location; });
  return out;
}

bool Profile::inequalities_hold() const {
  return std::all_of(inequalities.begin(), inequalities.end(), [](bool b) { return b; });
}

Profile profile(const PLMap& f, const PLMap& g) {
  if (!is_onto(f) || !is_onto(g)) throw PreconditionError("profile requires onto maps");
  const std::vector<Rational> c = critical_points(f).xs();
  const std::size_t n = c.size();
  Profile p;
  p.hat_counts.assign(n, 0);
  p.endpoint_counts.assign(n + 1, 0);

  for (const auto& h : hats(f, g)) {
    const auto idx = static_cast<std::size_t>(std::lower_bound(c.begin(), c.end(), h.location.x) - c.begin());
    ++p.hat_counts[idx];
    ++p.total_hats;
  }
  for (const auto& e : endpoints(f, g)) {
    // Endpoints never sit over a critical point, so the gap index is the
    // number of critical points to the left.
    const auto idx = static_cast<std::size_t>(std::lower_bound(c.begin(), c.end(), e.location.x) - c.begin());
    ++p.endpoint_counts[idx];
    ++p.total_endpoints;
  }
  if (n > 0) {
    const auto& h = p.hat_counts;
    const auto& e = p.endpoint_counts;
    p.inequalities.push_back(e[0] + h[0] >= 2);
    for (std::size_t i = 1; i < n; ++i) p.inequalities.push_back(h[i - 1] + e[i] + h[i] >= 2);
    p.inequalities.push_back(h[n - 1] + e[n] >= 2);
  }
  return p;
}

Report verify_strong_consequences(const PLMap& f, const PLMap& g) {
  if (!strongly_commute(f, g)) throw PreconditionError("maps do not strongly commute");
  Report r;
  const CriticalSet cf = critical_points(f);
  const CriticalSet cg = critical_points(g);
  const std::vector<Rational> c = cf.xs();
  const std::size_t n = c.size();

  // (i) counts and locations of hats and endpoints.
  {
    const Profile p = profile(f, g);
    std::set<Point> hat_locs, expected_hats, end_locs, expected_ends;
    bool any_end_hat = false;
    for (const auto& h : hats(f, g)) {
      hat_locs.insert(h.location);
      any_end_hat = any_end_hat || h.kind == FeatureKind::end_hat;
    }
    for (const auto& x : c) expected_hats.insert({g(x), f(x)});
    for (const auto& e : endpoints(f, g)) end_locs.insert(e.location);
    expected_ends.insert({g(Rational(0)), f(Rational(0))});
    expected_ends.insert({g(Rational(1)), f(Rational(1))});

    r.add("endpoint count is 2", p.total_endpoints == 2, "found " + std::to_string(p.total_endpoints));
    r.add("hat count equals |C_f|", p.total_hats == static_cast<int>(n),
          "found " + std::to_string(p.total_hats) + ", |C_f| = " + std::to_string(n));
    r.add("hats are (g(c), f(c)) for c in C_f", hat_locs == expected_hats && !any_end_hat,
          "hats " + list_str(hat_locs) + ", expected " + list_str(expected_hats));
    r.add("endpoints are (g(0), f(0)) and (g(1), f(1))", end_locs == expected_ends,
          "endpoints " + list_str(end_locs) + ", expected " + list_str(expected_ends));
    r.add("hat/endpoint inequalities", p.inequalities_hold());

    // (vi) With two endpoints and n hats every inequality is tight, which
    // determines h from e.
    bool pattern = p.total_endpoints == 2 && p.total_hats == static_cast<int>(n);
    if (pattern && n > 0) {
      int prev = 2 - p.endpoint_counts[0];
      pattern = prev == p.hat_counts[0];
      for (std::size_t i = 1; pattern && i < n; ++i) {
        const int next = 2 - p.endpoint_counts[i] - p.hat_counts[i - 1];
        pattern = next >= 0 && next == p.hat_counts[i];
        prev = next;
      }
      pattern = pattern && prev >= 0 && prev + p.endpoint_counts[n] == 2;
    }
    std::ostringstream detail;
    detail << "h = (";
    for (std::size_t i = 0; i < n; ++i) detail << (i ? "," : "") << p.hat_counts[i];
    detail << "), e = (";
    for (std::size_t i = 0; i <= n; ++i) detail << (i ? "," : "") << p.endpoint_counts[i];
    detail << ")";
    r.add("hat pattern is one of the admissible patterns", pattern, detail.str());
  }

  // (ii) disjoint critical sets.
  {
    std::vector<Rational> common;
    for (const auto& x : c)
      if (cg.contains(x)) common.push_back(x);
    r.add("C_f and C_g are disjoint", common.empty(), "common " + list_str(common));
  }

  // (iii) g⁻¹(f([c_i, c_{i+1}])) is connected.
  {
    std::vector<Rational> knots{Rational(0)};
    knots.insert(knots.end(), c.begin(), c.end());
    knots.push_back(Rational(1));
    std::string bad;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
      const Interval img = image(f, {knots[i], knots[i + 1]});
      if (preimage_interval(g, img).size() != 1)
        bad += "[" + knots[i].str() + ", " + knots[i + 1].str() + "] ";
    }
    r.add("preimages of monotone-piece images are connected", bad.empty(), bad);
  }

  // (iv) critical points propagate.
  {
    std::string bad;
    for (const auto& d : cg.points)
      if (!cg.contains(f(d.x))) bad += "f(" + d.x.str() + ") ";
    for (const auto& x : c)
      if (!cf.contains(g(x))) bad += "g(" + x.str() + ") ";
    r.add("critical points map to critical points", bad.empty(), bad);
  }

  // (v) self-intersections of the parametrized graph sit over C_f x C_g.
  {
    const auto poly = forward_polyline(f, g);
    std::vector<Segment> pieces;
    for (std::size_t i = 0; i + 1 < poly.size(); ++i) pieces.push_back(Segment::make(poly[i], poly[i + 1]));
    std::string bad;
    std::vector<Point> hits;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      for (std::size_t j = i + 1; j < pieces.size(); ++j) {
        const auto& s = pieces[i];
        const auto& o = pieces[j];
        const bool parallel =
            detail::orient(s.a, s.b, o.a).is_zero() && detail::orient(s.a, s.b, o.b).is_zero();
        hits.clear();
        detail::cut_points(s, o, hits);
        std::sort(hits.begin(), hits.end());
        hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
        if (j == i + 1) {
          // Adjacent pieces share poly[i+1]; anything more is a fold.
          if (parallel && hits.size() > 1) bad += "overlap at " + point_str(poly[i + 1]) + " ";
          continue;
        }
        if (parallel && hits.size() > 1) {
          bad += "overlap near " + point_str(hits.front()) + " ";
          continue;
        }
        for (const auto& h : hits)
          if (!cf.contains(h.x) || !cg.contains(h.y)) bad += point_str(h) + " ";
      }
    }
    r.add("coincidences lie in C_f x C_g", bad.empty(), bad);
  }
  return r;
}

}  // namespace icm

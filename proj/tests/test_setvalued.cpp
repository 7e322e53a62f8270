#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "corpus.hpp"
#include "icm/setvalued.hpp"

using namespace icm;
using namespace icm::testing;

namespace {

std::set<Point> locations(const std::vector<GraphFeature>& fs) {
  std::set<Point> out;
  for (const auto& f : fs) out.insert(f.location);
  return out;
}

SegmentSet polyline_set(const std::vector<Point>& pts) {
  std::vector<Segment> segs;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) segs.push_back(Segment::make(pts[i], pts[i + 1]));
  return SegmentSet::from(std::move(segs));
}

SegmentSet reflect(const SegmentSet& s) {
  std::vector<Segment> segs;
  for (const auto& seg : s.segments()) segs.push_back(Segment::make({seg.a.y, seg.a.x}, {seg.b.y, seg.b.x}));
  return SegmentSet::from(std::move(segs));
}

// Second coordinates of graph points a short way from p along every segment
// through p.
std::vector<Rational> nearby_heights(const SegmentSet& s, const Point& p) {
  std::vector<Rational> out;
  const Rational step(1, 1000);
  for (const auto& seg : s.segments()) {
    if (seg.is_point() || !seg.contains(p)) continue;
    if (p != seg.b) out.push_back(p.y + (seg.b.y - p.y) * step);
    if (p != seg.a) out.push_back(p.y + (seg.a.y - p.y) * step);
  }
  return out;
}

}  // namespace

TEST_CASE("forward graph of T3, T4 is the polyline of the figure") {
  const std::vector<Point> expected{pt("0", "0"),   pt("1", "3/4"),   pt("2/3", "1"), pt("0", "1/2"),
                                    pt("2/3", "0"), pt("1", "1/4"),   pt("0", "1")};
  CHECK(forward_polyline(tent(3), tent(4)) == expected);
  CHECK(forward_graph(tent(3), tent(4)) == polyline_set(expected));
  CHECK(forward_graph(tent(3), tent(4)).size() == 6);
}

TEST_CASE("forward graph with the identity") {
  const PLMap f = fig3_g();
  std::vector<Point> graph, mirrored;
  for (const auto& b : f.breakpoints()) {
    graph.push_back({b.x, b.y});
    mirrored.push_back({b.y, b.x});
  }
  CHECK(forward_graph(f, identity_map()) == polyline_set(graph));
  CHECK(forward_graph(identity_map(), f) == polyline_set(mirrored));
}

TEST_CASE("pullback graphs") {
  CHECK(graphs_equal(pullback_graph(tent(3), tent(4)), forward_graph(tent(3), tent(4))));
  const SegmentSet pull = pullback_graph(tent(4), tent(6));
  const SegmentSet fwd = forward_graph(tent(4), tent(6));
  CHECK(covers(pull, fwd));
  CHECK_FALSE(covers(fwd, pull));
  CHECK(pull.size() > fwd.size());
  CHECK(pullback_graph(identity_map(), identity_map()) == polyline_set({pt("0", "0"), pt("1", "1")}));
}

TEST_CASE("pullback graph of the two-fold with itself is the union of two diagonals") {
  // Every point (x, y) with T2(x) = T2(y) has y = x or y = 1 - x.
  const SegmentSet expected = SegmentSet::from({Segment::make(pt("0", "0"), pt("1", "1")),
                                                Segment::make(pt("0", "1"), pt("1", "0"))});
  CHECK(graphs_equal(pullback_graph(tent(2), tent(2)), expected));
}

TEST_CASE("segment sets canonicalize and compare as point sets") {
  const SegmentSet whole = SegmentSet::from({Segment::make(pt("0", "0"), pt("1", "1"))});
  const SegmentSet halves = SegmentSet::from({Segment::make(pt("1/2", "1/2"), pt("1", "1")),
                                              Segment::make(pt("0", "0"), pt("1/2", "1/2")),
                                              Segment::make(pt("1/4", "1/4"), pt("1/4", "1/4"))});
  CHECK(whole == halves);
  CHECK(graphs_equal(whole, halves));

  const SegmentSet with_point = SegmentSet::from({Segment::make(pt("0", "0"), pt("1", "1")),
                                                  Segment::make(pt("0", "1"), pt("0", "1"))});
  CHECK(with_point.size() == 2);
  CHECK_FALSE(graphs_equal(whole, with_point));
  CHECK(covers(with_point, whole));

  const SegmentSet cross = SegmentSet::from({Segment::make(pt("0", "0"), pt("1", "1")),
                                             Segment::make(pt("0", "1"), pt("1", "0"))});
  const SegmentSet bent = SegmentSet::from({Segment::make(pt("0", "0"), pt("1/2", "1/2")),
                                            Segment::make(pt("1/2", "1/2"), pt("1", "0")),
                                            Segment::make(pt("0", "1"), pt("1/2", "1/2")),
                                            Segment::make(pt("1/2", "1/2"), pt("1", "1"))});
  CHECK(cross == bent);
  CHECK(graphs_equal(cross, bent));

  const SegmentSet vertical = SegmentSet::from({Segment::make(pt("1/2", "0"), pt("1/2", "1/2")),
                                                Segment::make(pt("1/2", "1/4"), pt("1/2", "1"))});
  CHECK(vertical.size() == 1);
  CHECK(vertical.contains(pt("1/2", "3/4")));
  CHECK_FALSE(vertical.contains(pt("1/3", "3/4")));
  CHECK(graphs_equal(whole, whole));
}

TEST_CASE("commutation") {
  CHECK(commute(tent(2), tent(3)));
  const PLMap g = map_of("0 0; 1/2 1; 1 1/2");
  // At x = 1 the two compositions take different values.
  REQUIRE(eval(tent(2), eval(g, 1)) == 1);
  REQUIRE(eval(g, eval(tent(2), 1)) == 0);
  CHECK_FALSE(commute(tent(2), g));
  CHECK(commute(fig3_f(), fig3_f()));
}

TEST_CASE("strong commutation") {
  CHECK(strongly_commute(tent(3), tent(4)));
  CHECK_FALSE(strongly_commute(tent(2), tent(2)));
  CHECK(strongly_commute(fig9_f(), fig9_g()));
  CHECK(strongly_commute(fig10_f(), fig10_g()));
  CHECK(strongly_commute(fig11_f(), fig11_g()));
  CHECK_FALSE(strongly_commute(tent(4), tent(6)));
  CHECK_FALSE(strongly_commute(fig3_f(), fig3_g()));
}

TEST_CASE("hats") {
  const auto h3 = hats(fig3_f(), fig3_g());
  CHECK(locations(h3).count(pt("1/3", "1/3")) == 1);
  CHECK(locations(h3) == std::set<Point>{pt("1/3", "0"), pt("1/3", "1/3")});

  // c = 1/3 has T4^{-1}(1) = {1/4, 3/4}, both critical; c = 2/3 has
  // T4^{-1}(0) = {0, 1/2, 1} with 1/2 critical.
  REQUIRE(preimage_point(tent(4), 1) == std::vector<Rational>{q("1/4"), q("3/4")});
  REQUIRE(preimage_point(tent(4), 0) == std::vector<Rational>{0, q("1/2"), 1});
  const auto h34 = hats(tent(3), tent(4));
  CHECK(locations(h34) == std::set<Point>{pt("2/3", "0"), pt("2/3", "1")});
  for (const auto& h : h34) CHECK(h.kind == FeatureKind::hat);
  CHECK(hats(identity_map(), tent(2)).empty());
}

TEST_CASE("end-hats are flagged") {
  // (g(0), f(0)) = (g(1), f(1)) = (1/2, 0), and c = 1/2 is critical for f
  // with g(0) = g(1) = f(c) = 1/2.
  const PLMap f = map_of("0 0; 1/2 1/2; 1 0");
  const PLMap g = map_of("0 1/2; 1/2 1; 1 1/2");
  const auto h = hats(f, g);
  REQUIRE(h.size() == 2);
  CHECK(h[0] == GraphFeature{pt("1/2", "0"), FeatureKind::end_hat});
  CHECK(h[1] == GraphFeature{pt("1/2", "1"), FeatureKind::hat});
  CHECK(std::string(to_string(FeatureKind::end_hat)) != to_string(FeatureKind::hat));
}

TEST_CASE("endpoints") {
  const auto e3 = endpoints(fig3_f(), fig3_g());
  CHECK(locations(e3) == std::set<Point>{pt("1/6", "1"), pt("1/2", "1"), pt("7/9", "1"), pt("8/9", "0")});
  for (const auto& e : e3) CHECK(e.kind == FeatureKind::endpoint_b);

  const auto e34 = endpoints(tent(3), tent(4));
  CHECK(locations(e34) == std::set<Point>{pt("0", "0"), pt("0", "1")});
  for (const auto& e : e34) CHECK(e.kind == FeatureKind::endpoint_a);

  CHECK(locations(endpoints(identity_map(), identity_map())) == std::set<Point>{pt("0", "0"), pt("1", "1")});
}

TEST_CASE("profile") {
  const Profile p = profile(tent(3), tent(4));
  CHECK(p.hat_counts == std::vector<int>{0, 2});
  CHECK(p.endpoint_counts == std::vector<int>{2, 0, 0});
  CHECK(p.total_hats == 2);
  CHECK(p.total_endpoints == 2);
  CHECK(p.inequalities.size() == 3);
  CHECK(p.inequalities_hold());

  const Profile p3 = profile(fig3_f(), fig3_g());
  CHECK(p3.total_hats == 2);
  CHECK(p3.total_endpoints == 4);

  const Profile id = profile(identity_map(), tent(2));
  CHECK(id.hat_counts.empty());
  CHECK(id.endpoint_counts.size() == 1);
  CHECK(id.inequalities.empty());

  CHECK_THROWS_AS(profile(map_of("0 0; 1 1/2"), tent(2)), PreconditionError);
}

TEST_CASE("consequences of strong commutation") {
  for (const auto& [f, g] : {std::pair{tent(3), tent(4)}, std::pair{fig9_f(), fig9_g()},
                             std::pair{fig10_f(), fig10_g()}, std::pair{fig11_f(), fig11_g()}}) {
    const Report r = verify_strong_consequences(f, g);
    CHECK(r.checks.size() >= 8);
    for (const auto& c : r.checks) {
      INFO(c.name << " -- " << c.detail);
      CHECK(c.passed);
    }
    CHECK(r.find("endpoint count is 2") != nullptr);
  }
  CHECK_THROWS_AS(verify_strong_consequences(tent(4), tent(6)), PreconditionError);
}

TEST_CASE("CSV output and round trip") {
  const SegmentSet s = forward_graph(tent(3), tent(4));
  std::ostringstream out;
  write_csv(out, s);
  const std::string text = out.str();
  CHECK(text.rfind("x1,y1,x2,y2\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 7);
  std::istringstream in(text);
  CHECK(read_csv(in) == s);

  std::ostringstream empty;
  write_csv(empty, SegmentSet{});
  CHECK(empty.str() == "x1,y1,x2,y2\n");

  std::istringstream bad("x1,y1,x2,y2\n0,0,1\n");
  CHECK_THROWS_AS(read_csv(bad), ParseError);
}

TEST_CASE("property: swapping f and g reflects the pullback graph") {
  Gen gen(11);
  for (int i = 0; i < 60; ++i) {
    const PLMap f = gen.onto_map();
    const PLMap g = gen.onto_map();
    CHECK(graphs_equal(pullback_graph(g, f), reflect(pullback_graph(f, g))));
  }
}

TEST_CASE("property: commuting maps have the forward graph inside the pullback graph") {
  Gen gen(12);
  std::vector<NamedPair> pairs = conjugated_tent_pairs(gen, 30, false);
  for (const auto& p : strong_corpus()) pairs.push_back(p);
  pairs.push_back({"T4,T6", tent(4), tent(6)});
  for (const auto& p : pairs) {
    INFO(p.name);
    REQUIRE(commute(p.f, p.g));
    const SegmentSet pull = pullback_graph(p.f, p.g);
    CHECK(covers(pull, forward_graph(p.f, p.g)));
    // Pointwise oracle: every polyline vertex solves g(y) = f(x).
    for (const auto& v : forward_polyline(p.f, p.g)) CHECK(eval(p.g, v.y) == eval(p.f, v.x));
  }
}

TEST_CASE("property: pullback segments solve g(y) = f(x)") {
  Gen gen(14);
  for (int i = 0; i < 60; ++i) {
    const PLMap f = gen.onto_map();
    const PLMap g = gen.onto_map();
    const SegmentSet pull = pullback_graph(f, g);
    for (const auto& seg : pull.segments()) {
      const Point mid{(seg.a.x + seg.b.x) / 2, (seg.a.y + seg.b.y) / 2};
      CHECK(eval(g, seg.a.y) == eval(f, seg.a.x));
      CHECK(eval(g, mid.y) == eval(f, mid.x));
    }
  }
}

TEST_CASE("property: strong commutation matches graph equality on commuting pairs") {
  for (const auto& p : strong_corpus()) {
    INFO(p.name);
    CHECK(commute(p.f, p.g));
    CHECK(strongly_commute(p.f, p.g));
    CHECK(graphs_equal(pullback_graph(p.f, p.g), forward_graph(p.f, p.g)));
  }
}

TEST_CASE("property: y is a one-sided extremum of the graph near a hat") {
  Gen gen(13);
  std::vector<NamedPair> pairs = strong_corpus();
  const std::size_t corpus_size = pairs.size();
  for (int i = 0; i < 40; ++i) pairs.push_back({"random", gen.onto_map(), gen.onto_map()});
  int seen = 0;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& p = pairs[k];
    const SegmentSet pull = pullback_graph(p.f, p.g);
    for (const auto& h : hats(p.f, p.g)) {
      INFO(p.name << " hat " << h.location.x << " " << h.location.y);
      const auto ys = nearby_heights(pull, h.location);
      // Outside the strongly commuting corpus a hat may be an isolated point.
      if (k < corpus_size) REQUIRE_FALSE(ys.empty());
      const bool above = std::all_of(ys.begin(), ys.end(), [&](const Rational& y) { return y > h.location.y; });
      const bool below = std::all_of(ys.begin(), ys.end(), [&](const Rational& y) { return y < h.location.y; });
      CHECK((above || below));
      ++seen;
    }
  }
  CHECK(seen > 50);
}

TEST_CASE("property: strongly commuting corpus satisfies the profile inequalities") {
  for (const auto& p : strong_corpus()) {
    if (!is_onto(p.f) || !is_onto(p.g)) continue;
    INFO(p.name);
    const Profile pr = profile(p.f, p.g);
    CHECK(pr.inequalities_hold());
    CHECK(pr.total_endpoints == 2);
    CHECK(static_cast<std::size_t>(pr.total_hats) == critical_points(p.f).size());
  }
}

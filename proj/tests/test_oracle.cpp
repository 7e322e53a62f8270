#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "corpus.hpp"
#include "icm/oracle.hpp"
#include "icm/setvalued.hpp"

using namespace icm;
using namespace icm::testing;

namespace {

bool has(const GridSample& s, const Point& p) { return std::binary_search(s.points.begin(), s.points.end(), p); }

}  // namespace

TEST_CASE("grid samples") {
  const GridSample id = sample_pullback(identity_map(), identity_map(), 4);
  CHECK(id.resolution == 4);
  CHECK(id.points.size() == 5);
  for (const auto& p : id.points) CHECK(p.x == p.y);

  const GridSample t2 = sample_pullback(tent(2), tent(2), 4);
  CHECK(has(t2, pt("1/2", "1/2")));
  CHECK(has(t2, pt("1/4", "3/4")));
  CHECK(has(t2, pt("0", "1")));
  CHECK_FALSE(has(t2, pt("1/4", "1/2")));
  CHECK(std::is_sorted(t2.points.begin(), t2.points.end()));

  CHECK_THROWS_AS(sample_pullback(tent(2), tent(2), 1), DomainError);
  CHECK_THROWS_AS(brute_force_strong_commute(tent(2), tent(3), 0), DomainError);
}

TEST_CASE("grid points of the zero set lie on the pullback graph") {
  const SegmentSet pull = pullback_graph(tent(3), tent(4));
  const GridSample s = sample_pullback(tent(3), tent(4), 1000);
  CHECK(s.points.size() > 1000);
  for (const auto& p : s.points) {
    CHECK(eval(tent(4), p.y) == eval(tent(3), p.x));
    CHECK(pull.contains(p));
  }
}

TEST_CASE("brute-force strong commutation") {
  CHECK(brute_force_strong_commute(tent(3), tent(4), 240));
  CHECK_FALSE(brute_force_strong_commute(tent(4), tent(6), 240));
  CHECK(brute_force_strong_commute(identity_map(), identity_map(), 10));
  CHECK(brute_force_strong_commute(fig9_f(), fig9_g(), 360));
  CHECK_FALSE(brute_force_strong_commute(fig3_f(), fig3_g(), 360));
}

TEST_CASE("property: geometric and brute-force decisions agree on tent pairs") {
  for (int n = 2; n <= 8; ++n)
    for (int m = 2; m <= 8; ++m) {
      INFO("T" << n << ", T" << m);
      const bool geometric = strongly_commute(tent(n), tent(m));
      CHECK(geometric == (std::gcd(n, m) == 1));
      CHECK(brute_force_strong_commute(tent(n), tent(m), 840) == geometric);
    }
}

TEST_CASE("property: agreement on conjugated pairs") {
  Gen gen(41);
  auto pairs = conjugated_tent_pairs(gen, 25, true);
  auto non = conjugated_tent_pairs(gen, 25, false);
  pairs.insert(pairs.end(), non.begin(), non.end());
  for (const auto& p : pairs) {
    INFO(p.name);
    CHECK(strongly_commute(p.f, p.g) == brute_force_strong_commute(p.f, p.g, 360));
  }
}

TEST_CASE("property: brute force never rejects a strongly commuting pair") {
  for (const int n : {120, 360, 1000})
    for (const auto& p : strong_corpus()) {
      INFO(p.name << " at N = " << n);
      CHECK(brute_force_strong_commute(p.f, p.g, n));
    }
}

TEST_CASE("property: grid zero set matches the pullback graph on random pairs") {
  Gen gen(42);
  for (int i = 0; i < 30; ++i) {
    const PLMap f = gen.onto_map();
    const PLMap g = gen.onto_map();
    const SegmentSet pull = pullback_graph(f, g);
    for (const auto& p : sample_pullback(f, g, 120).points) CHECK(pull.contains(p));
    // Every pullback vertex on the grid is found by the sampler.
    const GridSample s = sample_pullback(f, g, 120);
    for (const auto& seg : pull.segments())
      for (const Point& v : {seg.a, seg.b})
        if ((v.x * 120).is_integer() && (v.y * 120).is_integer()) CHECK(has(s, v));
  }
}

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "corpus.hpp"
#include "icm/entropy.hpp"

using namespace icm;
using namespace icm::testing;

namespace {

// Characteristic polynomial det(xI - M) by the Faddeev-LeVerrier recursion in
// exact arithmetic; coefficient k multiplies x^(n-k).
std::vector<Rational> char_poly(const std::vector<std::vector<int>>& m) {
  const std::size_t n = m.size();
  using Matrix = std::vector<std::vector<Rational>>;
  Matrix a(n, std::vector<Rational>(n)), mk(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
  std::vector<Rational> c(n + 1);
  c[0] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    // mk = A * (mk + c[k-1] I)
    Matrix prev = mk;
    for (std::size_t i = 0; i < n; ++i) prev[i][i] += c[k - 1];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Rational sum = 0;
        for (std::size_t l = 0; l < n; ++l)
          if (m[i][l] != 0) sum += prev[l][j];
        mk[i][j] = sum;
      }
    Rational trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += mk[i][i];
    c[k] = -trace / Rational(static_cast<long>(k));
  }
  return c;
}

using Poly = std::vector<Rational>;  // highest degree first

Rational eval_poly(const Poly& p, const Rational& x) {
  Rational v = 0;
  for (const auto& c : p) v = v * x + c;
  return v;
}

void trim(Poly& p) {
  while (!p.empty() && p.front() == 0) p.erase(p.begin());
}

// Remainder and quotient of a / b.
std::pair<Poly, Poly> divide(Poly a, const Poly& b) {
  Poly quot;
  while (a.size() >= b.size()) {
    const Rational f = a.front() / b.front();
    quot.push_back(f);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= f * b[i];
    a.erase(a.begin());
  }
  trim(a);
  return {quot, a};
}

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) d.push_back(p[i] * Rational(static_cast<long>(p.size() - 1 - i)));
  return d;
}

Poly gcd_poly(Poly a, Poly b) {
  trim(b);
  while (!b.empty()) {
    Poly r = divide(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Perron root of a nonnegative matrix: the largest real root of its
// characteristic polynomial. The polynomial is made square-free, scanned
// downwards from the row-sum bound for the first sign change, then bisected
// with exact sign evaluations.
double perron_root(const std::vector<std::vector<int>>& m) {
  const Poly p = char_poly(m);
  const Poly sq = divide(p, gcd_poly(p, derivative(p))).first;
  long top = 1;
  for (const auto& row : m) top = std::max<long>(top, std::count(row.begin(), row.end(), 1));
  const long steps = 1024;
  Rational hi(top + 1), lo = hi;
  const int top_sign = eval_poly(sq, hi) > 0 ? 1 : -1;
  for (long k = (top + 1) * steps; k >= 0; --k) {
    lo = Rational(k, steps);
    const Rational v = eval_poly(sq, lo);
    if (v == 0) return lo.to_double();
    if ((v > 0 ? 1 : -1) != top_sign) break;
    hi = lo;
  }
  for (int iter = 0; iter < 60; ++iter) {
    const Rational mid = (lo + hi) / 2;
    const Rational v = eval_poly(sq, mid);
    if (v == 0) return mid.to_double();
    if ((v > 0 ? 1 : -1) == top_sign) hi = mid;
    else lo = mid;
  }
  return ((lo + hi) / 2).to_double();
}

}  // namespace

TEST_CASE("lap numbers") {
  CHECK(lap(tent(6)) == 6);
  CHECK(lap(identity_map()) == 1);
  CHECK(lap(compose(tent(3), tent(3))) == 9);
  CHECK(lap(fig3_g()) == critical_points(fig3_g()).size() + 1);
}

TEST_CASE("lap sequences of tents are powers") {
  for (int n = 2; n <= 5; ++n) {
    const LapSequence s = entropy_lap(tent(n), 6);
    REQUIRE(s.laps.size() == 6);
    std::size_t expected = 1;
    for (int k = 1; k <= 6; ++k) {
      expected *= static_cast<std::size_t>(n);
      CHECK(s.laps[static_cast<std::size_t>(k - 1)] == std::pair<int, std::size_t>{k, expected});
    }
    CHECK(s.estimate == doctest::Approx(std::log(n)).epsilon(1e-12));
  }
  CHECK(entropy_lap(identity_map(), 5).estimate == 0.0);
  CHECK_THROWS_AS(entropy_lap(tent(2), 0), DomainError);
  CHECK_THROWS_AS(entropy_lap(tent(5), 8, 1000), ResourceError);
}

TEST_CASE("lap entropy is invariant under conjugation") {
  Gen gen(31);
  for (int i = 0; i < 10; ++i) {
    const PLMap h = gen.homeomorphism();
    CHECK(entropy_lap(conjugate(tent(2), h), 8).estimate == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  }
}

TEST_CASE("Markov partitions of tents") {
  const auto m2 = markov_partition(tent(2));
  REQUIRE(m2.has_value());
  CHECK(m2->partition == std::vector<Rational>{0, Rational(1, 2), 1});
  CHECK(m2->matrix() == std::vector<std::vector<int>>{{1, 1}, {1, 1}});
  CHECK(m2->integer_radius == 2L);

  for (int n = 2; n <= 10; ++n) {
    const auto m = markov_partition(tent(n));
    REQUIRE(m.has_value());
    CHECK(m->integer_radius == static_cast<long>(n));
    CHECK(m->lower <= n + 1e-9);
    CHECK(m->upper >= n - 1e-9);
    CHECK(std::abs(entropy_markov(*m) - std::log(n)) < 1e-9);
  }

  const auto id = markov_partition(identity_map());
  REQUIRE(id.has_value());
  CHECK(id->matrix() == std::vector<std::vector<int>>{{1}});
  CHECK(entropy_markov(*id) == 0.0);
}

TEST_CASE("golden-mean Markov map") {
  // 0 -> 1/2 -> 1 -> 0: [0,1/2] covers [1/2,1], [1/2,1] covers both cells.
  const PLMap f = map_of("0 1/2; 1/2 1; 1 0");
  const auto m = markov_partition(f);
  REQUIRE(m.has_value());
  CHECK(m->matrix() == std::vector<std::vector<int>>{{0, 1}, {1, 1}});
  CHECK_FALSE(m->integer_radius.has_value());
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  CHECK(std::abs(m->spectral_radius - phi) < 1e-9);
  CHECK(m->lower <= phi + 1e-12);
  CHECK(m->upper >= phi - 1e-12);
  CHECK(std::abs(entropy_markov(*m) - std::log(phi)) < 1e-9);
  CHECK(std::abs(entropy(f) - std::log(phi)) < 1e-9);
}

TEST_CASE("maps without a small Markov partition fall back to laps") {
  // T3 alone has four breakpoints, so a bound of 2 forces the fallback.
  CHECK_FALSE(markov_partition(tent(3), 2).has_value());
  CHECK(entropy(tent(3)) == doctest::Approx(std::log(3.0)).epsilon(1e-9));
}

TEST_CASE("entropy of set-valued compositions") {
  CHECK(std::abs(entropy_setvalued(tent(3), tent(4)) - std::log(4.0)) < 1e-9);
  CHECK(std::abs(entropy_setvalued(tent(2), tent(3)) - std::log(3.0)) < 1e-9);
  const double f9 = entropy(fig9_f()), g9 = entropy(fig9_g());
  CHECK(entropy_setvalued(fig9_f(), fig9_g()) == std::max(f9, g9));
  CHECK_THROWS_AS(entropy_setvalued(tent(4), tent(6)), PreconditionError);
}

TEST_CASE("property: laps are submultiplicative") {
  Gen gen(32);
  for (int i = 0; i < 100; ++i) {
    const PLMap f = gen.map(gen.uniform(2, 4), 12, true);
    const int a = gen.uniform(1, 3), b = gen.uniform(1, 3);
    const std::size_t fa = lap(iterate(f, a)), fb = lap(iterate(f, b)), fab = lap(iterate(f, a + b));
    CHECK(fab <= fa * fb);
  }
}

TEST_CASE("property: the Markov radius is the Perron root of the characteristic polynomial") {
  Gen gen(33);
  int seen = 0;
  for (int i = 0; i < 200 && seen < 60; ++i) {
    const PLMap f = gen.map(gen.uniform(2, 5), 8, true);
    const auto m = markov_partition(f, 512);
    if (!m || m->cells() > 40) continue;
    ++seen;
    const double oracle = perron_root(m->matrix());
    INFO(f);
    CHECK(std::abs(m->spectral_radius - oracle) < 1e-6 * oracle);
    CHECK(m->lower <= m->upper);
  }
  CHECK(seen >= 30);
}

TEST_CASE("property: Markov and lap entropies agree on tents and their conjugates") {
  Gen gen(34);
  for (int i = 0; i < 20; ++i) {
    const int n = gen.uniform(2, 6);
    const PLMap f = conjugate(tent(n), gen.homeomorphism());
    const auto m = markov_partition(f);
    const double lap_estimate = entropy_lap(f, 6).estimate;
    CHECK(lap_estimate == doctest::Approx(std::log(n)).epsilon(1e-12));
    if (m) CHECK(std::abs(entropy_markov(*m) - std::log(n)) < 1e-9);
  }
}

#include "icm/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "icm/setvalued.hpp"

namespace icm {

namespace {

constexpr std::size_t kExactCheckLimit = 256;

// Strongly connected components of the cover graph (i -> j for j in cover[i]),
// iterative Tarjan.
std::vector<std::vector<std::size_t>> components(const std::vector<std::pair<std::size_t, std::size_t>>& cover) {
  const std::size_t n = cover.size();
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, unset), low(n, 0), next(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack, call;
  std::vector<std::vector<std::size_t>> out;
  std::size_t counter = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != unset) continue;
    call.push_back(root);
    index[root] = low[root] = counter++;
    next[root] = cover[root].first;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      const std::size_t v = call.back();
      if (next[v] < cover[v].second) {
        const std::size_t w = next[v]++;
        if (index[w] == unset) {
          index[w] = low[w] = counter++;
          next[w] = cover[w].first;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back(w);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      call.pop_back();
      if (!call.empty()) low[call.back()] = std::min(low[call.back()], low[v]);
      if (low[v] == index[v]) {
        std::vector<std::size_t> comp;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        out.push_back(std::move(comp));
      }
    }
  }
  return out;
}

struct Bracket {
  double lower;
  double upper;
};

// Collatz–Wielandt bracket for the spectral radius of the cover matrix
// restricted to one strongly connected component, via power iteration on
// A + I (primitive, so the iteration converges).
Bracket component_radius(const std::vector<std::pair<std::size_t, std::size_t>>& cover,
                         const std::vector<std::size_t>& comp) {
  const std::size_t n = cover.size();
  if (comp.size() == 1) {
    const std::size_t i = comp.front();
    const double r = cover[i].first <= i && i < cover[i].second ? 1.0 : 0.0;
    return {r, r};
  }
  std::vector<double> x(n, 0.0), prefix(n + 1, 0.0), y(comp.size());
  for (auto i : comp) x[i] = 1.0;
  Bracket b{0.0, 0.0};
  for (int iter = 0; iter < 1'000'000; ++iter) {
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + x[i];
    double lo = INFINITY, hi = 0.0, top = 0.0;
    for (std::size_t k = 0; k < comp.size(); ++k) {
      const std::size_t i = comp[k];
      y[k] = x[i] + prefix[cover[i].second] - prefix[cover[i].first];
      const double q = y[k] / x[i];
      lo = std::min(lo, q);
      hi = std::max(hi, q);
      top = std::max(top, y[k]);
    }
    b = {lo - 1.0, hi - 1.0};
    if (hi - lo <= 1e-13 * hi) break;
    for (std::size_t k = 0; k < comp.size(); ++k) x[comp[k]] = y[k] / top;
  }
  return b;
}

// Exact test that det(M - nI) = 0 (fraction-free Gaussian elimination).
bool singular_shift(const std::vector<std::vector<int>>& m, long n) {
  const std::size_t size = m.size();
  std::vector<std::vector<mpz_class>> a(size, std::vector<mpz_class>(size));
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j) a[i][j] = m[i][j] - (i == j ? n : 0);
  mpz_class prev = 1;
  for (std::size_t k = 0; k < size; ++k) {
    std::size_t pivot = k;
    while (pivot < size && a[pivot][k] == 0) ++pivot;
    if (pivot == size) return true;
    std::swap(a[pivot], a[k]);
    for (std::size_t i = k + 1; i < size; ++i) {
      for (std::size_t j = k + 1; j < size; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]);
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return false;
}

}  // namespace

std::size_t lap(const PLMap& f) { return critical_points(f).size() + 1; }

LapSequence entropy_lap(const PLMap& f, int k_max, std::size_t cap) {
  if (k_max < 1) throw DomainError("k_max must be at least 1");
  LapSequence s;
  PLMap fk = f;
  for (int k = 1; k <= k_max; ++k) {
    if (k > 1) fk = compose(f, fk, cap);
    s.laps.emplace_back(k, lap(fk));
  }
  s.estimate = std::log(static_cast<double>(s.laps.back().second)) / k_max;
  return s;
}

std::vector<std::vector<int>> MarkovData::matrix() const {
  std::vector<std::vector<int>> m(cells(), std::vector<int>(cells(), 0));
  for (std::size_t i = 0; i < cells(); ++i)
    for (std::size_t j = cover[i].first; j < cover[i].second; ++j) m[i][j] = 1;
  return m;
}

std::optional<MarkovData> markov_partition(const PLMap& f, std::size_t bound) {
  std::set<Rational> orbit;
  std::vector<Rational> frontier;
  for (const auto& b : f.breakpoints()) {
    if (orbit.insert(b.x).second) frontier.push_back(b.x);
  }
  while (!frontier.empty()) {
    if (orbit.size() > bound) return std::nullopt;
    Rational x = std::move(frontier.back());
    frontier.pop_back();
    Rational y = f(x);
    if (orbit.insert(y).second) frontier.push_back(std::move(y));
  }
  if (orbit.size() > bound) return std::nullopt;

  MarkovData m;
  m.partition.assign(orbit.begin(), orbit.end());
  const auto& p = m.partition;
  auto index_of = [&](const Rational& v) {
    return static_cast<std::size_t>(std::lower_bound(p.begin(), p.end(), v) - p.begin());
  };
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    std::size_t a = index_of(f(p[i]));
    std::size_t b = index_of(f(p[i + 1]));
    if (b < a) std::swap(a, b);
    m.cover.emplace_back(a, b);
  }

  m.lower = m.upper = 0.0;
  for (const auto& comp : components(m.cover)) {
    const Bracket b = component_radius(m.cover, comp);
    m.lower = std::max(m.lower, b.lower);
    m.upper = std::max(m.upper, b.upper);
  }
  m.spectral_radius = (m.lower + m.upper) / 2.0;

  const long n = std::lround(m.spectral_radius);
  if (n >= 1 && std::abs(m.spectral_radius - static_cast<double>(n)) < 1e-9 && m.cells() <= kExactCheckLimit &&
      singular_shift(m.matrix(), n))
    m.integer_radius = n;
  return m;
}

double entropy_markov(const MarkovData& m) {
  if (m.integer_radius) return std::log(static_cast<double>(*m.integer_radius));
  return m.spectral_radius <= 1.0 ? 0.0 : std::log(m.spectral_radius);
}

double entropy(const PLMap& f, int k_max, std::size_t cap) {
  if (auto m = markov_partition(f)) return entropy_markov(*m);
  return entropy_lap(f, k_max, cap).estimate;
}

double entropy_setvalued(const PLMap& f, const PLMap& g, int k_max, std::size_t cap) {
  if (!strongly_commute(f, g)) throw PreconditionError("entropy formula requires strongly commuting maps");
  return std::max(entropy(f, k_max, cap), entropy(g, k_max, cap));
}

}  // namespace icm

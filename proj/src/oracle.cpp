#include "icm/oracle.hpp"

#include <algorithm>
#include <unordered_map>

namespace icm {

GridSample sample_pullback(const PLMap& f, const PLMap& g, int n) {
  if (n < 2) throw DomainError("grid resolution must be at least 2");
  std::unordered_map<Rational, std::vector<int>> by_value;
  for (int j = 0; j <= n; ++j) by_value[g(Rational(j, n))].push_back(j);
  GridSample s;
  s.resolution = n;
  for (int i = 0; i <= n; ++i) {
    const Rational x(i, n);
    auto it = by_value.find(f(x));
    if (it == by_value.end()) continue;
    for (int j : it->second) s.points.push_back({x, Rational(j, n)});
  }
  std::sort(s.points.begin(), s.points.end());
  return s;
}

bool brute_force_strong_commute(const PLMap& f, const PLMap& g, int n) {
  if (n < 2) throw DomainError("grid resolution must be at least 2");
  for (int i = 0; i <= n; ++i) {
    const Rational x(i, n);
    std::vector<Rational> forward;
    for (const auto& y : preimage_point(g, x)) forward.push_back(f(y));
    std::sort(forward.begin(), forward.end());
    forward.erase(std::unique(forward.begin(), forward.end()), forward.end());
    if (forward != preimage_point(g, f(x))) return false;
  }
  return true;
}

}  // namespace icm

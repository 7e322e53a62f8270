#pragma once

#include <vector>

#include "icm/plmap.hpp"

namespace icm {

// Brute-force cross-checks built only on eval and preimage_point.

struct GridSample {
  int resolution = 0;
  std::vector<Point> points;  // sorted
};

// Grid points (i/N, j/N) with g(j/N) = f(i/N).
GridSample sample_pullback(const PLMap& f, const PLMap& g, int n);

// Compares {f(y) : g(y) = x} with {y : g(y) = f(x)} for every x = i/N.
// A necessary condition for strong commutation.
bool brute_force_strong_commute(const PLMap& f, const PLMap& g, int n);

}  // namespace icm

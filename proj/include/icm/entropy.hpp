#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "icm/plmap.hpp"

namespace icm {

// Number of maximal monotone branches, |C_f| + 1.
std::size_t lap(const PLMap& f);

struct LapSequence {
  std::vector<std::pair<int, std::size_t>> laps;  // (k, lap(f^k)) for k = 1..k_max
  double estimate = 0.0;                          // log(lap(f^k_max)) / k_max
};

// Throws ResourceError when an iterate exceeds `cap` breakpoints.
LapSequence entropy_lap(const PLMap& f, int k_max, std::size_t cap = kDefaultBreakpointCap);

inline constexpr std::size_t kDefaultMarkovBound = 4096;

struct MarkovData {
  std::vector<Rational> partition;
  // Cell i is mapped linearly onto the union of cells cover[i].first .. cover[i].second - 1.
  std::vector<std::pair<std::size_t, std::size_t>> cover;
  double spectral_radius = 0.0;
  // Certified bracket lower <= spectral radius <= upper.
  double lower = 0.0;
  double upper = 0.0;
  // Set when the spectral radius is an integer n, verified by exact
  // singularity of M - nI.
  std::optional<long> integer_radius;

  std::size_t cells() const { return cover.size(); }
  std::vector<std::vector<int>> matrix() const;
};

// Markov partition generated by the forward orbits of the breakpoints, or
// nothing when the orbit closure exceeds `bound` points.
std::optional<MarkovData> markov_partition(const PLMap& f, std::size_t bound = kDefaultMarkovBound);

// log of the spectral radius, accurate to 1e-9.
double entropy_markov(const MarkovData& m);

// Entropy of one map: Markov when a partition exists within the bound,
// otherwise the lap estimate with k_max iterates.
double entropy(const PLMap& f, int k_max = 12, std::size_t cap = kDefaultBreakpointCap);

// max(h(f), h(g)). Throws PreconditionError unless the maps strongly commute.
double entropy_setvalued(const PLMap& f, const PLMap& g, int k_max = 12,
                         std::size_t cap = kDefaultBreakpointCap);

}  // namespace icm

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "icm/plmap.hpp"
#include "icm/report.hpp"

namespace icm {

enum class Orientation { preserving, reversing, degenerate };

const char* to_string(Orientation o);

// Primary critical values of an onto map together with their exacting
// points. `values` always starts at 0 and ends at 1; the flags say whether
// those boundary entries are genuine critical values or conventions.
struct PrimaryValues {
  std::vector<Rational> values;
  // exacting[i] is the point t with f(t) = values[i], when it is determined.
  std::vector<std::optional<Rational>> exacting;
  bool zero_conventional = false;
  bool top_conventional = false;
  Orientation orientation = Orientation::degenerate;

  // Index of values[i] in the 0-or-1-based numbering: v_0 = 0 exists only
  // when 0 is conventional.
  std::size_t label(std::size_t i) const { return i + (zero_conventional ? 0 : 1); }
  // Whether [values[i], values[i+1]] is an odd-labelled gap.
  bool odd_gap(std::size_t i) const { return label(i) % 2 == 1; }
  // Values strictly inside (0,1).
  std::vector<Rational> interior() const;
};

// Throws PreconditionError if f is not onto.
PrimaryValues primary_critical_values(const PLMap& f);

Orientation orientation(const PLMap& f);

enum class IntervalClass { monotone, open_non_monotone, non_open_non_monotone };

const char* to_string(IntervalClass c);

struct RestrictionInfo {
  IntervalClass cls = IntervalClass::monotone;
  bool open = false;
  Interval image;

  friend bool operator==(const RestrictionInfo&, const RestrictionInfo&) = default;
};

// Classifies f|J as a map into K. When f(J) is not inside K the image itself
// is used as the codomain.
RestrictionInfo classify(const PLMap& f, const Interval& j, const Interval& k);

// Least p in the interior of J fixed by both maps such that [J.lo, p] and
// [p, J.hi] are invariant under both. Throws NotFoundError if none exists.
Rational split_common_fixed(const PLMap& f, const PLMap& g, const Interval& j);

enum class DecompositionCase { a, b, c };

const char* to_string(DecompositionCase c);

struct IntervalInfo {
  Interval interval;
  RestrictionInfo f;
  RestrictionInfo g;
  std::optional<RestrictionInfo> f2;  // cases b and c
  std::optional<RestrictionInfo> g2;  // case c

  friend bool operator==(const IntervalInfo&, const IntervalInfo&) = default;
};

// Invariant-interval decomposition of a strongly commuting pair. When
// `roles_swapped` is set, the fields named f and g describe the second and
// first input map respectively.
struct Decomposition {
  DecompositionCase kind = DecompositionCase::a;
  bool roles_swapped = false;
  std::vector<Rational> points;
  std::vector<IntervalInfo> intervals;
};

// Throws PreconditionError unless both maps are onto and strongly commute;
// InternalInvariantError if no case produces a verified decomposition.
Decomposition decompose(const PLMap& f, const PLMap& g);

// Recomputes every property of D from the maps and reports each check.
Report verify_decomposition(const PLMap& f, const PLMap& g, const Decomposition& d);

// Least common fixed point. Throws PreconditionError unless both maps are
// onto and strongly commute.
Rational common_fixed_point(const PLMap& f, const PLMap& g);

// JSON document; see README for the schema.
std::string to_json(const Decomposition& d, int indent = 2);

}  // namespace icm

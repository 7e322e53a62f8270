#include "icm/decompose.hpp"

#include <algorithm>
#include <functional>

#include "icm/setvalued.hpp"

namespace icm {

namespace {

// Membership of {x : pred(f(x))} along [0,1], sampled at every breakpoint,
// every solution of f(x) = v, and the midpoints between them. Between two
// consecutive samples f - v has constant sign, so runs of this sequence are
// exactly the components of the set.
struct LevelScan {
  std::vector<Rational> xs;
  std::vector<bool> in;

  LevelScan(const PLMap& f, const Rational& v, const std::function<bool(const Rational&)>& pred) {
    std::vector<Rational> samples;
    for (const auto& b : f.breakpoints()) samples.push_back(b.x);
    for (auto& x : preimage_point(f, v)) samples.push_back(std::move(x));
    std::sort(samples.begin(), samples.end());
    samples.erase(std::unique(samples.begin(), samples.end()), samples.end());
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (i > 0) {
        Rational mid = (samples[i - 1] + samples[i]) / Rational(2);
        in.push_back(pred(f(mid)));
        xs.push_back(std::move(mid));
      }
      in.push_back(pred(f(samples[i])));
      xs.push_back(samples[i]);
    }
  }

  int runs(bool value) const {
    int count = 0;
    for (std::size_t i = 0; i < in.size(); ++i)
      if (in[i] == value && (i == 0 || in[i - 1] != value)) ++count;
    return count;
  }

  // The extreme point of the `value`-set next to its complement, provided
  // both sets are nonempty and connected.
  std::optional<Rational> boundary(bool value) const {
    if (runs(value) != 1 || runs(!value) != 1) return std::nullopt;
    for (std::size_t i = 0; i + 1 < in.size(); ++i) {
      if (in[i] != in[i + 1]) return in[i] == value ? xs[i] : xs[i + 1];
    }
    return std::nullopt;
  }
};

struct PrimaryTest {
  bool primary = false;
  std::optional<Rational> boundary;
};

PrimaryTest test_primary(const PLMap& f, const Rational& v) {
  // Empty sets count as connected.
  const LevelScan below_or_at(f, v, [&](const Rational& y) { return y <= v; });
  const LevelScan above_or_at(f, v, [&](const Rational& y) { return v <= y; });
  PrimaryTest r;
  // Clause one: {f < v} and {f >= v} connected.
  if (above_or_at.runs(true) <= 1 && above_or_at.runs(false) <= 1) {
    r.primary = true;
    r.boundary = above_or_at.boundary(true);
  }
  // Clause two: {f <= v} and {f > v} connected.
  if (below_or_at.runs(true) <= 1 && below_or_at.runs(false) <= 1) {
    r.primary = true;
    if (!r.boundary) r.boundary = below_or_at.boundary(true);
  }
  return r;
}

std::string interval_str(const Interval& j) { return "[" + j.lo.str() + ", " + j.hi.str() + "]"; }

// Mirrored block [p_{l-i-1}, p_{l-i}].
Interval mirror(const std::vector<Rational>& p, std::size_t i) {
  const std::size_t l = p.size() - 1;
  return {p[l - i - 1], p[l - i]};
}

bool is_open_or_throw(const PLMap& f, const Interval& j) {
  if (!j.contains(image(f, j)))
    throw InternalInvariantError("interval " + interval_str(j) + " is not invariant");
  return is_open(f, j, j);
}

using SplitWanted = std::function<bool(const Interval&)>;

// Refines {0,1} until on every interval at least one of F|, G| is open, and
// additionally wherever `wanted` asks for it and a common fixed split exists.
std::vector<Rational> split_loop(const PLMap& F, const PLMap& G, const SplitWanted& wanted) {
  std::vector<Rational> pts{Rational(0), Rational(1)};
  const std::size_t limit = critical_points(F).size() + critical_points(G).size() + 1;
  std::size_t splits = 0;
  std::vector<Interval> unsplittable;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const Interval j{pts[i], pts[i + 1]};
      const bool needed = !is_open_or_throw(F, j) && !is_open_or_throw(G, j);
      if (!needed) {
        if (!wanted || std::find(unsplittable.begin(), unsplittable.end(), j) != unsplittable.end() ||
            !wanted(j))
          continue;
      }
      Rational p;
      try {
        p = split_common_fixed(F, G, j);
      } catch (const NotFoundError&) {
        if (needed)
          throw InternalInvariantError("no common fixed split point in " + interval_str(j) +
                                       " although neither restriction is open");
        unsplittable.push_back(j);
        continue;
      }
      if (++splits > limit) throw InternalInvariantError("splitting loop did not terminate");
      pts.insert(pts.begin() + static_cast<std::ptrdiff_t>(i) + 1, std::move(p));
      changed = true;
      break;
    }
  }
  return pts;
}

std::vector<Rational> with_images(const PLMap& f, std::vector<Rational> pts) {
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) pts.push_back(f(pts[i]));
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

std::vector<IntervalInfo> describe(const PLMap& f, const PLMap& g, DecompositionCase kind,
                                   const std::vector<Rational>& p) {
  std::vector<IntervalInfo> out;
  std::optional<PLMap> f2, g2;
  if (kind != DecompositionCase::a) f2 = compose(f, f);
  if (kind == DecompositionCase::c) g2 = compose(g, g);
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const Interval j{p[i], p[i + 1]};
    IntervalInfo info;
    info.interval = j;
    switch (kind) {
      case DecompositionCase::a:
        info.f = classify(f, j, j);
        info.g = classify(g, j, j);
        break;
      case DecompositionCase::b:
        info.f = classify(f, j, mirror(p, i));
        info.g = classify(g, j, j);
        info.f2 = classify(*f2, j, j);
        break;
      case DecompositionCase::c:
        info.f = classify(f, j, mirror(p, i));
        info.g = classify(g, j, mirror(p, i));
        info.f2 = classify(*f2, j, j);
        info.g2 = classify(*g2, j, j);
        break;
    }
    out.push_back(std::move(info));
  }
  return out;
}

bool case_a_clauses(const RestrictionInfo& f, const RestrictionInfo& g) {
  auto one_way = [](const RestrictionInfo& x, const RestrictionInfo& y) {
    if (y.cls == IntervalClass::open_non_monotone && !x.open) return false;
    if (y.cls == IntervalClass::non_open_non_monotone && x.cls != IntervalClass::monotone) return false;
    return true;
  };
  return one_way(f, g) && one_way(g, f);
}

std::optional<Decomposition> attempt(const PLMap& f, const PLMap& g, DecompositionCase kind, bool swapped) {
  const PLMap& F = swapped ? g : f;
  const PLMap& G = swapped ? f : g;
  Decomposition d;
  d.kind = kind;
  d.roles_swapped = swapped;
  try {
    switch (kind) {
      case DecompositionCase::a:
        d.points = split_loop(F, G, [&](const Interval& j) {
          return !case_a_clauses(classify(F, j, j), classify(G, j, j));
        });
        break;
      case DecompositionCase::b:
        d.points = with_images(F, split_loop(compose(F, F), G, nullptr));
        break;
      case DecompositionCase::c:
        d.points = with_images(G, with_images(F, split_loop(compose(F, F), compose(G, G), nullptr)));
        break;
    }
    d.intervals = describe(F, G, kind, d.points);
  } catch (const InternalInvariantError&) {
    return std::nullopt;
  } catch (const DomainError&) {
    return std::nullopt;
  }
  if (!verify_decomposition(f, g, d).all_passed()) return std::nullopt;
  return d;
}

}  // namespace

const char* to_string(Orientation o) {
  switch (o) {
    case Orientation::preserving: return "preserving";
    case Orientation::reversing: return "reversing";
    case Orientation::degenerate: return "degenerate";
  }
  return "?";
}

const char* to_string(IntervalClass c) {
  switch (c) {
    case IntervalClass::monotone: return "monotone";
    case IntervalClass::open_non_monotone: return "open-non-monotone";
    case IntervalClass::non_open_non_monotone: return "non-open-non-monotone";
  }
  return "?";
}

const char* to_string(DecompositionCase c) {
  switch (c) {
    case DecompositionCase::a: return "a";
    case DecompositionCase::b: return "b";
    case DecompositionCase::c: return "c";
  }
  return "?";
}

std::vector<Rational> PrimaryValues::interior() const {
  std::vector<Rational> out;
  for (const auto& v : values)
    if (v.sign() > 0 && v < Rational(1)) out.push_back(v);
  return out;
}

PrimaryValues primary_critical_values(const PLMap& f) {
  if (!is_onto(f)) throw PreconditionError("primary critical values require an onto map");
  std::vector<Rational> critical_values;
  for (const auto& c : critical_points(f).points) critical_values.push_back(f(c.x));
  std::sort(critical_values.begin(), critical_values.end());
  critical_values.erase(std::unique(critical_values.begin(), critical_values.end()), critical_values.end());

  PrimaryValues pv;
  pv.zero_conventional = !std::binary_search(critical_values.begin(), critical_values.end(), Rational(0));
  pv.top_conventional = !std::binary_search(critical_values.begin(), critical_values.end(), Rational(1));

  std::vector<std::optional<Rational>> boundary;
  if (pv.zero_conventional) {
    pv.values.push_back(Rational(0));
    boundary.emplace_back();
  }
  for (const auto& v : critical_values) {
    PrimaryTest t = test_primary(f, v);
    if (!t.primary) continue;
    pv.values.push_back(v);
    boundary.push_back(std::move(t.boundary));
  }
  if (pv.top_conventional) {
    pv.values.push_back(Rational(1));
    boundary.emplace_back();
  }

  const std::size_t k = pv.values.size();
  pv.exacting.assign(k, std::nullopt);
  for (std::size_t i = 0; i + 1 < k; ++i) {
    if (!pv.odd_gap(i)) continue;
    const auto comps = preimage_interval(f, {pv.values[i], pv.values[i + 1]});
    if (comps.size() != 1) continue;
    const Rational& a = comps[0].lo;
    const Rational& b = comps[0].hi;
    if (f(a) == pv.values[i] && f(b) == pv.values[i + 1]) {
      pv.exacting[i] = a;
      pv.exacting[i + 1] = b;
    } else if (f(b) == pv.values[i] && f(a) == pv.values[i + 1]) {
      pv.exacting[i] = b;
      pv.exacting[i + 1] = a;
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (!pv.exacting[i]) pv.exacting[i] = boundary[i];
  }
  auto unique_preimage = [&](std::size_t i) {
    if (pv.exacting[i]) return;
    const auto pre = preimage_point(f, pv.values[i]);
    if (pre.size() == 1) pv.exacting[i] = pre.front();
  };
  if (pv.zero_conventional) unique_preimage(0);
  if (pv.top_conventional) unique_preimage(k - 1);

  std::vector<Rational> known;
  for (const auto& t : pv.exacting)
    if (t) known.push_back(*t);
  const bool increasing = known.size() >= 2 && std::adjacent_find(known.begin(), known.end(), std::greater_equal<>()) == known.end();
  const bool decreasing = known.size() >= 2 && std::adjacent_find(known.begin(), known.end(), std::less_equal<>()) == known.end();
  if (increasing) {
    pv.orientation = Orientation::preserving;
  } else if (decreasing) {
    pv.orientation = Orientation::reversing;
  } else {
    const Rational f0 = f(Rational(0));
    const Rational f1 = f(Rational(1));
    pv.orientation = f0 < f1 ? Orientation::preserving
                             : (f1 < f0 ? Orientation::reversing : Orientation::degenerate);
  }
  return pv;
}

Orientation orientation(const PLMap& f) { return primary_critical_values(f).orientation; }

RestrictionInfo classify(const PLMap& f, const Interval& j, const Interval& k) {
  RestrictionInfo r;
  r.image = image(f, j);
  const Interval& target = k.contains(r.image) ? k : r.image;
  r.open = is_open(f, j, target);
  if (is_monotone(f, j)) r.cls = IntervalClass::monotone;
  else r.cls = r.open ? IntervalClass::open_non_monotone : IntervalClass::non_open_non_monotone;
  return r;
}

Rational split_common_fixed(const PLMap& f, const PLMap& g, const Interval& j) {
  const FixedSet common = intersect(fixed_points(f), fixed_points(g));
  std::vector<Rational> candidates;
  auto offer = [&](const Rational& x) {
    if (j.interior_contains(x)) candidates.push_back(x);
  };
  for (const auto& x : common.isolated) offer(x);
  for (const auto& s : common.segments) {
    offer(s.lo);
    offer(s.hi);
    for (const PLMap* m : {&f, &g})
      for (const auto& b : m->breakpoints())
        if (s.interior_contains(b.y)) offer(b.y);
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  for (const auto& p : candidates) {
    const Interval lower{j.lo, p};
    const Interval upper{p, j.hi};
    if (lower.contains(image(f, lower)) && lower.contains(image(g, lower)) &&
        upper.contains(image(f, upper)) && upper.contains(image(g, upper)))
      return p;
  }
  throw NotFoundError("no common fixed point splits " + interval_str(j) + " into invariant halves");
}

Decomposition decompose(const PLMap& f, const PLMap& g) {
  if (!is_onto(f) || !is_onto(g)) throw PreconditionError("decompose requires onto maps");
  if (!strongly_commute(f, g)) throw PreconditionError("maps do not strongly commute");

  const bool f_rev = orientation(f) == Orientation::reversing;
  const bool g_rev = orientation(g) == Orientation::reversing;

  struct Plan {
    DecompositionCase kind;
    bool swapped;
  };
  std::vector<Plan> plans{{DecompositionCase::a, false},
                          {DecompositionCase::b, false},
                          {DecompositionCase::b, true},
                          {DecompositionCase::c, false}};
  const std::size_t preferred = !f_rev && !g_rev ? 0 : (f_rev && !g_rev ? 1 : (!f_rev ? 2 : 3));
  std::rotate(plans.begin(), plans.begin() + static_cast<std::ptrdiff_t>(preferred), plans.begin() + static_cast<std::ptrdiff_t>(preferred) + 1);

  for (const auto& plan : plans) {
    if (auto d = attempt(f, g, plan.kind, plan.swapped)) return *d;
  }
  throw InternalInvariantError("no decomposition case could be verified for this pair");
}

Report verify_decomposition(const PLMap& f_in, const PLMap& g_in, const Decomposition& d) {
  const PLMap& f = d.roles_swapped ? g_in : f_in;
  const PLMap& g = d.roles_swapped ? f_in : g_in;
  Report r;
  const auto& p = d.points;

  bool ordered = p.size() >= 2 && p.front() == Rational(0) && p.back() == Rational(1);
  for (std::size_t i = 0; ordered && i + 1 < p.size(); ++i) ordered = p[i] < p[i + 1];
  r.add("points run strictly from 0 to 1", ordered);
  if (!ordered) return r;

  std::vector<IntervalInfo> fresh;
  try {
    fresh = describe(f, g, d.kind, p);
  } catch (const Error& e) {
    r.add("restrictions can be classified", false, e.what());
    return r;
  }
  r.add("stored interval data matches recomputation", fresh == d.intervals);

  const std::size_t l = p.size() - 1;
  for (std::size_t i = 0; i < l; ++i) {
    const IntervalInfo& info = fresh[i];
    const Interval& j = info.interval;
    const Interval m = mirror(p, i);
    const std::string where = interval_str(j) + ": ";
    switch (d.kind) {
      case DecompositionCase::a:
        r.add(where + "invariant under f", j.contains(info.f.image), "image " + interval_str(info.f.image));
        r.add(where + "invariant under g", j.contains(info.g.image), "image " + interval_str(info.g.image));
        r.add(where + "clauses (i) and (ii)", case_a_clauses(info.f, info.g),
              std::string("f ") + to_string(info.f.cls) + ", g " + to_string(info.g.cls));
        break;
      case DecompositionCase::b:
      case DecompositionCase::c: {
        const bool c = d.kind == DecompositionCase::c;
        r.add(where + "f maps onto the mirrored block", info.f.image == m, "image " + interval_str(info.f.image));
        if (c) r.add(where + "g maps onto the mirrored block", info.g.image == m, "image " + interval_str(info.g.image));
        else r.add(where + "invariant under g", j.contains(info.g.image), "image " + interval_str(info.g.image));
        const RestrictionInfo& cond = c ? *info.g2 : info.g;
        const bool clause_i = cond.cls != IntervalClass::open_non_monotone || (info.f2->open && info.f.open);
        const bool clause_ii = cond.cls != IntervalClass::non_open_non_monotone ||
                               (info.f.cls == IntervalClass::monotone &&
                                fresh[l - 1 - i].f.cls == IntervalClass::monotone);
        r.add(where + "clause (i)", clause_i);
        r.add(where + "clause (ii)", clause_ii);
        break;
      }
    }
  }
  return r;
}

Rational common_fixed_point(const PLMap& f, const PLMap& g) {
  if (!is_onto(f) || !is_onto(g)) throw PreconditionError("common fixed point requires onto maps");
  if (!strongly_commute(f, g)) throw PreconditionError("maps do not strongly commute");
  const auto least = intersect(fixed_points(f), fixed_points(g)).least();
  if (!least) throw InternalInvariantError("strongly commuting maps without a common fixed point");
  return *least;
}

}  // namespace icm

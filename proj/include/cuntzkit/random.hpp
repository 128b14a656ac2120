#pragma once

#include <random>
#include <vector>

#include "cuntzkit/lsc.hpp"

namespace cuntzkit {

/// The single generator type threaded through every randomized routine.
using Rng = std::mt19937_64;

inline long uniform_int(Rng& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline bool coin(Rng& rng, int percent = 50) { return uniform_int(rng, 0, 99) < percent; }

/// Random space with 1..max_components components (arcs, circles, points).
inline SpacePtr random_space(Rng& rng, int max_components = 4, bool allow_circles = true) {
  static const long nums[] = {1, 1, 3, 2};
  static const long dens[] = {1, 2, 2, 1};
  int n = static_cast<int>(uniform_int(rng, 1, max_components));
  std::vector<Component> comps;
  for (int i = 0; i < n; ++i) {
    long k = uniform_int(rng, 0, 9);
    long li = uniform_int(rng, 0, 3);
    Rational len = make_rational(nums[li], dens[li]);
    if (k == 0) comps.push_back(Component::point());
    else if (allow_circles && k <= 3) comps.push_back(Component::circle(len));
    else comps.push_back(Component::arc(len));
  }
  return make_space(Space(std::move(comps)));
}

/// Random open set: up to max_intervals raw intervals per component with
/// endpoints on the grid L/den.
inline OpenSet random_open_set(Rng& rng, const SpacePtr& space, int max_intervals = 6, long den = 8) {
  IntervalSoup soup;
  soup.sets.resize(space->size());
  soup.full_flags.assign(space->size(), false);
  for (std::size_t ci = 0; ci < space->size(); ++ci) {
    const Component& c = (*space)[ci];
    if (c.kind == ComponentKind::point) {
      soup.full_flags[ci] = coin(rng);
      continue;
    }
    long mode = uniform_int(rng, 0, 9);
    if (mode == 0) continue;
    if (mode == 1) {
      soup.full_flags[ci] = true;
      continue;
    }
    long count = uniform_int(rng, 1, max_intervals);
    for (long k = 0; k < count; ++k) {
      if (c.kind == ComponentKind::arc) {
        long a = uniform_int(rng, 0, den - 1);
        long b = uniform_int(rng, a + 1, den);
        Interval iv{c.length * a / den, c.length * b / den, false, false};
        if (a == 0) iv.incl_left = coin(rng);
        if (b == den) iv.incl_right = coin(rng);
        soup.sets[ci].push_back(iv);
      } else {
        long a = uniform_int(rng, 0, den - 1);
        long len = uniform_int(rng, 1, den - 1);
        soup.sets[ci].push_back({c.length * a / den, c.length * (a + len) / den, false, false});
      }
    }
  }
  return OpenSet::normalize(space, soup);
}

/// Random closed set built as finitely many closed intervals and points.
inline ClosedSet random_closed_set(Rng& rng, const SpacePtr& space, int max_intervals = 6, long den = 8) {
  IntervalSoup soup;
  soup.sets.resize(space->size());
  soup.full_flags.assign(space->size(), false);
  for (std::size_t ci = 0; ci < space->size(); ++ci) {
    const Component& c = (*space)[ci];
    if (c.kind == ComponentKind::point) {
      soup.full_flags[ci] = coin(rng);
      continue;
    }
    long count = uniform_int(rng, 0, max_intervals);
    for (long k = 0; k < count; ++k) {
      long a = uniform_int(rng, 0, den - 1);
      long b = c.kind == ComponentKind::arc ? uniform_int(rng, a, den) : a + uniform_int(rng, 0, den - 1);
      soup.sets[ci].push_back({c.length * a / den, c.length * b / den, true, true});
    }
  }
  return ClosedSet::from_intervals(space, soup);
}

inline LscElement random_indicator(Rng& rng, const SpacePtr& space, int max_intervals = 6) {
  return LscElement::indicator(random_open_set(rng, space, max_intervals));
}

/// Random finitely presented element with up to max_levels levels; with the
/// given percentage it also gets a nonempty-ish infinity level.
inline LscElement random_element(Rng& rng, const SpacePtr& space, int max_levels = 3, int infinity_percent = 0,
                                 int max_intervals = 4) {
  long m = uniform_int(rng, 0, max_levels);
  std::vector<OpenSet> levels;
  OpenSet cur = OpenSet::full(space);
  for (long i = 0; i < m; ++i) {
    cur = cur.intersect(random_open_set(rng, space, max_intervals));
    levels.push_back(cur);
  }
  OpenSet inf = OpenSet::empty(space);
  if (coin(rng, infinity_percent)) inf = cur.intersect(random_open_set(rng, space, max_intervals));
  return LscElement(space, std::move(levels), std::move(inf));
}

/// Random decreasing sequence of exactly m elements below the unit (zeros allowed).
inline std::vector<LscElement> random_decreasing_indicators(Rng& rng, const SpacePtr& space, long m, int max_intervals = 6) {
  std::vector<LscElement> out;
  OpenSet cur = OpenSet::full(space);
  for (long i = 0; i < m; ++i) {
    cur = cur.intersect(random_open_set(rng, space, max_intervals));
    out.push_back(LscElement::indicator(cur));
  }
  return out;
}

}  // namespace cuntzkit

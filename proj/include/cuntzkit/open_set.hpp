#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "cuntzkit/region.hpp"

namespace cuntzkit {

using SpacePtr = std::shared_ptr<const Space>;

inline SpacePtr make_space(Space s) { return std::make_shared<const Space>(std::move(s)); }

/// A raw interval as it appears in input: (a, b) with optional closed ends.
/// On circles b may exceed the length to encode a wrapping arc.
struct Interval {
  Rational a;
  Rational b;
  bool incl_left = false;
  bool incl_right = false;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Unnormalized description of a subset: intervals per component plus a
/// per-component "everything" flag (full circle, present point, whole arc).
struct IntervalSoup {
  std::vector<std::vector<Interval>> sets;
  std::vector<bool> full_flags;
};

using detail::Run;

class ClosedSet;

namespace detail {

inline Region region_from_soup(const SpacePtr& space, const IntervalSoup& soup, bool closed_input) {
  const Space& sp = *space;
  if (soup.sets.size() > sp.size() || soup.full_flags.size() > sp.size())
    throw MalformedInput("more interval lists than components");
  std::vector<Cells> cells;
  for (std::size_t ci = 0; ci < sp.size(); ++ci) {
    const Component& c = sp[ci];
    const std::string where = "component " + std::to_string(ci) + ": ";
    std::vector<Interval> ivs = ci < soup.sets.size() ? soup.sets[ci] : std::vector<Interval>{};
    bool full = ci < soup.full_flags.size() && soup.full_flags[ci];
    if (c.kind == ComponentKind::point) {
      if (!ivs.empty()) throw MalformedInput(where + "point components take no intervals");
      cells.push_back(uniform_cells(c, full));
      continue;
    }
    if (full) {
      cells.push_back(uniform_cells(c, true));
      continue;
    }
    std::vector<Rational> cuts;
    std::vector<Interval> kept;
    for (const auto& iv : ivs) {
      if (c.kind == ComponentKind::arc) {
        if (iv.a < 0 || iv.b > c.length) throw MalformedInput(where + "interval leaves the arc");
        if (iv.a > iv.b) throw MalformedInput(where + "interval with a > b");
        if (!closed_input) {
          if (iv.incl_left && iv.a != 0) throw MalformedInput(where + "closed left end is only allowed at 0");
          if (iv.incl_right && iv.b != c.length) throw MalformedInput(where + "closed right end is only allowed at the arc end");
          if (iv.a == iv.b) {
            if (iv.incl_left || iv.incl_right) throw MalformedInput(where + "a single point is not open");
            continue;
          }
        }
      } else {
        if (iv.a < 0 || iv.b > 2 * c.length) throw MalformedInput(where + "circle interval endpoints must lie in [0, 2L]");
        if (iv.a > iv.b) throw MalformedInput(where + "interval with a > b");
        if (!closed_input) {
          if (iv.incl_left || iv.incl_right) throw MalformedInput(where + "circle intervals are open");
          if (iv.b - iv.a > c.length) throw MalformedInput(where + "wrapping interval longer than the circle");
          if (iv.a == iv.b) continue;
        } else if (iv.b - iv.a >= c.length) {
          full = true;
        }
      }
      cuts.push_back(iv.a);
      cuts.push_back(iv.b);
      kept.push_back(iv);
    }
    if (full) {
      cells.push_back(uniform_cells(c, true));
      continue;
    }
    const bool circle = c.kind == ComponentKind::circle;
    auto in_interval = [&](const Interval& iv, const Rational& x) {
      // x is reduced; on circles also test the lifted copy x + L.
      auto test = [&](const Rational& t) {
        bool left = iv.incl_left ? t >= iv.a : t > iv.a;
        bool right = iv.incl_right ? t <= iv.b : t < iv.b;
        return left && right;
      };
      return test(x) || (circle && test(x + c.length));
    };
    cells.push_back(cells_from_predicate(c, std::move(cuts), [&](const Rational& x) {
      for (const auto& iv : kept)
        if (in_interval(iv, x)) return true;
      return false;
    }));
  }
  return Region(space, std::move(cells));
}

inline IntervalSoup soup_from_region(const Region& r) {
  IntervalSoup soup;
  const Space& sp = r.space();
  for (std::size_t ci = 0; ci < sp.size(); ++ci) {
    const Component& c = sp[ci];
    const Cells& cells = r.cells(ci);
    std::vector<Interval> ivs;
    bool full = false;
    if (c.kind == ComponentKind::arc) {
      for (const auto& run : cell_runs(c, cells)) ivs.push_back({run.lo, run.hi, run.lo_closed, run.hi_closed});
    } else if (cells_full(cells)) {
      full = true;
    } else {
      for (const auto& run : cell_runs(c, cells)) ivs.push_back({run.lo, run.hi, run.lo_closed, run.hi_closed});
    }
    soup.sets.push_back(std::move(ivs));
    soup.full_flags.push_back(full);
  }
  return soup;
}

/// Geodesic distance between reduced circle coordinates.
inline Rational circle_distance(const Rational& x, const Rational& y, const Rational& len) {
  Rational r = wrap(y - x, len);
  return r <= len - r ? r : Rational(len - r);
}

/// Diameter of a set of a single component, computed on its closure.
inline Rational component_diameter(const Component& c, const Cells& closed) {
  if (cells_empty(closed)) return 0;
  if (c.kind == ComponentKind::point) return 0;
  if (c.kind == ComponentKind::arc) {
    auto runs = cell_runs(c, closed);
    return runs.back().hi - runs.front().lo;
  }
  const Rational& L = c.length;
  const Rational half = L / 2;
  if (cells_full(closed)) return half;
  auto runs = cell_runs(c, closed);
  Rational best = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    for (std::size_t j = i; j < runs.size(); ++j) {
      const Run& I = runs[i];
      const Run& J = runs[j];
      // Differences y - x for x in I, y in J range over [J.lo - I.hi, J.hi - I.lo];
      // an antipodal pair exists iff that range meets half + kL.
      Rational lo = J.lo - I.hi, hi = J.hi - I.lo;
      Rational t = (lo - half) / L;
      mpz_class k;
      mpz_cdiv_q(k.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
      if (half + Rational(k) * L <= hi) return half;
      for (const Rational* x : {&I.lo, &I.hi})
        for (const Rational* y : {&J.lo, &J.hi}) {
          Rational d = circle_distance(wrap(*x, L), wrap(*y, L), L);
          if (d > best) best = d;
        }
    }
  }
  return best;
}

inline Rational region_diameter(const Region& r) {
  Region cl = r.closure();
  const Space& sp = r.space();
  std::size_t touched = 0;
  Rational best = 0;
  for (std::size_t ci = 0; ci < sp.size(); ++ci) {
    if (cells_empty(cl.cells(ci))) continue;
    ++touched;
    Rational d = component_diameter(sp[ci], cl.cells(ci));
    if (d > best) best = d;
  }
  if (touched >= 2 && best < 2) best = 2;
  return best;
}

}  // namespace detail

/// Canonical open subset of a space.
class OpenSet {
 public:
  OpenSet() = default;
  explicit OpenSet(detail::Region r) : r_(std::move(r)) {}

  static OpenSet empty(const SpacePtr& s) { return OpenSet(detail::Region::uniform(s, false)); }
  static OpenSet full(const SpacePtr& s) { return OpenSet(detail::Region::uniform(s, true)); }

  /// Validates and canonicalizes a raw soup of open intervals.
  static OpenSet normalize(const SpacePtr& s, const IntervalSoup& soup) {
    return OpenSet(detail::region_from_soup(s, soup, false));
  }

  /// Convenience: a single open interval on one component.
  static OpenSet interval(const SpacePtr& s, std::size_t component, Rational a, Rational b,
                          bool incl_left = false, bool incl_right = false) {
    IntervalSoup soup;
    soup.sets.resize(s->size());
    if (component >= s->size()) throw MalformedInput("no component " + std::to_string(component));
    soup.sets[component].push_back({std::move(a), std::move(b), incl_left, incl_right});
    return normalize(s, soup);
  }

  /// The whole of one component (clopen).
  static OpenSet component(const SpacePtr& s, std::size_t component) {
    IntervalSoup soup;
    soup.full_flags.assign(s->size(), false);
    soup.full_flags.at(component) = true;
    return normalize(s, soup);
  }

  const Space& space() const { return r_.space(); }
  const SpacePtr& space_ptr() const { return r_.space_ptr(); }
  const detail::Region& region() const { return r_; }

  bool contains(const Point& p) const { return r_.contains(p); }
  bool empty() const { return r_.empty(); }
  bool is_full() const { return r_.full(); }

  OpenSet unite(const OpenSet& o) const { return OpenSet(r_.unite(o.r_)); }
  OpenSet intersect(const OpenSet& o) const { return OpenSet(r_.intersect(o.r_)); }
  bool subset_of(const OpenSet& o) const { return r_.subset_of(o.r_); }
  bool intersects(const OpenSet& o) const { return r_.intersects(o.r_); }

  inline ClosedSet closure() const;
  inline ClosedSet complement() const;
  inline bool compactly_contained_in(const OpenSet& o) const;

  Rational diameter() const { return detail::region_diameter(r_); }

  /// Maximal connected open pieces, ordered by component then left endpoint.
  std::vector<OpenSet> connected_components() const {
    std::vector<OpenSet> out;
    const Space& sp = space();
    for (std::size_t ci = 0; ci < sp.size(); ++ci) {
      const auto& c = sp[ci];
      const auto& cells = r_.cells(ci);
      if (detail::cells_empty(cells)) continue;
      if (c.kind == ComponentKind::point || detail::cells_full(cells)) {
        out.push_back(OpenSet(r_.restrict_to(ci)));
        continue;
      }
      for (const auto& run : detail::cell_runs(c, cells)) {
        IntervalSoup soup;
        soup.sets.resize(sp.size());
        soup.sets[ci].push_back({run.lo, run.hi, run.lo_closed, run.hi_closed});
        out.push_back(normalize(space_ptr(), soup));
      }
    }
    return out;
  }

  bool connected() const { return connected_components().size() == 1; }

  IntervalSoup to_soup() const { return detail::soup_from_region(r_); }

  friend bool operator==(const OpenSet& a, const OpenSet& b) { return a.r_ == b.r_; }

 private:
  detail::Region r_;
};

/// Canonical closed subset of a space.
class ClosedSet {
 public:
  ClosedSet() = default;
  explicit ClosedSet(detail::Region r) : r_(std::move(r)) {}

  static ClosedSet empty(const SpacePtr& s) { return ClosedSet(detail::Region::uniform(s, false)); }
  static ClosedSet full(const SpacePtr& s) { return ClosedSet(detail::Region::uniform(s, true)); }

  /// Builds from closed intervals [a, b] (a = b allowed); on circles b may
  /// exceed the length and b - a >= L means the full circle.
  static ClosedSet from_intervals(const SpacePtr& s, IntervalSoup soup) {
    for (auto& list : soup.sets)
      for (auto& iv : list) iv.incl_left = iv.incl_right = true;
    return ClosedSet(detail::region_from_soup(s, soup, true));
  }

  const Space& space() const { return r_.space(); }
  const SpacePtr& space_ptr() const { return r_.space_ptr(); }
  const detail::Region& region() const { return r_; }

  bool contains(const Point& p) const { return r_.contains(p); }
  bool empty() const { return r_.empty(); }
  bool is_full() const { return r_.full(); }

  ClosedSet unite(const ClosedSet& o) const { return ClosedSet(r_.unite(o.r_)); }
  ClosedSet intersect(const ClosedSet& o) const { return ClosedSet(r_.intersect(o.r_)); }
  bool subset_of(const ClosedSet& o) const { return r_.subset_of(o.r_); }
  bool subset_of(const OpenSet& o) const { return r_.subset_of(o.region()); }

  OpenSet interior() const { return OpenSet(r_.interior()); }
  OpenSet complement() const { return OpenSet(r_.complement()); }

  Rational diameter() const { return detail::region_diameter(r_); }

  IntervalSoup to_soup() const { return detail::soup_from_region(r_); }

  friend bool operator==(const ClosedSet& a, const ClosedSet& b) { return a.r_ == b.r_; }

 private:
  detail::Region r_;
};

inline ClosedSet OpenSet::closure() const { return ClosedSet(r_.closure()); }
inline ClosedSet OpenSet::complement() const { return ClosedSet(r_.complement()); }
inline bool OpenSet::compactly_contained_in(const OpenSet& o) const { return r_.closure().subset_of(o.r_); }

inline bool compactly_contained(const OpenSet& a, const OpenSet& b) { return a.compactly_contained_in(b); }

/// Open eps-neighbourhood of a closed set (eps > 0), within each component.
inline OpenSet thicken(const ClosedSet& c, const Rational& eps) {
  if (eps <= 0) throw PreconditionViolated("thicken needs a positive radius");
  const Space& sp = c.space();
  IntervalSoup soup;
  soup.sets.resize(sp.size());
  soup.full_flags.assign(sp.size(), false);
  for (std::size_t ci = 0; ci < sp.size(); ++ci) {
    const auto& comp = sp[ci];
    const auto& cells = c.region().cells(ci);
    if (detail::cells_empty(cells)) continue;
    if (comp.kind == ComponentKind::point || detail::cells_full(cells)) {
      soup.full_flags[ci] = true;
      continue;
    }
    for (const auto& run : detail::cell_runs(comp, cells)) {
      Rational lo = run.lo - eps, hi = run.hi + eps;
      if (comp.kind == ComponentKind::arc) {
        bool incl_l = lo < 0, incl_r = hi > comp.length;
        if (incl_l) lo = 0;
        if (incl_r) hi = comp.length;
        soup.sets[ci].push_back({lo, hi, incl_l, incl_r});
      } else {
        if (hi - lo > comp.length) {
          soup.full_flags[ci] = true;
          break;
        }
        Rational shift = lo - wrap(lo, comp.length);
        soup.sets[ci].push_back({lo - shift, hi - shift, false, false});
      }
    }
  }
  return OpenSet::normalize(c.space_ptr(), soup);
}

}  // namespace cuntzkit

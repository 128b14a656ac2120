#pragma once

#include <algorithm>
#include <vector>

#include "cuntzkit/open_set.hpp"

namespace cuntzkit {

/// Collects breakpoints of several sets and produces the finite grid of test
/// points: every breakpoint, every component end, and every midpoint between
/// consecutive breakpoints. Two constructible sets whose memberships agree on
/// such a grid (built from both their breakpoints) are equal.
class Grid {
 public:
  explicit Grid(const Space& space) : space_(space), cuts_(space.size()) {}

  Grid& add(const detail::Region& r) {
    for (std::size_t ci = 0; ci < space_.size(); ++ci)
      for (const auto& x : r.cells(ci).cuts) cuts_[ci].push_back(x);
    return *this;
  }
  Grid& add(const OpenSet& s) { return add(s.region()); }
  Grid& add(const ClosedSet& s) { return add(s.region()); }
  Grid& add_coordinate(std::size_t component, const Rational& x) {
    cuts_.at(component).push_back(x);
    return *this;
  }

  std::vector<Point> points() const {
    std::vector<Point> out;
    for (std::size_t ci = 0; ci < space_.size(); ++ci) {
      const Component& c = space_[ci];
      if (c.kind == ComponentKind::point) {
        out.push_back({ci, 0});
        continue;
      }
      std::vector<Rational> xs = cuts_[ci];
      if (c.kind == ComponentKind::circle) {
        for (auto& x : xs) x = wrap(x, c.length);
        xs.push_back(0);
      } else {
        xs.push_back(0);
        xs.push_back(c.length);
      }
      std::sort(xs.begin(), xs.end());
      xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
      for (std::size_t i = 0; i < xs.size(); ++i) {
        out.push_back({ci, xs[i]});
        if (i + 1 < xs.size()) out.push_back({ci, midpoint(xs[i], xs[i + 1])});
        else if (c.kind == ComponentKind::circle) out.push_back({ci, wrap(midpoint(xs[i], c.length), c.length)});
      }
    }
    return out;
  }

 private:
  const Space& space_;
  std::vector<std::vector<Rational>> cuts_;
};

/// Membership of a point in a raw interval soup, straight from the intervals.
inline bool soup_contains(const Space& space, const IntervalSoup& soup, const Point& p) {
  const Component& c = space[p.component];
  if (p.component < soup.full_flags.size() && soup.full_flags[p.component]) return true;
  if (p.component >= soup.sets.size()) return false;
  for (const auto& iv : soup.sets[p.component]) {
    for (int lift = 0; lift < (c.kind == ComponentKind::circle ? 2 : 1); ++lift) {
      Rational t = p.coord + c.length * lift;
      bool left = iv.incl_left ? t >= iv.a : t > iv.a;
      bool right = iv.incl_right ? t <= iv.b : t < iv.b;
      if (left && right) return true;
    }
  }
  return false;
}

}  // namespace cuntzkit

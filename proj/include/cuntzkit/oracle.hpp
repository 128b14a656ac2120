#pragma once

#include <functional>
#include <vector>

#include "cuntzkit/grid.hpp"
#include "cuntzkit/lsc.hpp"

// Independent checks used by the test suites and by `verify lemmas`. They
// only rely on pointwise evaluation and point-set operations, never on the
// level-set formulas they are meant to check.

namespace cuntzkit::oracle {

inline Grid& add_element(Grid& g, const LscElement& f) {
  for (const auto& l : f.levels()) g.add(l);
  g.add(f.infinity());
  return g;
}

inline std::vector<Point> grid_of(const std::vector<const LscElement*>& fs) {
  Grid g(fs.front()->space());
  for (const auto* f : fs) add_element(g, *f);
  return g.points();
}

/// True if out(p) == expected(p) at every grid point of the given operands
/// and of out.
inline bool agrees(const LscElement& out, const std::vector<const LscElement*>& operands,
                   const std::function<ExtNat(const Point&)>& expected) {
  std::vector<const LscElement*> all = operands;
  all.push_back(&out);
  for (const auto& p : grid_of(all))
    if (out.eval(p) != expected(p)) return false;
  return true;
}

inline bool pointwise_leq(const LscElement& f, const LscElement& g) {
  for (const auto& p : grid_of({&f, &g}))
    if (f.eval(p) > g.eval(p)) return false;
  return true;
}

/// {p : dist(p, X \ U) > r}. Components contained in U stay whole.
inline OpenSet shrink(const OpenSet& u, const Rational& r) {
  const Space& sp = u.space();
  ClosedSet rest = u.complement();
  IntervalSoup soup;
  soup.sets.resize(sp.size());
  soup.full_flags.assign(sp.size(), false);
  for (std::size_t ci = 0; ci < sp.size(); ++ci) {
    const auto& c = sp[ci];
    const auto& cells = rest.region().cells(ci);
    if (detail::cells_empty(cells)) continue;
    if (c.kind == ComponentKind::point || detail::cells_full(cells)) {
      soup.full_flags[ci] = true;
      continue;
    }
    for (const auto& run : detail::cell_runs(c, cells)) {
      Rational lo = run.lo - r, hi = run.hi + r;
      if (c.kind == ComponentKind::arc) {
        if (lo < 0) lo = 0;
        if (hi > c.length) hi = c.length;
        soup.sets[ci].push_back({lo, hi, true, true});
      } else if (hi - lo >= c.length) {
        soup.full_flags[ci] = true;
      } else {
        Rational shift = lo - wrap(lo, c.length);
        soup.sets[ci].push_back({lo - shift, hi - shift, true, true});
      }
    }
  }
  return ClosedSet::from_intervals(u.space_ptr(), soup).complement();
}

/// k-th member of an increasing sequence with supremum g:
/// Σ_{n=1}^{m+k} χ(shrink_{1/k}({g >= n})).
inline LscElement approximant(const LscElement& g, long k) {
  Rational r = make_rational(1, k);
  std::vector<OpenSet> levels;
  for (std::size_t n = 1; n <= g.height() + static_cast<std::size_t>(k); ++n) levels.push_back(shrink(g.level(n), r));
  // The shrunk sets decrease, so they are the levels of the sum.
  return LscElement(g.space_ptr(), std::move(levels), OpenSet::empty(g.space_ptr()));
}

/// f ≪ g decided from the definition on the approximating sequence of g:
/// f ≪ g iff f <= g_k for some k. k runs over powers of two until 1/k is
/// below a quarter of the smallest gap between breakpoints, after which the
/// approximants no longer change combinatorially.
inline bool way_below(const LscElement& f, const LscElement& g) {
  const Space& sp = f.space();
  Rational min_gap = 1;
  for (std::size_t ci = 0; ci < sp.size(); ++ci) {
    const auto& c = sp[ci];
    if (c.kind == ComponentKind::point) continue;
    std::vector<Rational> xs{0};
    if (c.kind == ComponentKind::arc) xs.push_back(c.length);
    for (const auto* h : {&f, &g}) {
      for (const auto& l : h->levels())
        for (const auto& x : l.region().cells(ci).cuts) xs.push_back(x);
      for (const auto& x : h->infinity().region().cells(ci).cuts) xs.push_back(x);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) min_gap = std::min(min_gap, Rational(xs[i + 1] - xs[i]));
    if (c.kind == ComponentKind::circle) min_gap = std::min(min_gap, Rational(xs.front() + c.length - xs.back()));
  }
  long limit = 1;
  while (Rational(limit) * min_gap <= 4 || limit <= static_cast<long>(f.height()) + 1) limit *= 2;
  for (long k = 1; k <= limit; k *= 2)
    if (pointwise_leq(f, approximant(g, k))) return true;
  return false;
}

/// x + y <= z, checked pointwise.
inline bool sum_below(const LscElement& x, const LscElement& y, const LscElement& z) {
  for (const auto& p : grid_of({&x, &y, &z}))
    if (x.eval(p) + y.eval(p) > z.eval(p)) return false;
  return true;
}

}  // namespace cuntzkit::oracle

#pragma once

#include <array>
#include <string>
#include <vector>

#include "cuntzkit/grid.hpp"
#include "cuntzkit/lsc.hpp"

namespace cuntzkit {

/// An indicator y ≤ 1 with its open support U_y and closed complement C_y,
/// regenerated from y on construction.
struct DualPair {
  LscElement y;
  OpenSet u;
  ClosedSet c;

  explicit DualPair(LscElement e) : y(std::move(e)), u(y.support()), c(u.complement()) {
    if (!y.is_indicator()) throw PreconditionViolated("element is not below the unit");
  }
};

/// y\1: the largest x with x + y ≤ 1.
inline LscElement complement_in_unit(const LscElement& y) { return almost_complement(y, LscElement::unit(y.space_ptr())); }

struct BasicTopReport {
  // Each entry compares the order-theoretic side with the point-set side.
  std::array<bool, 6> holds{};
  static constexpr std::array<const char*, 6> names{
      "closed sets reverse the order",        "support and closed set are complementary",
      "support inside closed set iff meet 0", "closure of support is the closed set of the complement",
      "interior of closed set is the support of the complement", "closed set inside support iff join is 1"};
  bool all() const {
    for (bool b : holds)
      if (!b) return false;
    return true;
  }
};

inline BasicTopReport verify_basictop(const LscElement& y, const LscElement& z) {
  require_same_space(y.space(), z.space());
  DualPair a(y), b(z);
  const SpacePtr& sp = y.space_ptr();
  const LscElement e = LscElement::unit(sp);
  const LscElement yc = complement_in_unit(y);
  const OpenSet u_yc = yc.support();
  BasicTopReport r;
  r.holds[0] = a.c.subset_of(b.c) == leq(z, y);
  // Pointwise: y(p) ≥ 1 exactly off C_y, on the grid of both supports.
  bool part = true;
  Grid grid(*sp);
  grid.add(a.u).add(b.u);
  for (const auto& p : grid.points()) part = part && ((y.eval(p) >= ExtNat{1, false}) != a.c.contains(p));
  r.holds[1] = part;
  r.holds[2] = a.u.intersect(b.c.complement()).empty() == meet(y, z).is_zero();
  r.holds[3] = a.u.closure() == u_yc.complement();
  r.holds[4] = a.c.interior() == u_yc;
  r.holds[5] = a.c.subset_of(b.u) == (join(y, z) == e);
  return r;
}

/// cl(U_y) ⊆ U_z agrees with y ≪ z.
inline bool verify_hausdorff_wayb(const LscElement& y, const LscElement& z) {
  DualPair a(y), b(z);
  return a.u.closure().subset_of(b.u) == way_below(y, z);
}

/// Closed sets of a finite family: intersections match joins, unions match
/// meets, and distinct grid points are separated by closed sets C_y.
inline bool verify_topology_laws(const std::vector<LscElement>& family, const SpacePtr& sp, std::size_t max_points = 24) {
  const LscElement e = LscElement::unit(sp);
  LscElement j = LscElement::zero(sp), m = e;
  ClosedSet inter = ClosedSet::full(sp), uni = ClosedSet::empty(sp);
  Grid grid(*sp);
  for (const auto& y : family) {
    DualPair p(y);
    inter = inter.intersect(p.c);
    uni = uni.unite(p.c);
    j = join(j, y);
    m = meet(m, y);
    grid.add(p.u);
  }
  if (!(inter == DualPair(j).c)) return false;
  if (!(uni == DualPair(m).c)) return false;
  auto pts = grid.points();
  if (pts.size() > max_points) pts.resize(max_points);
  for (const auto& p : pts)
    for (const auto& q : pts) {
      if (p.component == q.component && p.coord == q.coord) continue;
      // C_y = {p} with y the indicator of X minus p.
      IntervalSoup soup;
      soup.sets.resize(sp->size());
      soup.full_flags.assign(sp->size(), false);
      if ((*sp)[p.component].kind == ComponentKind::point) soup.full_flags[p.component] = true;
      else soup.sets[p.component].push_back({p.coord, p.coord, true, true});
      DualPair sep(LscElement::indicator(ClosedSet::from_intervals(sp, soup).complement()));
      if (!sep.c.contains(p) || sep.c.contains(q)) return false;
    }
  return true;
}

/// U ↦ χ_U ↦ U_{χ_U} is the identity.
inline bool round_trip(const OpenSet& u) { return DualPair(LscElement::indicator(u)).u == u; }

}  // namespace cuntzkit

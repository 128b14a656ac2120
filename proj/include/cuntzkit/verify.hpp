#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cuntzkit/checkers.hpp"
#include "cuntzkit/duality.hpp"
#include "cuntzkit/oracle.hpp"
#include "cuntzkit/random.hpp"

// Randomized lemma suite behind `verify lemmas`. Every lemma draws from one
// generator, in id order, so a report is a function of (seed, cases).

namespace cuntzkit::verify {

enum class Mutation { none, add_off_by_one };

inline std::string to_string(Mutation m) { return m == Mutation::none ? "none" : "add-off-by-one"; }

inline std::optional<Mutation> parse_mutation(const std::string& s) {
  if (s == "none") return Mutation::none;
  if (s == "add-off-by-one") return Mutation::add_off_by_one;
  return std::nullopt;
}

struct CaseOutcome {
  bool ok = true;
  bool positive = false;  // the interesting side of an equivalence was hit
  std::string detail;
};

struct FailedCase {
  std::size_t index;
  std::string detail;
};

struct LemmaReport {
  std::string id;
  std::string checks;
  std::size_t cases = 0;
  std::size_t positive_cases = 0;
  std::size_t failures = 0;
  std::vector<FailedCase> failed;  // first few only
};

struct SuiteReport {
  std::uint64_t seed = 0;
  std::size_t cases = 0;
  Mutation mutation = Mutation::none;
  std::vector<LemmaReport> lemmas;
  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& l : lemmas) n += l.failures;
    return n;
  }
  bool ok() const { return failures() == 0; }
  const LemmaReport* find(const std::string& id) const {
    for (const auto& l : lemmas)
      if (l.id == id) return &l;
    return nullptr;
  }
};

/// Operations the suite routes through, so a mutation can be injected.
struct Ops {
  Mutation mutation = Mutation::none;
  LscElement add(const LscElement& f, const LscElement& g) const {
    LscElement s = cuntzkit::add(f, g);
    if (mutation != Mutation::add_off_by_one || s.height() == 0) return s;
    std::vector<OpenSet> ls = s.levels();
    ls.pop_back();
    return LscElement(s.space_ptr(), std::move(ls), s.infinity());
  }
  LscElement sum(const std::vector<LscElement>& xs, const SpacePtr& sp) const {
    LscElement acc = LscElement::zero(sp);
    for (const auto& x : xs) acc = add(acc, x);
    return acc;
  }
};

struct Lemma {
  std::string id;
  std::string checks;
  std::optional<std::size_t> fixed_cases;  // fixed instances run this many times
  std::function<CaseOutcome(Rng&, const Ops&)> run;
};

namespace detail {

inline CaseOutcome fail(std::string why) { return {false, false, std::move(why)}; }
inline CaseOutcome pass(bool positive = false) { return {true, positive, {}}; }

inline std::string at(const Point& p) { return "component " + std::to_string(p.component) + " at " + p.coord.get_str(); }

/// A small open neighbourhood of p (the whole component for a point).
inline OpenSet bump_around(const SpacePtr& sp, const Point& p, const Rational& r) {
  const Component& c = (*sp)[p.component];
  if (c.kind == ComponentKind::point) return OpenSet::component(sp, p.component);
  if (c.kind == ComponentKind::arc) {
    Rational a = std::max(Rational(p.coord - r), Rational(0)), b = std::min(Rational(p.coord + r), c.length);
    return OpenSet::interval(sp, p.component, a, b, a == 0, b == c.length);
  }
  Rational a = p.coord - r;
  if (a < 0) a += c.length;
  return OpenSet::interval(sp, p.component, a, a + 2 * r);
}

/// Indicators of a decreasing sequence with a random number of terms.
inline std::vector<LscElement> decreasing(Rng& rng, const SpacePtr& sp, long m, int max_intervals = 6) {
  return random_decreasing_indicators(rng, sp, m, max_intervals);
}

/// y_j with y << sum y_j and, usually, no single y_j above the support of y:
/// (h+1) times a neighbourhood of supp y, split along a random open set.
inline std::vector<LscElement> split_cover(Rng& rng, const LscElement& y, int extra) {
  const SpacePtr& sp = y.space_ptr();
  OpenSet w = thicken(y.support().closure(), make_rational(1, 16));
  OpenSet a = random_open_set(rng, sp, 3);
  OpenSet b = thicken(a.complement(), make_rational(1, 32));
  std::vector<LscElement> ys;
  for (int k = 0; k < extra; ++k) ys.push_back(random_indicator(rng, sp, 3));
  for (const auto& part : {a, b}) ys.push_back(scalar_mul(y.height() + 1, LscElement::indicator(w.intersect(part))));
  return ys;
}

inline OpenSet inward(const OpenSet& u, Rng& rng) { return oracle::shrink(u, make_rational(1, 8 * uniform_int(rng, 1, 4))); }

}  // namespace detail

inline std::vector<Lemma> lemmas() {
  using detail::fail;
  using detail::pass;
  std::vector<Lemma> out;

  out.push_back({"ordered-sum-identity",
                 "sum of x_i + y_i over two decreasing indicator sequences equals the decreasing 2m-term rewrite, "
                 "exactly and pointwise",
                 std::nullopt, [](Rng& rng, const Ops& ops) {
                   auto sp = random_space(rng, 4);
                   long m = uniform_int(rng, 1, 3);
                   auto xs = detail::decreasing(rng, sp, m), ys = detail::decreasing(rng, sp, m);
                   LscElement lhs = LscElement::zero(sp);
                   for (long i = 0; i < m; ++i) lhs = ops.add(lhs, ops.add(xs[i], ys[i]));
                   auto terms = ordered_sum_pairwise(xs, ys, sp);
                   for (std::size_t i = 1; i < terms.size(); ++i)
                     if (!leq(terms[i], terms[i - 1])) return fail("rewrite is not decreasing at term " + std::to_string(i + 1));
                   LscElement rhs = sum(terms, sp);
                   if (!(lhs == rhs)) return fail("sum of pairs differs from the rewrite");
                   std::vector<const LscElement*> all;
                   for (const auto& e : xs) all.push_back(&e);
                   for (const auto& e : ys) all.push_back(&e);
                   for (const auto& p : oracle::grid_of(all)) {
                     ExtNat want{0, false};
                     for (long i = 0; i < m; ++i) want = want + xs[i].eval(p) + ys[i].eval(p);
                     if (lhs.eval(p) != want) return fail("sum disagrees with pointwise evaluation, " + detail::at(p));
                   }
                   return pass(!lhs.is_zero());
                 }});

  out.push_back({"ordered-sum-bounds",
                 "y <= n e is a decreasing sum of at most n nonzero indicators; any n indicators regroup into n "
                 "decreasing ones with the same sum",
                 std::nullopt, [](Rng& rng, const Ops&) {
                   auto sp = random_space(rng, 3);
                   long n = uniform_int(rng, 1, 4);
                   auto y = random_element(rng, sp, static_cast<int>(n));
                   auto d = decompose_below_ne(y, n);
                   if (d.size() > static_cast<std::size_t>(n)) return fail("more than n terms");
                   for (std::size_t i = 0; i < d.size(); ++i) {
                     if (!d[i].is_indicator() || d[i].is_zero()) return fail("term is not a nonzero indicator");
                     if (i > 0 && !leq(d[i], d[i - 1])) return fail("terms are not decreasing");
                   }
                   if (!(sum(d, sp) == y)) return fail("terms do not sum to y");
                   std::vector<LscElement> raw;
                   for (long k = 0; k < n; ++k) raw.push_back(random_indicator(rng, sp, 4));
                   auto norm = ofs_normalize(raw, sp);
                   if (norm.size() != raw.size()) return fail("regrouping changed the length");
                   for (std::size_t i = 1; i < norm.size(); ++i)
                     if (!leq(norm[i], norm[i - 1])) return fail("regrouped terms are not decreasing");
                   if (!(sum(norm, sp) == sum(raw, sp))) return fail("regrouping changed the sum");
                   return pass(d.size() == static_cast<std::size_t>(n));
                 }});

  out.push_back({"sum-join",
                 "for y_1..y_n and s below the unit, s <= sum y_i iff s <= join y_i", std::nullopt,
                 [](Rng& rng, const Ops& ops) {
                   auto sp = random_space(rng, 3);
                   long n = uniform_int(rng, 1, 4);
                   std::vector<LscElement> ys;
                   for (long k = 0; k < n; ++k) ys.push_back(random_indicator(rng, sp, 4));
                   LscElement j = LscElement::zero(sp);
                   for (const auto& y : ys) j = join(j, y);
                   auto s = random_indicator(rng, sp, 4);
                   if (coin(rng)) s = meet(s, j);
                   bool below_sum = leq(s, ops.sum(ys, sp)), below_join = leq(s, j);
                   if (below_sum != below_join) return fail(below_sum ? "s below the sum but not the join" : "s below the join but not the sum");
                   return pass(below_sum);
                 }});

  out.push_back({"infinity-multiple",
                 "infinity times x equals infinity times (x meet e), is infinite exactly on the support, and "
                 "dominates every multiple",
                 std::nullopt, [](Rng& rng, const Ops&) {
                   auto sp = random_space(rng, 3);
                   auto x = random_element(rng, sp, 3, 30);
                   auto ix = infinity_of(x);
                   if (!(ix == infinity_of(meet(x, LscElement::unit(sp))))) return fail("differs from the multiple of x meet e");
                   for (const auto& p : oracle::grid_of({&x})) {
                     bool pos = x.eval(p) > ExtNat{0, false};
                     if ((ix.eval(p) == ExtNat::inf()) != pos) return fail("not infinite exactly on the support, " + detail::at(p));
                     if (!pos && ix.eval(p) != ExtNat{0, false}) return fail("nonzero off the support");
                   }
                   std::size_t k = x.height() + 2;
                   if (!leq(scalar_mul(k, x), ix)) return fail("a multiple of x exceeds it");
                   return pass(!x.bounded());
                 }});

  out.push_back({"comparability-below-unit",
                 "for y, z <= e: z <= y iff every point outside the support of y is outside the support of z",
                 std::nullopt, [](Rng& rng, const Ops&) {
                   auto sp = random_space(rng, 3);
                   auto y = random_indicator(rng, sp, 4);
                   auto z = coin(rng) ? meet(y, random_indicator(rng, sp, 4)) : random_indicator(rng, sp, 4);
                   bool sets = y.support().complement().subset_of(z.support().complement());
                   if (sets != leq(z, y)) return fail("set inclusion and order disagree");
                   return pass(sets);
                 }});

  out.push_back({"heyting-law",
                 "s meet (join of t) equals the join of (s meet t) for finite families below the unit, checked "
                 "pointwise too",
                 std::nullopt, [](Rng& rng, const Ops&) {
                   auto sp = random_space(rng, 3);
                   auto s = random_indicator(rng, sp, 4);
                   long n = uniform_int(rng, 0, 4);
                   LscElement jt = LscElement::zero(sp), js = LscElement::zero(sp);
                   std::vector<LscElement> ts;
                   for (long k = 0; k < n; ++k) {
                     ts.push_back(random_indicator(rng, sp, 4));
                     jt = join(jt, ts.back());
                     js = join(js, meet(s, ts.back()));
                   }
                   auto lhs = meet(s, jt);
                   if (!(lhs == js)) return fail("meet does not distribute over the join");
                   std::vector<const LscElement*> all{&s};
                   for (const auto& t : ts) all.push_back(&t);
                   for (const auto& p : oracle::grid_of(all)) {
                     ExtNat best{0, false};
                     for (const auto& t : ts) best = std::max(best, std::min(s.eval(p), t.eval(p)));
                     if (lhs.eval(p) != best) return fail("pointwise value differs, " + detail::at(p));
                   }
                   return pass(!lhs.is_zero());
                 }});

  out.push_back({"almost-complement-adjunction",
                 "x + y <= z iff x <= y\\z for bounded y <= z, and y\\z is maximal: adding a small bump anywhere it "
                 "is finite breaks x + y <= z",
                 std::nullopt, [](Rng& rng, const Ops& ops) {
                   auto sp = random_space(rng, 3);
                   auto z = random_element(rng, sp, 3, 25);
                   auto y = meet(random_element(rng, sp, 2, 0), z);
                   auto yz = almost_complement(y, z);
                   if (!oracle::sum_below(yz, y, z)) return fail("y\\z + y is not below z");
                   bool hit = false;
                   for (int k = 0; k < 4; ++k) {
                     auto x = coin(rng, 30) ? meet(yz, random_element(rng, sp, 3, 10)) : random_element(rng, sp, 3, 10);
                     bool a = oracle::sum_below(x, y, z), b = leq(x, yz);
                     if (leq(ops.add(x, y), z) != a) return fail("order of x + y disagrees with pointwise sum");
                     if (a != b) return fail(a ? "x + y <= z but x is not below y\\z" : "x <= y\\z but x + y is not below z");
                     hit = hit || (a && !x.is_zero());
                   }
                   const Rational r = make_rational(1, 64);
                   auto pts = oracle::grid_of({&y, &z, &yz});
                   for (std::size_t i = 0; i < pts.size(); i += std::max<std::size_t>(1, pts.size() / 12)) {
                     const Point& p = pts[i];
                     if (yz.eval(p) == ExtNat::inf()) continue;
                     auto bump = LscElement::indicator(detail::bump_around(sp, p, r * (*sp)[p.component].length));
                     if (oracle::sum_below(add(yz, bump), y, z)) return fail("y\\z is not maximal, " + detail::at(p));
                   }
                   return pass(hit);
                 }});

  out.push_back({"cancellation",
                 "for x, y, z <= e: x + y <= x + z implies y <= z", std::nullopt, [](Rng& rng, const Ops& ops) {
                   auto sp = random_space(rng, 3);
                   auto x = random_indicator(rng, sp, 4), y = random_indicator(rng, sp, 4);
                   auto z = coin(rng) ? join(y, random_indicator(rng, sp, 4)) : random_indicator(rng, sp, 4);
                   bool premise = leq(ops.add(x, y), ops.add(x, z));
                   if (premise && !leq(y, z)) return fail("x + y <= x + z but y is not below z");
                   return pass(premise);
                 }});

  out.push_back({"termwise-way-below",
                 "for decreasing indicator sequences of equal length, sum x_i << sum y_i iff x_i << y_i for every i",
                 std::nullopt, [](Rng& rng, const Ops& ops) {
                   auto sp = random_space(rng, 3);
                   long m = uniform_int(rng, 1, 3);
                   auto ys = detail::decreasing(rng, sp, m, 4);
                   std::vector<LscElement> xs;
                   if (coin(rng, 60)) {
                     for (const auto& y : ys) xs.push_back(LscElement::indicator(detail::inward(y.support(), rng)));
                     if (coin(rng, 25)) xs.back() = ys.back();
                   } else {
                     xs = detail::decreasing(rng, sp, m, 4);
                   }
                   bool termwise = true;
                   for (long i = 0; i < m; ++i) termwise = termwise && way_below(xs[i], ys[i]);
                   bool whole = way_below(ops.sum(xs, sp), ops.sum(ys, sp));
                   if (termwise != whole) return fail(whole ? "sums are way below but some term is not" : "every term is way below but the sums are not");
                   return pass(whole);
                 }});

  out.push_back({"topological-order",
                 "for decreasing sequences below the unit, sum x_i <= sum y_i iff x_i <= y_i for every i",
                 std::nullopt, [](Rng& rng, const Ops& ops) {
                   auto sp = random_space(rng, 3);
                   long m = uniform_int(rng, 1, 3);
                   auto ys = detail::decreasing(rng, sp, m, 4);
                   std::vector<LscElement> xs;
                   if (coin(rng)) {
                     OpenSet cur = OpenSet::full(sp);
                     for (const auto& y : ys) {
                       cur = cur.intersect(y.support()).intersect(coin(rng, 80) ? OpenSet::full(sp) : random_open_set(rng, sp, 3));
                       xs.push_back(LscElement::indicator(cur));
                     }
                   } else {
                     xs = detail::decreasing(rng, sp, m, 4);
                   }
                   bool termwise = true;
                   for (long i = 0; i < m; ++i) termwise = termwise && leq(xs[i], ys[i]);
                   bool whole = leq(ops.sum(xs, sp), ops.sum(ys, sp));
                   if (termwise != whole) return fail(whole ? "sums compare but some term does not" : "terms compare but the sums do not");
                   return pass(whole);
                 }});

  out.push_back({"lattice-ordered-monoid",
                 "x + y = (x join y) + (x meet y); x + (y join z) = (x + y) join (x + z); meet distributes over join",
                 std::nullopt, [](Rng& rng, const Ops& ops) {
                   auto sp = random_space(rng, 3);
                   auto f = random_element(rng, sp, 2, 20), g = random_element(rng, sp, 2, 20), h = random_element(rng, sp, 2, 20);
                   if (!(ops.add(f, g) == ops.add(join(f, g), meet(f, g)))) return fail("x + y differs from join + meet");
                   if (!(ops.add(f, join(g, h)) == join(ops.add(f, g), ops.add(f, h)))) return fail("addition does not distribute over join");
                   if (!(meet(f, join(g, h)) == join(meet(f, g), meet(f, h)))) return fail("meet does not distribute over join");
                   return pass(!f.is_zero() && !g.is_zero());
                 }});

  out.push_back({"way-below-additive",
                 "f' << f and g' << g imply f' + g' << f + g", std::nullopt, [](Rng& rng, const Ops& ops) {
                   auto sp = random_space(rng, 3);
                   auto f = random_element(rng, sp, 2, 15), g = random_element(rng, sp, 2, 15);
                   auto fp = oracle::approximant(f, uniform_int(rng, 1, 4)), gp = oracle::approximant(g, uniform_int(rng, 1, 4));
                   if (coin(rng, 30)) fp = random_element(rng, sp, 2, 0);
                   bool premise = way_below(fp, f) && way_below(gp, g);
                   if (premise && !way_below(ops.add(fp, gp), ops.add(f, g))) return fail("sum of way-below pairs is not way below");
                   return pass(premise);
                 }});

  out.push_back({"way-below-oracle",
                 "the level-set way-below test agrees with the increasing-sequence definition (inward 1/k shrinks)",
                 std::nullopt, [](Rng& rng, const Ops&) {
                   auto sp = random_space(rng, 2);
                   auto g = random_element(rng, sp, 2, 15);
                   LscElement f = g;
                   switch (uniform_int(rng, 0, 2)) {
                     case 0: f = random_element(rng, sp, 2, 5); break;
                     case 1: f = meet(random_element(rng, sp, 2, 5), g); break;
                     default: f = oracle::approximant(g, uniform_int(rng, 1, 8)); break;
                   }
                   bool a = way_below(f, g), b = oracle::way_below(f, g);
                   if (a != b) return fail(std::string("level sets say ") + (a ? "way below" : "not way below") + ", the sequence test disagrees");
                   return pass(a);
                 }});

  out.push_back({"closed-set-topology",
                 "closed sets C_y of indicators: intersections are C of the join, unions C of the meet, and points "
                 "are closed",
                 std::nullopt, [](Rng& rng, const Ops&) {
                   auto sp = random_space(rng, 3);
                   std::vector<LscElement> fam;
                   long n = uniform_int(rng, 0, 4);
                   for (long k = 0; k < n; ++k) fam.push_back(random_indicator(rng, sp, 4));
                   if (!verify_topology_laws(fam, sp, 12)) return fail("a closed-set law fails");
                   if (!round_trip(random_open_set(rng, sp, 6))) return fail("U to its indicator and back is not the identity");
                   return pass(n > 1);
                 }});

  out.push_back({"closed-set-correspondence",
                 "for indicators y, z the six order/point-set correspondences between y, U_y, C_y and y\\e hold",
                 std::nullopt, [](Rng& rng, const Ops&) {
                   auto sp = random_space(rng, 4);
                   auto y = random_indicator(rng, sp, 6);
                   auto z = coin(rng, 30) ? LscElement::indicator(thicken(y.support().closure(), make_rational(1, 16)))
                                          : random_indicator(rng, sp, 6);
                   auto r = verify_basictop(y, z);
                   for (std::size_t k = 0; k < r.holds.size(); ++k)
                     if (!r.holds[k]) return fail(BasicTopReport::names[k]);
                   return pass(leq(z, y));
                 }});

  out.push_back({"closure-way-below",
                 "for indicators, the closure of U_y lies in U_z iff y << z", std::nullopt, [](Rng& rng, const Ops&) {
                   auto sp = random_space(rng, 4);
                   auto y = random_indicator(rng, sp, 6);
                   auto z = coin(rng, 40) ? LscElement::indicator(thicken(y.support().closure(), make_rational(1, 16)))
                                          : random_indicator(rng, sp, 6);
                   if (!verify_hausdorff_wayb(y, z)) return fail("closure containment and way-below disagree");
                   return pass(way_below(y, z));
                 }});

  out.push_back({"chainable-unit",
                 "the unit is chainable iff the space is one arc or point; then every epsilon gives a verified chain "
                 "of mesh < epsilon, otherwise chain construction is refused",
                 std::nullopt, [](Rng& rng, const Ops&) {
                   auto sp = random_space(rng, 2);
                   auto full = OpenSet::full(sp);
                   bool expect = sp->size() == 1 && (*sp)[0].kind != ComponentKind::circle;
                   if (decide_chainable(full) != expect) return fail("decider disagrees with the classification");
                   Rational eps = make_rational(uniform_int(rng, 1, 16), uniform_int(rng, 1, 64));
                   if (!expect) {
                     try {
                       epsilon_chain(full, eps);
                     } catch (const Error&) {
                       return pass(false);
                     }
                     return fail("a chain was built for a non-chainable space");
                   }
                   auto w = epsilon_chain(full, eps);
                   if (!(w.mesh < eps)) return fail("mesh is not below epsilon");
                   if (auto d = witness_defect(w, full, {full})) return fail(*d);
                   return pass(true);
                 }});

  out.push_back({"almost-chain-refinement",
                 "a cover of an open set refines to a verified almost chain iff no component is a full circle",
                 std::nullopt, [](Rng& rng, const Ops&) {
                   auto s = random_space(rng, 3);
                   auto target = random_open_set(rng, s, 3);
                   Cover cover;
                   OpenSet acc = OpenSet::empty(s);
                   for (int k = 0; k < 3; ++k) {
                     cover.push_back(random_open_set(rng, s, 3));
                     acc = acc.unite(cover.back());
                   }
                   if (!target.subset_of(acc)) cover.push_back(thicken(target.closure().intersect(acc.complement()), make_rational(1, 16)));
                   auto w = refine_to_almost_chain(cover, target);
                   if (w.has_value() != decide_almost_chainable(target)) return fail("refinement and decider disagree");
                   if (w)
                     if (auto d = witness_defect(*w, target, cover)) return fail(*d);
                   return pass(w.has_value());
                 }});

  out.push_back({"weak-chainability",
                 "on circle-free spaces every x << y << sum y_j gets z_i below the y_j, non-adjacent sums below x', "
                 "covering x'; revalidated",
                 std::nullopt, [](Rng& rng, const Ops&) {
                   auto sp = random_space(rng, 3, false);
                   LscModel m(sp);
                   auto y = random_element(rng, sp, 2);
                   auto x = oracle::approximant(y, uniform_int(rng, 1, 3));
                   auto ys = detail::split_cover(rng, y, 2);
                   auto v = check_weak_chainability(m, x, y, ys);
                   if (v.kind != VerdictKind::witness) return fail("verdict " + to_string(v.kind));
                   if (auto d = weak_chain_defect(m, x, y, ys, *v.x_prime, v.z)) return fail(*d);
                   return pass(v.z.size() > 1);
                 }});

  out.push_back({"direct-sum-weak-chainability",
                 "weak chainability witnesses of two circle-free summands compose into one for the direct sum",
                 std::nullopt, [](Rng& rng, const Ops&) {
                   auto a = random_space(rng, 2, false), b = random_space(rng, 2, false);
                   DirectSum<LscModel, LscModel> m{LscModel(a), LscModel(b)};
                   using E = decltype(m)::Element;
                   auto side = [&](const SpacePtr& sp, LscElement& x, LscElement& y, std::vector<LscElement>& ys) {
                     y = random_element(rng, sp, 2);
                     x = oracle::approximant(y, 2);
                     ys = detail::split_cover(rng, y, 1);
                   };
                   LscElement x1 = LscElement::zero(a), y1 = x1, x2 = LscElement::zero(b), y2 = x2;
                   std::vector<LscElement> ys1, ys2;
                   side(a, x1, y1, ys1);
                   side(b, x2, y2, ys2);
                   std::vector<E> ys;
                   for (std::size_t k = 0; k < ys1.size(); ++k) ys.push_back({ys1[k], ys2[k]});
                   E x{x1, x2}, y{y1, y2};
                   auto v = check_weak_chainability(m, x, y, ys);
                   if (v.kind != VerdictKind::witness) return fail("verdict " + to_string(v.kind));
                   if (auto d = weak_chain_defect(m, x, y, ys, *v.x_prime, v.z)) return fail(*d);
                   return pass(v.z.size() > 2);
                 }});

  out.push_back({"refinable-sums",
                 "instances x_1 << ... << x_n with x_i proportional to x'_i get decreasing y^i summing between the "
                 "x_i and refining each other; revalidated clause by clause",
                 std::nullopt, [](Rng& rng, const Ops&) {
                   auto sp = random_space(rng, 3);
                   LscModel m(sp);
                   std::vector<LscElement> x{random_element(rng, sp, 3, 30)};
                   long n = uniform_int(rng, 1, 3);
                   for (long k = 1; k < n; ++k) x.insert(x.begin(), oracle::approximant(x.front(), 1 + k));
                   std::vector<LscElement> xp;
                   for (const auto& e : x) xp.push_back(coin(rng) || !e.bounded() ? e : LscElement::indicator(e.support()));
                   auto v = check_refinable_sums(m, x, xp);
                   if (v.kind != VerdictKind::witness) return fail("verdict " + to_string(v.kind));
                   if (auto d = refinable_sums_defect(m, x, xp, v.y)) return fail(*d);
                   return pass(n > 1);
                 }});

  out.push_back({"z-refinable-sums-counterexample",
                 "in the Jiang-Su semigroup x = (1, 1, 1.1), x' = (1, 1, 0.5) has no refinable sums: y_1^1 is forced "
                 "to be 1, then 1 << y_1^2 <= 0.5 is impossible",
                 1, [](Rng&, const Ops&) {
                   ZModel z;
                   std::vector<ZElement> x{ZElement::compact(1), ZElement::compact(1), ZElement::soft(make_rational(11, 10))};
                   std::vector<ZElement> xp{ZElement::compact(1), ZElement::compact(1), ZElement::soft(make_rational(1, 2))};
                   auto v = check_refinable_sums(z, x, xp);
                   if (v.kind != VerdictKind::counterexample) return fail("verdict " + to_string(v.kind));
                   auto has = [&](const std::string& s) {
                     return std::any_of(v.log.begin(), v.log.end(), [&](const std::string& l) { return l.find(s) != std::string::npos; });
                   };
                   if (!has("forced y_1^1 = 1") || !has("1 ≪ y_1^2 ≤ 0.5 infeasible")) return fail("log misses the forced step");
                   return pass(true);
                 }});

  out.push_back({"almost-ordered-sums",
                 "y_k = join over k-subsets of their meets is decreasing, sums to the same total and satisfies the "
                 "almost-ordered clauses; revalidated",
                 std::nullopt, [](Rng& rng, const Ops&) {
                   auto sp = random_space(rng, 3);
                   LscModel m(sp);
                   std::vector<LscElement> xs;
                   long n = uniform_int(rng, 1, 4);
                   for (long k = 0; k < n; ++k) xs.push_back(random_element(rng, sp, 3, 20));
                   auto v = check_almost_ordered_sums(m, xs);
                   if (v.kind != VerdictKind::witness) return fail("verdict " + to_string(v.kind));
                   if (auto d = almost_ordered_defect(m, xs, v.y)) return fail(*d);
                   return pass(n > 1);
                 }});

  out.push_back({"zprime-almost-ordered-counterexample",
                 "in Z with the extra compact 1'', the pair {1, 1''} has no almost ordered sum at the compact sum 2",
                 1, [](Rng&, const Ops&) {
                   ZPrimeModel zp;
                   auto v = check_almost_ordered_sums(zp, {ZElement::compact(1), ZElement::one_pp()});
                   if (v.kind != VerdictKind::counterexample) return fail("verdict " + to_string(v.kind));
                   return pass(true);
                 }});

  std::sort(out.begin(), out.end(), [](const Lemma& a, const Lemma& b) { return a.id < b.id; });
  return out;
}

inline std::vector<std::string> lemma_ids() {
  std::vector<std::string> ids;
  for (const auto& l : lemmas()) ids.push_back(l.id);
  return ids;
}

/// Runs the suite (or the lemmas named in `only`) with `cases` cases each.
inline SuiteReport verify_lemmas(std::uint64_t seed, std::size_t cases, Mutation mutation = Mutation::none,
                                 const std::vector<std::string>& only = {}, std::size_t keep_failures = 5) {
  for (const auto& id : only) {
    auto ids = lemma_ids();
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) throw MalformedInput("unknown lemma id '" + id + "'");
  }
  SuiteReport rep;
  rep.seed = seed;
  rep.cases = cases;
  rep.mutation = mutation;
  Rng rng(seed);
  Ops ops{mutation};
  for (const auto& lem : lemmas()) {
    if (!only.empty() && std::find(only.begin(), only.end(), lem.id) == only.end()) continue;
    LemmaReport lr;
    lr.id = lem.id;
    lr.checks = lem.checks;
    const std::size_t n = lem.fixed_cases ? std::min(*lem.fixed_cases, cases) : cases;
    for (std::size_t k = 0; k < n; ++k) {
      CaseOutcome o;
      try {
        o = lem.run(rng, ops);
      } catch (const std::exception& e) {
        o = detail::fail(std::string("exception: ") + e.what());
      }
      ++lr.cases;
      lr.positive_cases += o.ok && o.positive;
      if (!o.ok) {
        ++lr.failures;
        if (lr.failed.size() < keep_failures) lr.failed.push_back({k, o.detail});
      }
    }
    rep.lemmas.push_back(std::move(lr));
  }
  return rep;
}

}  // namespace cuntzkit::verify

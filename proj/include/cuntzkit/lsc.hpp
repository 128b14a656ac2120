#pragma once

#include <compare>
#include <string>
#include <vector>

#include "cuntzkit/open_set.hpp"

namespace cuntzkit {

/// Value in {0, 1, 2, ..., ∞}.
struct ExtNat {
  long long value = 0;
  bool infinite = false;

  static ExtNat inf() { return {0, true}; }

  friend bool operator==(const ExtNat& a, const ExtNat& b) {
    return a.infinite == b.infinite && (a.infinite || a.value == b.value);
  }
  friend std::strong_ordering operator<=>(const ExtNat& a, const ExtNat& b) {
    if (a.infinite || b.infinite) return a.infinite <=> b.infinite;
    return a.value <=> b.value;
  }
  friend ExtNat operator+(const ExtNat& a, const ExtNat& b) {
    if (a.infinite || b.infinite) return inf();
    return {a.value + b.value, false};
  }
  std::string str() const { return infinite ? "inf" : std::to_string(value); }
};

/// Finitely presented lower semicontinuous function X -> {0, ..., ∞}:
/// {f >= n} is levels[n-1] for n <= m and the infinity level beyond.
///
/// Canonical form: levels decrease, every level contains the infinity level,
/// and trailing levels equal to the infinity level are removed (so the zero
/// function has no levels and an empty infinity level).
class LscElement {
 public:
  LscElement() = default;

  LscElement(SpacePtr space, std::vector<OpenSet> levels, OpenSet infinity)
      : space_(std::move(space)), levels_(std::move(levels)), inf_(std::move(infinity)), full_(OpenSet::full(space_)) {
    for (const auto& l : levels_) l.region().check_space(inf_.region());
    inf_.region().check_space(OpenSet::empty(space_).region());
    for (std::size_t i = 1; i < levels_.size(); ++i)
      if (!levels_[i].subset_of(levels_[i - 1]))
        throw MalformedInput("levels must decrease (level " + std::to_string(i + 1) + " is not inside level " +
                             std::to_string(i) + ")");
    if (!levels_.empty() && !inf_.subset_of(levels_.back()))
      throw MalformedInput("infinity level must lie inside every level");
    while (!levels_.empty() && levels_.back() == inf_) levels_.pop_back();
  }

  static LscElement zero(const SpacePtr& s) { return LscElement(s, {}, OpenSet::empty(s)); }
  static LscElement unit(const SpacePtr& s) { return indicator(OpenSet::full(s)); }
  static LscElement indicator(const OpenSet& u) { return LscElement(u.space_ptr(), {u}, OpenSet::empty(u.space_ptr())); }
  static LscElement infinite_on(const OpenSet& v) { return LscElement(v.space_ptr(), {}, v); }

  const Space& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  const std::vector<OpenSet>& levels() const { return levels_; }
  const OpenSet& infinity() const { return inf_; }
  std::size_t height() const { return levels_.size(); }

  /// {f >= n}; level(0) is the whole space.
  const OpenSet& level(std::size_t n) const {
    if (n == 0) return full_;
    return n <= levels_.size() ? levels_[n - 1] : inf_;
  }

  /// The open set where f > 0.
  const OpenSet& support() const { return level(1); }

  bool is_zero() const { return levels_.empty() && inf_.empty(); }
  bool bounded() const { return inf_.empty(); }
  bool is_indicator() const { return bounded() && levels_.size() <= 1; }

  ExtNat eval(const Point& p) const {
    if (inf_.contains(p)) return ExtNat::inf();
    long long n = 0;
    for (const auto& l : levels_) {
      if (!l.contains(p)) break;
      ++n;
    }
    return {n, false};
  }

  friend bool operator==(const LscElement& a, const LscElement& b) {
    return a.levels_ == b.levels_ && a.inf_ == b.inf_;
  }

 private:
  SpacePtr space_;
  std::vector<OpenSet> levels_;
  OpenSet inf_;
  OpenSet full_;
};

namespace detail {
inline void same_space(const LscElement& f, const LscElement& g) {
  f.infinity().region().check_space(g.infinity().region());
}
}  // namespace detail

inline bool leq(const LscElement& f, const LscElement& g) {
  detail::same_space(f, g);
  std::size_t top = std::max(f.height(), g.height()) + 1;
  for (std::size_t n = 1; n <= top; ++n)
    if (!f.level(n).subset_of(g.level(n))) return false;
  return true;
}

inline LscElement join(const LscElement& f, const LscElement& g) {
  detail::same_space(f, g);
  std::vector<OpenSet> levels;
  for (std::size_t n = 1; n <= std::max(f.height(), g.height()); ++n) levels.push_back(f.level(n).unite(g.level(n)));
  return LscElement(f.space_ptr(), std::move(levels), f.infinity().unite(g.infinity()));
}

inline LscElement meet(const LscElement& f, const LscElement& g) {
  detail::same_space(f, g);
  std::vector<OpenSet> levels;
  for (std::size_t n = 1; n <= std::max(f.height(), g.height()); ++n) levels.push_back(f.level(n).intersect(g.level(n)));
  return LscElement(f.space_ptr(), std::move(levels), f.infinity().intersect(g.infinity()));
}

/// Pointwise sum via {f+g >= n} = ⋃_j {f >= j} ∩ {g >= n-j}.
inline LscElement add(const LscElement& f, const LscElement& g) {
  detail::same_space(f, g);
  const std::size_t mf = f.height(), mg = g.height();
  OpenSet inf = f.infinity().unite(g.infinity());
  std::vector<OpenSet> levels;
  for (std::size_t n = 1; n <= mf + mg; ++n) {
    OpenSet acc = inf;
    for (std::size_t j = 0; j <= n; ++j) acc = acc.unite(f.level(j).intersect(g.level(n - j)));
    levels.push_back(std::move(acc));
  }
  return LscElement(f.space_ptr(), std::move(levels), std::move(inf));
}

inline LscElement sum(const std::vector<LscElement>& xs, const SpacePtr& space) {
  LscElement acc = LscElement::zero(space);
  for (const auto& x : xs) acc = add(acc, x);
  return acc;
}

inline LscElement scalar_mul(std::size_t n, const LscElement& x) {
  LscElement acc = LscElement::zero(x.space_ptr());
  for (std::size_t i = 0; i < n; ++i) acc = add(acc, x);
  return acc;
}

/// ∞x = sup n·x: infinite exactly on the support of x.
inline LscElement infinity_of(const LscElement& x) { return LscElement::infinite_on(x.support()); }

/// f ≪ g iff f is bounded and the closure of every level of f lies in the
/// corresponding level of g.
inline bool way_below(const LscElement& f, const LscElement& g) {
  detail::same_space(f, g);
  if (!f.bounded()) return false;
  for (std::size_t n = 1; n <= f.height(); ++n)
    if (!compactly_contained(f.level(n), g.level(n))) return false;
  return true;
}

inline bool is_compact(const LscElement& x) { return way_below(x, x); }

/// x ∝ y (x <= n·y for some n), decided exactly from supports.
inline bool proportional(const LscElement& x, const LscElement& y) {
  return x.support().subset_of(y.support()) && x.infinity().subset_of(y.infinity());
}

/// y <= n·e.
inline bool below_multiple_of_unit(const LscElement& y, std::size_t n) { return y.bounded() && y.height() <= n; }

/// Lsc-side complement of U_y inside X for an indicator y: the indicator of
/// the interior of X \ U_y, which is y \ e.
inline LscElement complement_indicator(const LscElement& y) {
  if (!y.is_indicator()) throw PreconditionViolated("complement needs an element below the unit");
  return LscElement::indicator(y.support().complement().interior());
}

namespace detail {

inline void require_indicators(const std::vector<LscElement>& xs, const char* what) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!xs[i].is_indicator()) throw PreconditionViolated(std::string(what) + ": term " + std::to_string(i + 1) + " is not below the unit");
  }
}

inline void require_decreasing(const std::vector<LscElement>& xs, const char* what) {
  require_indicators(xs, what);
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!leq(xs[i], xs[i - 1])) throw PreconditionViolated(std::string(what) + ": sequence is not decreasing at term " + std::to_string(i + 1));
}

}  // namespace detail

/// Rewrites Σ(x_i + y_i) for two decreasing sequences of elements below the
/// unit as the decreasing 2m-term sum with i-th term ∨_j (x_j ∧ y_{i-j}),
/// where x_0 and y_{<=0} act as the unit and terms past m are 0.
inline std::vector<LscElement> ordered_sum_pairwise(std::vector<LscElement> xs, std::vector<LscElement> ys,
                                                    const SpacePtr& space) {
  detail::require_decreasing(xs, "first sequence");
  detail::require_decreasing(ys, "second sequence");
  const std::size_t m = std::max(xs.size(), ys.size());
  const LscElement zero = LscElement::zero(space);
  xs.resize(m, zero);
  ys.resize(m, zero);
  const OpenSet full = OpenSet::full(space);
  auto xset = [&](long k) -> OpenSet { return k <= 0 ? full : (k > static_cast<long>(m) ? OpenSet::empty(space) : xs[k - 1].support()); };
  auto yset = [&](long k) -> OpenSet { return k <= 0 ? full : (k > static_cast<long>(m) ? OpenSet::empty(space) : ys[k - 1].support()); };
  std::vector<LscElement> out;
  for (long i = 1; i <= static_cast<long>(2 * m); ++i) {
    OpenSet acc = OpenSet::empty(space);
    for (long j = 0; j <= static_cast<long>(m); ++j) acc = acc.unite(xset(j).intersect(yset(i - j)));
    out.push_back(LscElement::indicator(acc));
  }
  return out;
}

/// Turns any finite sum of elements below the unit into a decreasing sum of
/// the same length by folding the pairwise rewrite from the left.
inline std::vector<LscElement> ofs_normalize(const std::vector<LscElement>& terms, const SpacePtr& space) {
  detail::require_indicators(terms, "ordered sum");
  if (terms.empty()) return {};
  std::vector<LscElement> acc{terms[0]};
  for (std::size_t k = 1; k < terms.size(); ++k) {
    auto next = ordered_sum_pairwise(acc, {terms[k]}, space);
    for (std::size_t t = k + 1; t < next.size(); ++t)
      if (!next[t].is_zero()) throw Error("ordered sum fold produced a nonzero term past the input length");
    next.resize(k + 1);
    acc = std::move(next);
  }
  return acc;
}

/// Splits y <= n·e into its level indicators (at most n nonzero terms).
inline std::vector<LscElement> decompose_below_ne(const LscElement& y, std::size_t n) {
  if (!below_multiple_of_unit(y, n))
    throw PreconditionViolated("element is not below " + std::to_string(n) + " times the unit");
  std::vector<LscElement> out;
  for (const auto& l : y.levels()) out.push_back(LscElement::indicator(l));
  return out;
}

namespace detail {

/// Bounded almost complement: level n is the interior of {z - y >= n}.
inline LscElement almost_complement_bounded(const LscElement& y, const LscElement& z) {
  const std::size_t my = y.height(), mz = z.height();
  const auto& sp = y.space_ptr();
  std::vector<OpenSet> levels;
  for (std::size_t n = 1; n <= mz; ++n) {
    Region acc = Region::uniform(sp, false);
    for (std::size_t k = 0; k <= my; ++k) acc = acc.unite(z.level(n + k).region().minus(y.level(k + 1).region()));
    levels.push_back(OpenSet(acc.interior()));
  }
  return LscElement(sp, std::move(levels), OpenSet::empty(sp));
}

inline LscElement cap(const LscElement& z, std::size_t m) {
  std::vector<OpenSet> levels;
  for (std::size_t n = 1; n <= m; ++n) levels.push_back(z.level(n));
  return LscElement(z.space_ptr(), std::move(levels), OpenSet::empty(z.space_ptr()));
}

}  // namespace detail

/// y \ z: the largest x with x + y <= z. Requires y <= z and y bounded.
inline LscElement almost_complement(const LscElement& y, const LscElement& z) {
  detail::same_space(y, z);
  if (!y.bounded()) throw PreconditionViolated("almost complement needs a bounded first argument");
  if (!leq(y, z)) throw PreconditionViolated("almost complement needs y <= z");
  const auto& sp = y.space_ptr();
  if (y.is_indicator() && z.is_indicator())
    return LscElement::indicator(OpenSet(z.support().region().minus(y.support().closure().region()).interior()));
  if (z.bounded()) return detail::almost_complement_bounded(y, z);
  // Supremum over the caps z ∧ M·e. Levels up to M - m_y are final once M
  // exceeds m_y + m_z; check that two consecutive caps agree there and that
  // the last such level is the infinity set of z.
  const std::size_t my = y.height(), mz = z.height();
  const std::size_t m0 = my + mz + 1, k = m0 - my;
  LscElement a = detail::almost_complement_bounded(y, detail::cap(z, m0));
  LscElement b = detail::almost_complement_bounded(y, detail::cap(z, m0 + 1));
  for (std::size_t n = 1; n <= k; ++n)
    if (!(a.level(n) == b.level(n))) throw Error("almost complement did not stabilize");
  if (!(a.level(k) == z.infinity()) || !(b.level(k + 1) == z.infinity()))
    throw Error("almost complement did not stabilize on the infinity set");
  std::vector<OpenSet> levels;
  for (std::size_t n = 1; n <= k; ++n) levels.push_back(a.level(n));
  return LscElement(sp, std::move(levels), z.infinity());
}

}  // namespace cuntzkit

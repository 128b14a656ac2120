#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cuntzkit/lsc.hpp"

namespace cuntzkit {

// Every model exposes: Element, name(), zero(), leq, way_below, add, join,
// meet (join/meet return nothing where undefined), show(), and
// candidates(seeds, depth) for bounded searches. Models whose relevant sets
// are finite may also provide the exact hooks
//   way_between(lo, hi): every s with lo ≪ s ≪ hi, or nothing if infinite;
//   summands_of(s):      every pair (a, b) with a + b = s, or nothing if infinite.

namespace detail {

template <class M>
std::vector<typename M::Element> dedupe(const M& m, std::vector<typename M::Element> xs) {
  std::vector<typename M::Element> out;
  for (auto& x : xs) {
    bool dup = false;
    for (const auto& y : out)
      if (m.equal(x, y)) {
        dup = true;
        break;
      }
    if (!dup) out.push_back(std::move(x));
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Extended naturals {0, 1, ..., ∞}.

class NBarModel {
 public:
  using Element = ExtNat;
  std::string name() const { return "nbar"; }
  Element zero() const { return {0, false}; }
  bool equal(const Element& a, const Element& b) const { return a == b; }
  bool leq(const Element& a, const Element& b) const { return a <= b; }
  bool way_below(const Element& a, const Element& b) const { return !a.infinite && a <= b; }
  Element add(const Element& a, const Element& b) const { return a + b; }
  std::optional<Element> join(const Element& a, const Element& b) const { return std::max(a, b); }
  std::optional<Element> meet(const Element& a, const Element& b) const { return std::min(a, b); }
  std::string show(const Element& a) const { return a.str(); }

  std::optional<std::vector<Element>> way_between(const Element& lo, const Element& hi) const {
    if (hi.infinite) return std::nullopt;
    std::vector<Element> out;
    if (lo.infinite) return out;
    for (long long v = lo.value; v <= hi.value; ++v) out.push_back({v, false});
    return out;
  }
  std::optional<std::vector<std::pair<Element, Element>>> summands_of(const Element& s) const {
    if (s.infinite) return std::nullopt;
    std::vector<std::pair<Element, Element>> out;
    for (long long a = 0; a <= s.value; ++a) out.push_back({{a, false}, {s.value - a, false}});
    return out;
  }
  std::vector<Element> candidates(std::vector<Element> seeds, int depth) const {
    seeds.push_back(zero());
    seeds.push_back(Element::inf());
    for (int d = 0; d < depth; ++d) {
      auto cur = seeds;
      for (const auto& a : cur)
        for (const auto& b : cur)
          if (!(a + b).infinite && (a + b).value <= 16) seeds.push_back(a + b);
      seeds = detail::dedupe(*this, seeds);
    }
    return seeds;
  }
};

// ---------------------------------------------------------------------------
// Z = (0, ∞] ⊔ N: soft elements t ∈ (0, ∞] and compact naturals n, with
// soft t <= n iff t <= n, n <= soft t iff n < t, and soft + anything soft.

struct ZElement {
  enum class Kind { compact, soft, one_pp };
  Kind kind = Kind::compact;
  Rational value = 0;  // numeric value; for the atom 1'' it is 1
  bool infinite = false;

  static ZElement compact(long n) { return {Kind::compact, n, false}; }
  static ZElement compact(const Rational& n) { return {Kind::compact, n, false}; }
  static ZElement soft(const Rational& t) { return {Kind::soft, t, false}; }
  static ZElement soft_inf() { return {Kind::soft, 0, true}; }
  static ZElement one_pp() { return {Kind::one_pp, 1, false}; }

  bool is_soft() const { return kind == Kind::soft; }
  bool is_zero() const { return kind == Kind::compact && value == 0; }

  friend bool operator==(const ZElement& a, const ZElement& b) {
    return a.kind == b.kind && a.infinite == b.infinite && (a.infinite || a.value == b.value);
  }
};

namespace detail {

/// Compares numeric values with ∞ on top: -1, 0, 1.
inline int cmp_value(const ZElement& a, const ZElement& b) {
  if (a.infinite || b.infinite) return a.infinite == b.infinite ? 0 : (a.infinite ? 1 : -1);
  return a.value < b.value ? -1 : (a.value == b.value ? 0 : 1);
}

/// Formats a rational as a finite decimal when possible.
inline std::string decimal(const Rational& r) {
  mpz_class den = r.get_den();
  int twos = 0, fives = 0;
  while (den % 2 == 0) { den /= 2; ++twos; }
  while (den % 5 == 0) { den /= 5; ++fives; }
  if (den != 1) return to_string(r);
  int digits = std::max(twos, fives);
  mpz_class scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  mpz_class scaled = r.get_num() * scale / r.get_den();
  bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  std::string s = scaled.get_str();
  if (digits > 0) {
    while (static_cast<int>(s.size()) <= digits) s.insert(s.begin(), '0');
    s.insert(s.end() - digits, '.');
  }
  return neg ? "-" + s : s;
}

}  // namespace detail

class ZModel {
 public:
  using Element = ZElement;
  std::string name() const { return "z"; }
  Element zero() const { return Element::compact(0); }
  bool equal(const Element& a, const Element& b) const { return a == b; }

  bool leq(const Element& a, const Element& b) const {
    if (a.is_zero()) return true;
    int c = detail::cmp_value(a, b);
    if (a.is_soft() == b.is_soft()) return c <= 0;
    if (a.is_soft()) return c <= 0;  // soft t <= n iff t <= n
    return c < 0;                    // n <= soft t iff n < t
  }

  bool way_below(const Element& a, const Element& b) const {
    if (!leq(a, b)) return false;
    if (!a.is_soft()) return true;  // compact
    if (a.infinite) return false;
    if (b.is_soft()) return detail::cmp_value(a, b) < 0;
    return true;  // soft t <= compact n
  }

  Element add(const Element& a, const Element& b) const {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.is_soft() || b.is_soft()) {
      if (a.infinite || b.infinite) return Element::soft_inf();
      return Element::soft(a.value + b.value);
    }
    return Element::compact(a.value + b.value);
  }

  std::optional<Element> join(const Element& a, const Element& b) const { return leq(a, b) ? b : a; }
  std::optional<Element> meet(const Element& a, const Element& b) const { return leq(a, b) ? a : b; }

  std::string show(const Element& a) const {
    if (a.infinite) return "inf";
    if (!a.is_soft()) return detail::decimal(a.value);
    if (a.value.get_den() == 1) return a.value.get_num().get_str() + "'";
    return detail::decimal(a.value);
  }

  /// Finite exactly when no soft element fits strictly between.
  std::optional<std::vector<Element>> way_between(const Element& lo, const Element& hi) const {
    // Soft t with lo ≪ t ≪ hi: t > lo and (t <= hi if hi compact, t < hi if hi soft).
    if (!(hi.is_soft() && hi.infinite)) {
      bool soft_fits;
      if (lo.is_soft() && lo.infinite) soft_fits = false;
      else if (hi.is_soft()) soft_fits = detail::cmp_value(lo, hi) < 0;
      else soft_fits = detail::cmp_value(lo, hi) < 0;
      if (soft_fits) return std::nullopt;
    } else {
      if (!(lo.is_soft() && lo.infinite)) return std::nullopt;
    }
    std::vector<Element> out;
    if (lo.is_soft() && lo.infinite) return out;
    if (hi.infinite) return std::nullopt;
    for (long n = 0; Rational(n) <= hi.value; ++n) {
      Element c = Element::compact(n);
      if (way_below(lo, c) && way_below(c, hi)) out.push_back(c);
    }
    return out;
  }

  std::optional<std::vector<std::pair<Element, Element>>> summands_of(const Element& s) const {
    if (s.is_soft()) return std::nullopt;
    std::vector<std::pair<Element, Element>> out;
    for (long a = 0; Rational(a) <= s.value; ++a) out.push_back({Element::compact(a), Element::compact(s.value - a)});
    return out;
  }

  std::vector<Element> candidates(std::vector<Element> seeds, int depth) const { return z_candidates(*this, std::move(seeds), depth); }

 protected:
  template <class M>
  static std::vector<Element> z_candidates(const M& m, std::vector<Element> seeds, int depth) {
    seeds.push_back(Element::compact(0));
    for (int d = 0; d < depth; ++d) {
      auto cur = seeds;
      for (std::size_t i = 0; i < cur.size(); ++i)
        for (std::size_t j = 0; j < cur.size(); ++j) {
          const auto& a = cur[i];
          const auto& b = cur[j];
          auto s = m.add(a, b);
          if (!s.infinite && s.value <= 8) seeds.push_back(s);
          if (!a.infinite && !b.infinite && a.value < b.value) seeds.push_back(Element::soft(midpoint(a.value, b.value)));
        }
      for (const auto& a : cur)
        if (!a.is_soft() && a.value > 0) seeds.push_back(Element::soft(a.value));
      seeds = detail::dedupe(m, seeds);
      if (seeds.size() > 160) seeds.resize(160);
    }
    return seeds;
  }
};

// ---------------------------------------------------------------------------
// Z' = Z ∪ {1''}: 1'' is compact, incomparable with 1, compares with every
// other element exactly as 1 does, and 1'' + x = 1 + x for x != 0.

class ZPrimeModel : public ZModel {
 public:
  std::string name() const { return "zprime"; }

  static Element as_one(const Element& a) { return a.kind == Element::Kind::one_pp ? Element::compact(1) : a; }
  static bool is_one(const Element& a) { return a.kind == Element::Kind::compact && a.value == 1; }
  static bool is_pp(const Element& a) { return a.kind == Element::Kind::one_pp; }

  bool leq(const Element& a, const Element& b) const {
    if (a == b) return true;
    if ((is_pp(a) && is_one(b)) || (is_one(a) && is_pp(b))) return false;
    return ZModel::leq(as_one(a), as_one(b));
  }
  bool way_below(const Element& a, const Element& b) const {
    return leq(a, b) && ZModel::way_below(as_one(a), as_one(b));
  }
  Element add(const Element& a, const Element& b) const {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    return ZModel::add(as_one(a), as_one(b));
  }
  std::optional<Element> join(const Element& a, const Element& b) const {
    if ((is_pp(a) && is_one(b)) || (is_one(a) && is_pp(b))) return std::nullopt;
    return leq(a, b) ? b : a;
  }
  std::optional<Element> meet(const Element& a, const Element& b) const {
    if ((is_pp(a) && is_one(b)) || (is_one(a) && is_pp(b))) return Element::soft(1);
    return leq(a, b) ? a : b;
  }
  std::string show(const Element& a) const { return is_pp(a) ? "1''" : ZModel::show(a); }

  std::optional<std::vector<Element>> way_between(const Element& lo, const Element& hi) const {
    auto base = ZModel::way_between(as_one(lo), as_one(hi));
    if (!base) return std::nullopt;
    std::vector<Element> out;
    for (const auto& c : *base) {
      if (way_below(lo, c) && way_below(c, hi)) out.push_back(c);
      if (is_one(c) && way_below(lo, Element::one_pp()) && way_below(Element::one_pp(), hi)) out.push_back(Element::one_pp());
    }
    return out;
  }

  std::optional<std::vector<std::pair<Element, Element>>> summands_of(const Element& s) const {
    if (s.is_soft()) return std::nullopt;
    if (is_pp(s)) return std::vector<std::pair<Element, Element>>{{s, zero()}, {zero(), s}};
    std::vector<std::pair<Element, Element>> out;
    std::vector<Element> parts;
    for (long a = 0; Rational(a) <= s.value; ++a) parts.push_back(Element::compact(a));
    parts.push_back(Element::one_pp());
    for (const auto& a : parts)
      for (const auto& b : parts)
        if (add(a, b) == s) out.push_back({a, b});
    return out;
  }

  std::vector<Element> candidates(std::vector<Element> seeds, int depth) const {
    seeds.push_back(Element::one_pp());
    return z_candidates(*this, std::move(seeds), depth);
  }
};

// ---------------------------------------------------------------------------
// Finite model given by tables over named elements.

class FiniteCuTable {
 public:
  using Element = std::size_t;

  std::vector<std::string> names;
  std::vector<std::vector<char>> order;                      // order[a][b]: a <= b
  std::vector<std::vector<std::optional<std::size_t>>> sum;  // nothing = undefined
  std::vector<std::vector<char>> wb;                         // a ≪ b
  std::optional<std::vector<std::vector<std::optional<std::size_t>>>> join_table;
  std::optional<std::vector<std::vector<std::optional<std::size_t>>>> meet_table;
  std::vector<std::size_t> unit_downset;  // flagged subset for the topological-order check
  std::size_t zero_index = 0;

  std::string name() const { return "table"; }
  std::size_t size() const { return names.size(); }
  Element zero() const { return zero_index; }
  bool equal(Element a, Element b) const { return a == b; }
  bool leq(Element a, Element b) const { return order[a][b]; }
  bool way_below(Element a, Element b) const { return wb[a][b]; }
  std::optional<Element> add_opt(Element a, Element b) const { return sum[a][b]; }
  Element add(Element a, Element b) const {
    if (!sum[a][b]) throw PreconditionViolated("sum " + names[a] + " + " + names[b] + " is not in the table");
    return *sum[a][b];
  }
  std::optional<Element> join(Element a, Element b) const { return join_table ? (*join_table)[a][b] : std::nullopt; }
  std::optional<Element> meet(Element a, Element b) const { return meet_table ? (*meet_table)[a][b] : std::nullopt; }
  std::string show(Element a) const { return names.at(a); }
  std::optional<std::size_t> index_of(const std::string& n) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == n) return i;
    return std::nullopt;
  }

  std::optional<std::vector<Element>> way_between(Element lo, Element hi) const {
    std::vector<Element> out;
    for (std::size_t s = 0; s < size(); ++s)
      if (wb[lo][s] && wb[s][hi]) out.push_back(s);
    return out;
  }
  std::optional<std::vector<std::pair<Element, Element>>> summands_of(Element s) const {
    std::vector<std::pair<Element, Element>> out;
    for (std::size_t a = 0; a < size(); ++a)
      for (std::size_t b = 0; b < size(); ++b)
        if (sum[a][b] && *sum[a][b] == s) out.push_back({a, b});
    return out;
  }
  std::vector<Element> candidates(const std::vector<Element>&, int) const {
    std::vector<Element> out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = i;
    return out;
  }

  /// Checks the structural requirements; throws MalformedInput on failure.
  void validate() const {
    const std::size_t n = size();
    auto bad = [&](const std::string& what) { throw MalformedInput("table: " + what); };
    if (n == 0) bad("no elements");
    if (order.size() != n || sum.size() != n || wb.size() != n) bad("matrix sizes do not match the element list");
    for (std::size_t a = 0; a < n; ++a)
      if (order[a].size() != n || sum[a].size() != n || wb[a].size() != n) bad("matrix rows have the wrong length");
    for (std::size_t a = 0; a < n; ++a) {
      if (!order[a][a]) bad("order is not reflexive at " + names[a]);
      for (std::size_t b = 0; b < n; ++b) {
        if (a != b && order[a][b] && order[b][a]) bad("order is not antisymmetric at " + names[a] + ", " + names[b]);
        for (std::size_t c = 0; c < n; ++c)
          if (order[a][b] && order[b][c] && !order[a][c]) bad("order is not transitive at " + names[a] + ", " + names[b] + ", " + names[c]);
        if (wb[a][b] && !order[a][b]) bad("way-below is not contained in the order at " + names[a] + ", " + names[b]);
        if (sum[a][b] && *sum[a][b] >= n) bad("sum entry out of range");
        if (sum[a][b] != sum[b][a]) bad("addition is not commutative at " + names[a] + ", " + names[b]);
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      if (!order[zero_index][a]) bad("0 is not the least element");
      if (!sum[zero_index][a] || *sum[zero_index][a] != a) bad("0 is not neutral for " + names[a]);
    }
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) {
          if (order[a][b] && sum[a][c] && sum[b][c] && !order[*sum[a][c]][*sum[b][c]])
            bad("addition is not monotone: " + names[a] + " <= " + names[b] + " but " + names[a] + " + " + names[c] +
                " is not below " + names[b] + " + " + names[c]);
          if (sum[a][b] && sum[b][c] && sum[*sum[a][b]][c] && sum[a][*sum[b][c]] && *sum[*sum[a][b]][c] != *sum[a][*sum[b][c]])
            bad("addition is not associative");
        }
  }
};

// ---------------------------------------------------------------------------
// Lsc(X, N̄) over a fixed space.

class LscModel {
 public:
  using Element = LscElement;
  explicit LscModel(SpacePtr space) : space_(std::move(space)) {}
  std::string name() const { return "lsc"; }
  const SpacePtr& space() const { return space_; }
  Element zero() const { return LscElement::zero(space_); }
  Element unit() const { return LscElement::unit(space_); }
  bool equal(const Element& a, const Element& b) const { return a == b; }
  bool leq(const Element& a, const Element& b) const { return cuntzkit::leq(a, b); }
  bool way_below(const Element& a, const Element& b) const { return cuntzkit::way_below(a, b); }
  Element add(const Element& a, const Element& b) const { return cuntzkit::add(a, b); }
  std::optional<Element> join(const Element& a, const Element& b) const { return cuntzkit::join(a, b); }
  std::optional<Element> meet(const Element& a, const Element& b) const { return cuntzkit::meet(a, b); }
  bool proportional(const Element& a, const Element& b) const { return cuntzkit::proportional(a, b); }
  std::string show(const Element& a) const {
    return "element with " + std::to_string(a.height()) + " levels" + (a.bounded() ? "" : " and an infinity level");
  }
  std::vector<Element> candidates(std::vector<Element> seeds, int depth) const {
    seeds.push_back(zero());
    seeds.push_back(unit());
    for (int d = 0; d < depth && seeds.size() < 40; ++d) {
      auto cur = seeds;
      for (const auto& a : cur)
        for (const auto& b : cur) {
          seeds.push_back(cuntzkit::join(a, b));
          seeds.push_back(cuntzkit::meet(a, b));
        }
      seeds = detail::dedupe(*this, seeds);
    }
    return seeds;
  }

 private:
  SpacePtr space_;
};

// ---------------------------------------------------------------------------
// Direct sum with componentwise structure.

template <class M1, class M2>
class DirectSum {
 public:
  using Element = std::pair<typename M1::Element, typename M2::Element>;
  DirectSum(M1 a, M2 b) : first(std::move(a)), second(std::move(b)) {}

  M1 first;
  M2 second;

  std::string name() const { return first.name() + "+" + second.name(); }
  Element zero() const { return {first.zero(), second.zero()}; }
  bool equal(const Element& a, const Element& b) const {
    return first.equal(a.first, b.first) && second.equal(a.second, b.second);
  }
  bool leq(const Element& a, const Element& b) const { return first.leq(a.first, b.first) && second.leq(a.second, b.second); }
  bool way_below(const Element& a, const Element& b) const {
    return first.way_below(a.first, b.first) && second.way_below(a.second, b.second);
  }
  Element add(const Element& a, const Element& b) const { return {first.add(a.first, b.first), second.add(a.second, b.second)}; }
  std::optional<Element> join(const Element& a, const Element& b) const {
    auto x = first.join(a.first, b.first);
    auto y = second.join(a.second, b.second);
    if (!x || !y) return std::nullopt;
    return Element{*x, *y};
  }
  std::optional<Element> meet(const Element& a, const Element& b) const {
    auto x = first.meet(a.first, b.first);
    auto y = second.meet(a.second, b.second);
    if (!x || !y) return std::nullopt;
    return Element{*x, *y};
  }
  std::string show(const Element& a) const { return "(" + first.show(a.first) + ", " + second.show(a.second) + ")"; }

  std::optional<std::vector<Element>> way_between(const Element& lo, const Element& hi) const
    requires requires(const M1& m1, const M2& m2) {
      m1.way_between(lo.first, hi.first);
      m2.way_between(lo.second, hi.second);
    }
  {
    auto a = first.way_between(lo.first, hi.first);
    auto b = second.way_between(lo.second, hi.second);
    if (!a || !b) return std::nullopt;
    std::vector<Element> out;
    for (const auto& x : *a)
      for (const auto& y : *b) out.push_back({x, y});
    return out;
  }

  std::optional<std::vector<std::pair<Element, Element>>> summands_of(const Element& s) const
    requires requires(const M1& m1, const M2& m2) {
      m1.summands_of(s.first);
      m2.summands_of(s.second);
    }
  {
    auto a = first.summands_of(s.first);
    auto b = second.summands_of(s.second);
    if (!a || !b) return std::nullopt;
    std::vector<std::pair<Element, Element>> out;
    for (const auto& x : *a)
      for (const auto& y : *b) out.push_back({{x.first, y.first}, {x.second, y.second}});
    return out;
  }

  std::vector<Element> candidates(const std::vector<Element>& seeds, int depth) const {
    std::vector<typename M1::Element> s1;
    std::vector<typename M2::Element> s2;
    for (const auto& s : seeds) {
      s1.push_back(s.first);
      s2.push_back(s.second);
    }
    auto c1 = first.candidates(s1, depth);
    auto c2 = second.candidates(s2, depth);
    std::vector<Element> out;
    for (const auto& x : c1)
      for (const auto& y : c2) {
        out.push_back({x, y});
        if (out.size() >= 400) return out;
      }
    return out;
  }
};

/// x ∝ y: x <= k·y for some k up to the cap (exact for Lsc through supports).
template <class M>
bool proportional(const M& m, const typename M::Element& x, const typename M::Element& y, int cap = 64) {
  if constexpr (requires { m.proportional(x, y); }) {
    return m.proportional(x, y);
  } else if constexpr (requires { m.first; m.second; }) {
    return proportional(m.first, x.first, y.first, cap) && proportional(m.second, x.second, y.second, cap);
  } else {
    auto acc = m.zero();
    for (int k = 0; k <= cap; ++k) {
      if (m.leq(x, acc)) return true;
      if constexpr (requires { m.add_opt(acc, y); }) {
        auto next = m.add_opt(acc, y);
        if (!next) return false;
        acc = *next;
      } else {
        acc = m.add(acc, y);
      }
    }
    return false;
  }
}

}  // namespace cuntzkit

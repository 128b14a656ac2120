#pragma once

#include <algorithm>
#include <memory>
#include <vector>

#include "cuntzkit/space.hpp"

namespace cuntzkit::detail {

/// Cell decomposition of a subset of one component.
///
/// Arc of length L (a point is an arc of length 0): `cuts` is sorted, starts
/// at 0 and ends at L; `at[i]` is membership of cuts[i] and `gap[i]` is
/// membership of the open gap (cuts[i], cuts[i+1]).
///
/// Circle of length L: `cuts` is sorted inside [0, L); `gap[i]` is the gap
/// after cuts[i], the last one wrapping around to cuts[0] + L. With no cuts
/// the single entry gap[0] describes the whole circle.
///
/// Canonical form keeps only cuts where membership changes (plus the two arc
/// endpoints), so structural equality is set equality.
struct Cells {
  std::vector<Rational> cuts;
  std::vector<char> at;
  std::vector<char> gap;

  friend bool operator==(const Cells&, const Cells&) = default;
};

inline bool is_circle(const Component& c) { return c.kind == ComponentKind::circle; }

inline Cells uniform_cells(const Component& c, bool value) {
  Cells out;
  if (is_circle(c)) {
    out.gap = {value};
    return out;
  }
  out.cuts.push_back(0);
  out.at.push_back(value);
  if (c.length > 0) {
    out.cuts.push_back(c.length);
    out.at.push_back(value);
    out.gap.push_back(value);
  }
  return out;
}

/// Membership of coordinate x (already reduced for circles).
inline bool cell_contains(const Component& c, const Cells& cells, const Rational& x) {
  const auto& cuts = cells.cuts;
  if (is_circle(c)) {
    if (cuts.empty()) return cells.gap[0];
    auto it = std::lower_bound(cuts.begin(), cuts.end(), x);
    if (it != cuts.end() && *it == x) return cells.at[it - cuts.begin()];
    if (it == cuts.begin()) return cells.gap.back();
    return cells.gap[(it - cuts.begin()) - 1];
  }
  auto it = std::lower_bound(cuts.begin(), cuts.end(), x);
  if (it != cuts.end() && *it == x) return cells.at[it - cuts.begin()];
  return cells.gap[(it - cuts.begin()) - 1];
}

/// Representative point of gap i.
inline Rational gap_point(const Component& c, const std::vector<Rational>& cuts, std::size_t i) {
  if (is_circle(c)) {
    if (cuts.empty()) return 0;
    if (i + 1 < cuts.size()) return midpoint(cuts[i], cuts[i + 1]);
    return wrap(midpoint(cuts.back(), cuts.front() + c.length), c.length);
  }
  return midpoint(cuts[i], cuts[i + 1]);
}

inline void canonicalize(const Component& c, Cells& cells) {
  const std::size_t n = cells.cuts.size();
  Cells out;
  if (is_circle(c)) {
    if (n == 0) return;
    for (std::size_t i = 0; i < n; ++i) {
      char prev = cells.gap[(i + n - 1) % n];
      if (cells.at[i] == prev && cells.at[i] == cells.gap[i]) continue;
      out.cuts.push_back(cells.cuts[i]);
      out.at.push_back(cells.at[i]);
      out.gap.push_back(cells.gap[i]);
    }
    if (out.cuts.empty()) out.gap = {cells.gap[0]};
    cells = std::move(out);
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    bool endpoint = (i == 0 || i + 1 == n);
    if (!endpoint && cells.at[i] == cells.gap[i - 1] && cells.at[i] == cells.gap[i]) continue;
    out.cuts.push_back(cells.cuts[i]);
    out.at.push_back(cells.at[i]);
    if (i + 1 < n) out.gap.push_back(cells.gap[i]);
  }
  cells = std::move(out);
}

/// Builds canonical cells from a membership predicate that is constant on
/// the gaps between the given cut points.
template <class Pred>
Cells cells_from_predicate(const Component& c, std::vector<Rational> cuts, Pred&& member) {
  if (is_circle(c)) {
    for (auto& x : cuts) x = wrap(x, c.length);
  } else {
    cuts.push_back(0);
    cuts.push_back(c.length);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  Cells out;
  if (is_circle(c) && cuts.empty()) {
    out.gap = {static_cast<char>(member(Rational(0)))};
    return out;
  }
  out.at.reserve(cuts.size());
  for (const auto& x : cuts) out.at.push_back(member(x));
  std::size_t gaps = is_circle(c) ? cuts.size() : cuts.size() - 1;
  out.gap.reserve(gaps);
  for (std::size_t i = 0; i < gaps; ++i) out.gap.push_back(member(gap_point(c, cuts, i)));
  out.cuts = std::move(cuts);
  canonicalize(c, out);
  return out;
}

template <class Fn>
Cells combine_cells(const Component& c, const Cells& a, const Cells& b, Fn&& fn) {
  std::vector<Rational> cuts;
  cuts.reserve(a.cuts.size() + b.cuts.size());
  std::merge(a.cuts.begin(), a.cuts.end(), b.cuts.begin(), b.cuts.end(), std::back_inserter(cuts));
  return cells_from_predicate(c, std::move(cuts), [&](const Rational& x) {
    return fn(cell_contains(c, a, x), cell_contains(c, b, x));
  });
}

inline Cells closure_cells(const Component& c, Cells cells) {
  const std::size_t n = cells.cuts.size();
  std::vector<char> at = cells.at;
  for (std::size_t i = 0; i < n; ++i) {
    if (is_circle(c)) {
      at[i] = at[i] || cells.gap[i] || cells.gap[(i + n - 1) % n];
    } else {
      if (i > 0 && cells.gap[i - 1]) at[i] = 1;
      if (i + 1 < n && cells.gap[i]) at[i] = 1;
    }
  }
  cells.at = std::move(at);
  canonicalize(c, cells);
  return cells;
}

inline Cells interior_cells(const Component& c, Cells cells) {
  const std::size_t n = cells.cuts.size();
  std::vector<char> at = cells.at;
  for (std::size_t i = 0; i < n; ++i) {
    if (is_circle(c)) {
      at[i] = at[i] && cells.gap[i] && cells.gap[(i + n - 1) % n];
    } else {
      if (i > 0 && !cells.gap[i - 1]) at[i] = 0;
      if (i + 1 < n && !cells.gap[i]) at[i] = 0;
    }
  }
  cells.at = std::move(at);
  canonicalize(c, cells);
  return cells;
}

inline bool cells_empty(const Cells& cells) {
  return std::none_of(cells.at.begin(), cells.at.end(), [](char v) { return v; }) &&
         std::none_of(cells.gap.begin(), cells.gap.end(), [](char v) { return v; });
}

inline bool cells_full(const Cells& cells) {
  return std::all_of(cells.at.begin(), cells.at.end(), [](char v) { return v; }) &&
         std::all_of(cells.gap.begin(), cells.gap.end(), [](char v) { return v; });
}

/// A maximal connected piece of a set on one component, in coordinates.
/// On circles `hi` may exceed the length (the run wraps through 0); `lo` is
/// always reduced into [0, L).
struct Run {
  Rational lo;
  Rational hi;
  bool lo_closed = false;
  bool hi_closed = false;
  friend bool operator==(const Run&, const Run&) = default;
};

/// Maximal runs of a non-full set. Full circles and included points are
/// reported by the caller through the full flag instead.
inline std::vector<Run> cell_runs(const Component& c, const Cells& cells) {
  std::vector<Run> runs;
  const std::size_t n = cells.cuts.size();
  if (is_circle(c)) {
    if (n == 0) return runs;
    // Element 2i is cut i, element 2i+1 is gap i.
    const std::size_t m = 2 * n;
    auto member = [&](std::size_t e) -> bool { return e % 2 == 0 ? cells.at[e / 2] : cells.gap[e / 2]; };
    std::size_t start = m;
    for (std::size_t e = 0; e < m; ++e)
      if (!member(e)) { start = e; break; }
    if (start == m) return runs;  // full circle, caller handles it
    bool open = false;
    Run cur;
    for (std::size_t k = 1; k <= m; ++k) {
      std::size_t e = (start + k) % m;
      Rational offset = (start + k >= m) ? c.length : Rational(0);
      std::size_t idx = e / 2;
      if (member(e)) {
        if (!open) {
          open = true;
          cur = Run{};
          cur.lo = cells.cuts[idx] + offset;
          cur.lo_closed = (e % 2 == 0);
        }
      } else if (open) {
        open = false;
        // The run ends right before element e.
        if (e % 2 == 0) {
          cur.hi = cells.cuts[idx] + offset;
          cur.hi_closed = false;
        } else {
          cur.hi = cells.cuts[idx] + offset;
          cur.hi_closed = true;
        }
        runs.push_back(cur);
      }
    }
    for (auto& r : runs) {
      if (r.lo >= c.length) {
        r.lo -= c.length;
        r.hi -= c.length;
      }
    }
    std::sort(runs.begin(), runs.end(), [](const Run& a, const Run& b) { return a.lo < b.lo; });
    return runs;
  }
  if (c.length == 0) return runs;
  const std::size_t m = 2 * n - 1;
  auto member = [&](std::size_t e) -> bool { return e % 2 == 0 ? cells.at[e / 2] : cells.gap[e / 2]; };
  bool open = false;
  Run cur;
  for (std::size_t e = 0; e <= m; ++e) {
    bool in = e < m && member(e);
    if (in && !open) {
      open = true;
      cur = Run{};
      cur.lo = cells.cuts[e / 2];
      cur.lo_closed = (e % 2 == 0);
    } else if (!in && open) {
      open = false;
      std::size_t last = e - 1;
      if (last % 2 == 0) {
        cur.hi = cells.cuts[last / 2];
        cur.hi_closed = true;
      } else {
        cur.hi = cells.cuts[last / 2 + 1];
        cur.hi_closed = false;
      }
      runs.push_back(cur);
    }
  }
  return runs;
}

/// A constructible subset of a space: one canonical cell decomposition per
/// component. Immutable value; the space is shared.
class Region {
 public:
  Region() = default;
  Region(std::shared_ptr<const Space> space, std::vector<Cells> cells)
      : space_(std::move(space)), cells_(std::move(cells)) {}

  static Region uniform(std::shared_ptr<const Space> space, bool value) {
    std::vector<Cells> cells;
    cells.reserve(space->size());
    for (const auto& c : space->components()) cells.push_back(uniform_cells(c, value));
    return Region(std::move(space), std::move(cells));
  }

  const Space& space() const { return *space_; }
  const std::shared_ptr<const Space>& space_ptr() const { return space_; }
  const std::vector<Cells>& cells() const { return cells_; }
  const Cells& cells(std::size_t i) const { return cells_[i]; }

  bool contains(const Point& p) const {
    Point q = locate(*space_, p);
    return cell_contains((*space_)[q.component], cells_[q.component], q.coord);
  }

  bool empty() const {
    return std::all_of(cells_.begin(), cells_.end(), [](const Cells& c) { return cells_empty(c); });
  }
  bool full() const {
    return std::all_of(cells_.begin(), cells_.end(), [](const Cells& c) { return cells_full(c); });
  }

  template <class Fn>
  Region combine(const Region& other, Fn&& fn) const {
    check_space(other);
    std::vector<Cells> out;
    out.reserve(cells_.size());
    for (std::size_t i = 0; i < cells_.size(); ++i)
      out.push_back(combine_cells((*space_)[i], cells_[i], other.cells_[i], fn));
    return Region(space_, std::move(out));
  }

  Region unite(const Region& o) const { return combine(o, [](bool a, bool b) { return a || b; }); }
  Region intersect(const Region& o) const { return combine(o, [](bool a, bool b) { return a && b; }); }
  Region minus(const Region& o) const { return combine(o, [](bool a, bool b) { return a && !b; }); }

  Region complement() const {
    std::vector<Cells> out = cells_;
    for (auto& c : out) {
      for (auto& v : c.at) v = !v;
      for (auto& v : c.gap) v = !v;
    }
    return Region(space_, std::move(out));
  }

  Region closure() const {
    std::vector<Cells> out;
    for (std::size_t i = 0; i < cells_.size(); ++i) out.push_back(closure_cells((*space_)[i], cells_[i]));
    return Region(space_, std::move(out));
  }

  Region interior() const {
    std::vector<Cells> out;
    for (std::size_t i = 0; i < cells_.size(); ++i) out.push_back(interior_cells((*space_)[i], cells_[i]));
    return Region(space_, std::move(out));
  }

  bool subset_of(const Region& o) const {
    check_space(o);
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      Cells d = combine_cells((*space_)[i], cells_[i], o.cells_[i], [](bool a, bool b) { return a && !b; });
      if (!cells_empty(d)) return false;
    }
    return true;
  }

  bool intersects(const Region& o) const { return !intersect(o).empty(); }

  /// Restriction to a single component (everything else removed).
  Region restrict_to(std::size_t component) const {
    std::vector<Cells> out;
    for (std::size_t i = 0; i < cells_.size(); ++i)
      out.push_back(i == component ? cells_[i] : uniform_cells((*space_)[i], false));
    return Region(space_, std::move(out));
  }

  friend bool operator==(const Region& a, const Region& b) {
    return (a.space_ == b.space_ || *a.space_ == *b.space_) && a.cells_ == b.cells_;
  }

  void check_space(const Region& o) const {
    if (space_ != o.space_ && !(*space_ == *o.space_)) throw SpaceMismatch();
  }

 private:
  std::shared_ptr<const Space> space_;
  std::vector<Cells> cells_;
};

}  // namespace cuntzkit::detail

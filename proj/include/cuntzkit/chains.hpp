#pragma once

#include <bitset>
#include <deque>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "cuntzkit/open_set.hpp"

namespace cuntzkit {

enum class ChainKind { chain, almost_chain };

inline const char* to_string(ChainKind k) { return k == ChainKind::chain ? "chain" : "almost_chain"; }

/// Ordered open pieces refining a cover. `refines[i]` is the index of a
/// cover set containing piece i.
struct ChainWitness {
  ChainKind kind = ChainKind::chain;
  std::vector<OpenSet> pieces;
  Rational mesh = 0;
  std::vector<std::size_t> refines;
};

using Cover = std::vector<OpenSet>;

inline Rational mesh_of(const std::vector<OpenSet>& pieces) {
  Rational m = 0;
  for (const auto& p : pieces) m = std::max(m, p.diameter());
  return m;
}

/// Why a witness fails, or nothing if it is valid for the target and cover.
inline std::optional<std::string> witness_defect(const ChainWitness& w, const OpenSet& target, const Cover& cover) {
  if (w.pieces.empty()) {
    if (!target.empty()) return "no pieces but the target is nonempty";
    return std::nullopt;
  }
  if (w.refines.size() != w.pieces.size()) return "refines has the wrong length";
  OpenSet all = OpenSet::empty(target.space_ptr());
  for (std::size_t i = 0; i < w.pieces.size(); ++i) {
    const auto& p = w.pieces[i];
    p.region().check_space(target.region());
    if (p.empty()) return "piece " + std::to_string(i) + " is empty";
    if (w.refines[i] >= cover.size()) return "piece " + std::to_string(i) + " refers to a missing cover set";
    if (!p.subset_of(cover[w.refines[i]])) return "piece " + std::to_string(i) + " is not inside its cover set";
    all = all.unite(p);
  }
  if (!(all == target)) return "pieces do not cover exactly the target";
  for (std::size_t i = 0; i < w.pieces.size(); ++i)
    for (std::size_t j = i + 1; j < w.pieces.size(); ++j) {
      bool meet = w.pieces[i].intersects(w.pieces[j]);
      if (j - i >= 2 && meet)
        return "pieces " + std::to_string(i) + " and " + std::to_string(j) + " are not adjacent but intersect";
      if (w.kind == ChainKind::chain && j == i + 1 && !meet)
        return "consecutive pieces " + std::to_string(i) + " and " + std::to_string(j) + " are disjoint";
    }
  if (w.mesh != mesh_of(w.pieces)) return "stored mesh differs from the largest piece diameter";
  return std::nullopt;
}

inline bool verify_witness(const ChainWitness& w, const OpenSet& target, const Cover& cover) {
  return !witness_defect(w, target, cover).has_value();
}

namespace detail {

/// The single run making up a connected, non-full target on a line-like
/// component, or nothing for points and full components.
struct TargetRun {
  std::size_t component;
  Run run;
};

inline TargetRun single_run(const OpenSet& target) {
  const Space& sp = target.space();
  for (std::size_t ci = 0; ci < sp.size(); ++ci) {
    const auto& cells = target.region().cells(ci);
    if (cells_empty(cells)) continue;
    if (sp[ci].kind == ComponentKind::arc && cells_full(cells))
      return {ci, Run{0, sp[ci].length, true, true}};
    auto runs = cell_runs(sp[ci], cells);
    return {ci, runs.front()};
  }
  throw PreconditionViolated("empty target");
}

/// N - 1 windows (lo + k s, lo + (k+2) s) along a run, s = len / N.
inline std::vector<OpenSet> windows(const SpacePtr& sp, const TargetRun& t, long n) {
  std::vector<OpenSet> out;
  const Rational len = t.run.hi - t.run.lo;
  const Rational s = len / n;
  for (long k = 0; k + 2 <= n; ++k) {
    Rational a = t.run.lo + s * k, b = t.run.lo + s * (k + 2);
    bool l = k == 0 && t.run.lo_closed, r = k + 2 == n && t.run.hi_closed;
    out.push_back(OpenSet::interval(sp, t.component, a, b, l, r));
  }
  return out;
}

inline bool is_full_circle_component(const OpenSet& part) {
  const Space& sp = part.space();
  for (std::size_t ci = 0; ci < sp.size(); ++ci)
    if (sp[ci].kind == ComponentKind::circle && cells_full(part.region().cells(ci))) return true;
  return false;
}

}  // namespace detail

/// A chain of mesh < eps covering a connected target (an arc piece, a proper
/// circle arc, a point or a whole arc component). Windows have width 2 len/N
/// for the least power of two N > 2 len / eps.
inline ChainWitness epsilon_chain(const OpenSet& target, const Rational& eps) {
  if (eps <= 0) throw PreconditionViolated("eps must be positive");
  if (target.empty()) throw PreconditionViolated("empty target");
  auto parts = target.connected_components();
  if (parts.size() != 1) throw PreconditionViolated("target is disconnected; refine it to an almost chain instead");
  if (detail::is_full_circle_component(target)) throw NotChainable("a full circle has no chain covers of small mesh");
  const Space& sp = target.space();
  for (std::size_t ci = 0; ci < sp.size(); ++ci)
    if (sp[ci].kind == ComponentKind::point && !detail::cells_empty(target.region().cells(ci)))
      return ChainWitness{ChainKind::chain, {target}, 0, {0}};
  auto run = detail::single_run(target);
  const Rational len = run.run.hi - run.run.lo;
  long n = 2;
  while (Rational(n) <= 2 * len / eps) n *= 2;
  ChainWitness w;
  w.kind = ChainKind::chain;
  w.pieces = detail::windows(target.space_ptr(), run, n);
  w.mesh = mesh_of(w.pieces);
  w.refines.assign(w.pieces.size(), 0);
  return w;
}

/// Refines a cover of the target by an almost chain, component by
/// component; nothing if some component of the target is a full circle.
inline std::optional<ChainWitness> refine_to_almost_chain(const Cover& cover, const OpenSet& target,
                                                          long max_windows = 1L << 16) {
  OpenSet covered = OpenSet::empty(target.space_ptr());
  for (const auto& c : cover) covered = covered.unite(c);
  if (!target.subset_of(covered)) throw PreconditionViolated("cover does not cover the target");
  auto parts = target.connected_components();
  for (const auto& part : parts)
    if (detail::is_full_circle_component(part)) return std::nullopt;
  ChainWitness w;
  w.kind = parts.size() <= 1 ? ChainKind::chain : ChainKind::almost_chain;
  auto owner = [&](const OpenSet& piece) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < cover.size(); ++i)
      if (piece.subset_of(cover[i])) return i;
    return std::nullopt;
  };
  for (const auto& part : parts) {
    if (auto i = owner(part)) {
      w.pieces.push_back(part);
      w.refines.push_back(*i);
      continue;
    }
    auto run = detail::single_run(part);
    bool done = false;
    for (long n = 4; n <= max_windows && !done; n *= 2) {
      auto ws = detail::windows(target.space_ptr(), run, n);
      std::vector<std::size_t> idx;
      for (const auto& win : ws) {
        auto i = owner(win);
        if (!i) break;
        idx.push_back(*i);
      }
      if (idx.size() != ws.size()) continue;
      // Merge runs of consecutive windows that still fit in one cover set;
      // grouping consecutive links keeps non-adjacent links disjoint.
      OpenSet cur = ws[0];
      std::size_t cur_owner = idx[0];
      for (std::size_t k = 1; k < ws.size(); ++k) {
        OpenSet merged = cur.unite(ws[k]);
        if (merged.subset_of(cover[cur_owner])) {
          cur = merged;
          continue;
        }
        if (auto i = owner(merged)) {
          cur = merged;
          cur_owner = *i;
          continue;
        }
        w.pieces.push_back(cur);
        w.refines.push_back(cur_owner);
        cur = ws[k];
        cur_owner = idx[k];
      }
      w.pieces.push_back(cur);
      w.refines.push_back(cur_owner);
      done = true;
    }
    if (!done) throw Error("refinement needs more than " + std::to_string(max_windows) + " windows");
  }
  w.mesh = mesh_of(w.pieces);
  return w;
}

inline bool decide_chainable(const OpenSet& target) {
  return !target.empty() && target.connected() && !detail::is_full_circle_component(target);
}

/// An open set is almost chainable iff none of its components is a full circle.
inline bool decide_almost_chainable(const OpenSet& target) {
  for (const auto& part : target.connected_components())
    if (detail::is_full_circle_component(part)) return false;
  return true;
}

inline bool decide_almost_chainable(const Space& space) { return !space.has_circle(); }

/// Finite disjoint union of closed chainable pieces: every component must be
/// an arc or a point.
inline bool decide_piecewise_chainable(const Space& space) { return !space.has_circle(); }

/// A positive δ such that every subset of diameter < δ lies in one cover set.
/// Sets of diameter < 2 stay inside one component; on arcs a set starting at
/// s fits in a run I if s ∈ I and it ends before I does, and the worst start
/// is an endpoint of some run. Circles are unrolled, with δ capped at L/3 so
/// small sets are short lifted intervals.
inline Rational lebesgue_number(const Cover& cover, const SpacePtr& space) {
  OpenSet covered = OpenSet::empty(space);
  for (const auto& c : cover) covered = covered.unite(c);
  if (!covered.is_full()) throw PreconditionViolated("not a cover of the space");
  Rational delta = 2;
  const Space& sp = *space;
  for (std::size_t ci = 0; ci < sp.size(); ++ci) {
    const auto& c = sp[ci];
    if (c.kind == ComponentKind::point) continue;
    bool whole = false;
    std::vector<Run> runs;
    for (const auto& set : cover) {
      const auto& cells = set.region().cells(ci);
      if (detail::cells_full(cells)) whole = true;
      for (const auto& r : detail::cell_runs(c, cells)) {
        runs.push_back(r);
        if (c.kind == ComponentKind::circle) runs.push_back(Run{r.lo - c.length, r.hi - c.length, false, false});
      }
    }
    if (whole) continue;
    std::vector<Rational> starts{0};
    for (const auto& r : runs) {
      if (c.kind == ComponentKind::arc) {
        starts.push_back(r.lo);
        starts.push_back(r.hi);
      } else {
        starts.push_back(wrap(r.lo, c.length));
        starts.push_back(wrap(r.hi, c.length));
      }
    }
    Rational comp_delta = c.kind == ComponentKind::circle ? Rational(c.length / 3) : Rational(2);
    for (const auto& s : starts) {
      std::optional<Rational> reach;
      bool unbounded = false;
      for (const auto& r : runs) {
        bool in = (r.lo_closed ? s >= r.lo : s > r.lo) && (r.hi_closed ? s <= r.hi : s < r.hi);
        if (!in) continue;
        if (c.kind == ComponentKind::arc && r.hi == c.length && r.hi_closed) {
          unbounded = true;
          break;
        }
        Rational d = r.hi - s;
        if (!reach || d > *reach) reach = d;
      }
      if (unbounded) continue;
      if (!reach) throw Error("lebesgue number: uncovered point");
      comp_delta = std::min(comp_delta, *reach);
    }
    delta = std::min(delta, comp_delta);
  }
  return delta;
}

// ---------------------------------------------------------------------------
// Bounded exhaustive search for chains of grid arcs.

enum class PiecePredicate { mesh_below, inside_cover };

struct ChainSearchResult {
  bool found = false;
  bool budget_exhausted = false;
  int depth = 0;
  std::size_t grid_points = 0;
  std::size_t candidate_pieces = 0;
  std::size_t states_explored = 0;
  std::vector<OpenSet> chain;
  std::string summary() const {
    std::string s = "depth " + std::to_string(depth) + ": " + std::to_string(grid_points) + " grid points, " +
                    std::to_string(candidate_pieces) + " candidate arcs, " + std::to_string(states_explored) +
                    " states explored, ";
    if (found) return s + "chain of " + std::to_string(chain.size()) + " pieces found";
    if (budget_exhausted) return s + "budget exhausted before a decision";
    return s + "no chain exists among grid arcs";
  }
};

/// Searches for a chain covering a whole component whose pieces are open
/// grid arcs (grid: 2^depth uniform points plus cover endpoints) satisfying
/// the predicate: diameter < eps, or inside some cover set. A miss is
/// evidence, not proof, that no chain exists.
inline ChainSearchResult bounded_chain_search(const SpacePtr& space, std::size_t component, int depth,
                                              PiecePredicate pred, const Rational& eps, const Cover& cover = {},
                                              std::size_t budget = 2'000'000) {
  constexpr std::size_t kMaxCells = 512;
  using Mask = std::bitset<kMaxCells>;
  const Component& c = (*space)[component];
  ChainSearchResult res;
  res.depth = depth;
  if (c.kind == ComponentKind::point) {
    OpenSet p = OpenSet::component(space, component);
    bool ok = pred == PiecePredicate::mesh_below ? eps > 0 : std::any_of(cover.begin(), cover.end(), [&](const OpenSet& s) { return p.subset_of(s); });
    res.found = ok;
    if (ok) res.chain = {p};
    res.grid_points = 1;
    return res;
  }
  const bool circle = c.kind == ComponentKind::circle;
  std::vector<Rational> pts;
  const long g = 1L << depth;
  for (long i = 0; i <= g; ++i) pts.push_back(c.length * i / g);
  for (const auto& set : cover)
    for (const auto& x : set.region().cells(component).cuts) pts.push_back(x);
  if (circle) {
    for (auto& x : pts) x = wrap(x, c.length);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t np = pts.size();
  res.grid_points = np;
  // Cells: 2i is point i, 2i+1 the gap after it (the last gap wraps on circles).
  const std::size_t ncells = circle ? 2 * np : 2 * np - 1;
  if (ncells > kMaxCells) throw PreconditionViolated("search grid too large");
  Mask all;
  for (std::size_t i = 0; i < ncells; ++i) all.set(i);

  struct Piece {
    Mask mask;
    OpenSet set;
  };
  std::vector<Piece> pieces;
  auto accept = [&](const OpenSet& s) {
    if (pred == PiecePredicate::mesh_below) return s.diameter() < eps;
    return std::any_of(cover.begin(), cover.end(), [&](const OpenSet& u) { return s.subset_of(u); });
  };
  // Open arc from point i going k steps forward, optionally closed at arc ends.
  for (std::size_t i = 0; i < np; ++i) {
    std::size_t max_k = circle ? np : np - 1 - i;
    for (std::size_t k = 1; k <= max_k; ++k) {
      std::size_t j = i + k;
      Rational a = pts[i], b = circle ? (j < np ? pts[j] : pts[j - np] + c.length) : pts[j];
      std::vector<std::pair<bool, bool>> flags{{false, false}};
      if (!circle) {
        if (i == 0) flags.push_back({true, false});
        if (j == np - 1) flags.push_back({false, true});
        if (i == 0 && j == np - 1) flags.push_back({true, true});
      }
      for (auto [l, r] : flags) {
        OpenSet s = OpenSet::interval(space, component, a, b, l, r);
        if (!accept(s)) continue;
        Mask m;
        for (std::size_t t = 2 * i + 1; t < 2 * j; ++t) m.set(t % ncells);
        if (l) m.set(0);
        if (r) m.set(ncells - 1);
        pieces.push_back({m, s});
      }
    }
  }
  res.candidate_pieces = pieces.size();

  struct State {
    Mask before;
    std::size_t last;
    std::size_t parent;
  };
  struct Key {
    Mask before;
    std::size_t last;
    bool operator==(const Key& o) const { return last == o.last && before == o.before; }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const { return std::hash<Mask>()(k.before) * 1315423911u ^ k.last; }
  };
  std::vector<State> states;
  std::unordered_set<Key, KeyHash> seen;
  std::deque<std::size_t> queue;
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  for (std::size_t p = 0; p < pieces.size(); ++p) {
    states.push_back({Mask{}, p, kNone});
    seen.insert({Mask{}, p});
    queue.push_back(states.size() - 1);
  }
  while (!queue.empty()) {
    if (res.states_explored >= budget) {
      res.budget_exhausted = true;
      return res;
    }
    std::size_t si = queue.front();
    queue.pop_front();
    ++res.states_explored;
    const State st = states[si];
    Mask covered = st.before | pieces[st.last].mask;
    if (covered == all) {
      res.found = true;
      for (std::size_t at = si; at != kNone; at = states[at].parent) res.chain.push_back(pieces[states[at].last].set);
      std::reverse(res.chain.begin(), res.chain.end());
      return res;
    }
    for (std::size_t q = 0; q < pieces.size(); ++q) {
      const Mask& qm = pieces[q].mask;
      if ((qm & pieces[st.last].mask).none()) continue;
      if ((qm & st.before).any()) continue;
      if ((qm & ~covered).none()) continue;
      Key key{covered, q};
      if (!seen.insert(key).second) continue;
      states.push_back({covered, q, si});
      queue.push_back(states.size() - 1);
    }
  }
  return res;
}

}  // namespace cuntzkit

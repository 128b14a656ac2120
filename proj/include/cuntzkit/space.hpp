#pragma once

#include <string>
#include <vector>

#include "cuntzkit/error.hpp"
#include "cuntzkit/rational.hpp"

namespace cuntzkit {

enum class ComponentKind { arc, circle, point };

inline const char* to_string(ComponentKind k) {
  switch (k) {
    case ComponentKind::arc: return "arc";
    case ComponentKind::circle: return "circle";
    case ComponentKind::point: return "point";
  }
  return "?";
}

/// One connected piece of a compact one-dimensional polyhedron.
/// An arc of length L is [0, L]; a circle of length L is R / LZ with
/// geodesic distance; a point has length 0.
struct Component {
  ComponentKind kind = ComponentKind::arc;
  Rational length = 1;

  static Component arc(Rational len) { return {ComponentKind::arc, std::move(len)}; }
  static Component circle(Rational len) { return {ComponentKind::circle, std::move(len)}; }
  static Component point() { return {ComponentKind::point, 0}; }

  friend bool operator==(const Component&, const Component&) = default;
};

/// Finite disjoint union of components. Points on distinct components are
/// at distance 2.
class Space {
 public:
  Space() = default;
  explicit Space(std::vector<Component> components) : components_(std::move(components)) {
    if (components_.empty()) throw MalformedInput("a space needs at least one component");
    for (std::size_t i = 0; i < components_.size(); ++i) {
      const auto& c = components_[i];
      if (c.kind == ComponentKind::point) {
        if (c.length != 0) throw MalformedInput("point component " + std::to_string(i) + " has a length");
      } else if (c.length <= 0) {
        throw MalformedInput("component " + std::to_string(i) + " must have positive length");
      }
    }
  }

  static Space unit_arc() { return Space({Component::arc(1)}); }
  static Space unit_circle() { return Space({Component::circle(1)}); }

  std::size_t size() const noexcept { return components_.size(); }
  const Component& operator[](std::size_t i) const { return components_.at(i); }
  const std::vector<Component>& components() const noexcept { return components_; }

  bool has_circle() const {
    for (const auto& c : components_)
      if (c.kind == ComponentKind::circle) return true;
    return false;
  }

  friend bool operator==(const Space&, const Space&) = default;

 private:
  std::vector<Component> components_;
};

/// A point of a space: component index and coordinate (0 for point components,
/// [0, L] on arcs, [0, L) on circles after reduction).
struct Point {
  std::size_t component = 0;
  Rational coord = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

inline void require_same_space(const Space& a, const Space& b) {
  if (!(a == b)) throw SpaceMismatch();
}

/// Reduces a circle coordinate into [0, L).
inline Rational wrap(const Rational& x, const Rational& len) {
  Rational q = x / len;
  mpz_class k;
  mpz_fdiv_q(k.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  Rational r = x - Rational(k) * len;
  return r;
}

/// Checks that p lies in the space and returns it with its coordinate reduced.
inline Point locate(const Space& space, Point p) {
  if (p.component >= space.size()) throw PreconditionViolated("point outside space: no component " + std::to_string(p.component));
  const auto& c = space[p.component];
  switch (c.kind) {
    case ComponentKind::point:
      if (p.coord != 0) throw PreconditionViolated("point outside space: point components only have coordinate 0");
      break;
    case ComponentKind::arc:
      if (p.coord < 0 || p.coord > c.length) throw PreconditionViolated("point outside space: coordinate off the arc");
      break;
    case ComponentKind::circle:
      p.coord = wrap(p.coord, c.length);
      break;
  }
  return p;
}

}  // namespace cuntzkit

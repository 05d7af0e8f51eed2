#pragma once

#include "plrelu/geometry.hpp"

#include <string>
#include <vector>

namespace plrelu {

/// A (d+1)-simplex in R^{d+1}, checked at construction to be full-dimensional
/// with no vertical face (every d+1 of its projected vertices are affinely
/// independent in R^d).
class LiftedSimplex {
public:
  explicit LiftedSimplex(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
    const std::size_t ambient = detail::common_dim(vertices_);
    if (ambient < 2) throw DimensionError("lifted simplex needs ambient dimension >= 2");
    if (vertices_.size() != ambient + 1)
      throw DimensionError("lifted simplex in R^" + std::to_string(ambient) + " needs " +
                           std::to_string(ambient + 1) + " vertices");
    if (orientation(vertices_) == 0)
      throw DegeneracyError("lifted simplex is not full-dimensional: " + detail::describe(vertices_));
    const std::size_t d = ambient - 1;
    for (const auto& v : vertices_) shadow_.push_back(v.head(d));
    try {
      require_general_position(shadow_);
    } catch (const DegeneracyError& e) {
      throw DegeneracyError(std::string("lifted simplex has a vertical face: ") + e.what());
    }
    build_clipping();
  }

  /// d, the dimension of the domain of the simplex function.
  std::size_t dim() const { return vertices_.size() - 2; }
  const std::vector<Point>& vertices() const { return vertices_; }
  /// Vertical projections of the vertices to R^d.
  const std::vector<Point>& shadow() const { return shadow_; }

  friend bool operator==(const LiftedSimplex& a, const LiftedSimplex& b) { return a.vertices_ == b.vertices_; }

  /// Vertical extent of the simplex over x: the length of the segment in
  /// which the vertical line through x meets it.
  ///
  /// Each facet contributes a half-space a t + b(x) >= 0 with a != 0 (no
  /// facet is vertical), i.e. a lower or an upper bound on t.
  Scalar tau(const Point& x) const {
    if (x.dim() != dim())
      throw DimensionError("simplex function on R^" + std::to_string(dim()) + " evaluated at a point of R^" +
                           std::to_string(x.dim()));
    bool have_lo = false, have_hi = false;
    Scalar lo, hi;
    for (const auto& h : halfspaces_) {
      Scalar bound = -h.rest(x) / h.t_coeff;
      if (sign(h.t_coeff) > 0) {
        if (!have_lo || bound > lo) {
          lo = bound;
          have_lo = true;
        }
      } else if (!have_hi || bound < hi) {
        hi = bound;
        have_hi = true;
      }
    }
    Scalar len = hi - lo;
    return sign(len) > 0 ? len : Scalar(0);
  }

private:
  struct Halfspace {
    Scalar t_coeff;
    AffineFunctional rest; // the x-part of the facet functional
  };

  void build_clipping() {
    const std::size_t n = vertices_.size();
    const std::size_t d = dim();
    for (std::size_t skip = 0; skip < n; ++skip) {
      std::vector<Point> frame;
      for (std::size_t i = 0; i < n; ++i)
        if (i != skip) frame.push_back(vertices_[i]);
      frame.push_back(vertices_[skip]);
      std::vector<Scalar> values(n, Scalar(0));
      values.back() = 1;
      AffineFunctional f = solve_affine(frame, values);
      std::vector<Scalar> x_part(f.normal().begin(), f.normal().begin() + static_cast<std::ptrdiff_t>(d));
      halfspaces_.push_back({f.normal()[d], AffineFunctional(std::move(x_part), f.offset())});
    }
  }

  std::vector<Point> vertices_;
  std::vector<Point> shadow_;
  std::vector<Halfspace> halfspaces_;
};

inline Scalar tau_eval(const LiftedSimplex& delta, const Point& x) { return delta.tau(x); }

/// x -> max(0, min_i g_i(x)), with the apex (p, h) the g_i share.
struct MaxMinForm {
  std::vector<AffineFunctional> functionals;
  Point apex;
  Scalar apex_height;

  std::size_t dim() const { return apex.dim(); }

  Scalar operator()(const Point& x) const {
    Scalar m = functionals.at(0)(x);
    for (std::size_t i = 1; i < functionals.size(); ++i) {
      Scalar g = functionals[i](x);
      if (g < m) m = g;
    }
    return sign(m) > 0 ? m : Scalar(0);
  }
};

/// Max-min normal form of the simplex function of delta.
///
/// The shadow P = conv(projections) is a pyramid base; its apex sits over
/// the Radon point p of the d+2 projections, at height tau(p). Coning each
/// facet of P to p gives a piece on which tau is linear: with H_i the
/// facet functional (zero on the facet, positive inside),
/// g_i = tau(p) * H_i / H_i(p).
inline MaxMinForm maxmin_form(const LiftedSimplex& delta) {
  const auto& shadow = delta.shadow();
  RadonPartition radon = radon_point(shadow);
  Scalar h = delta.tau(radon.point);
  if (sign(h) <= 0)
    throw DegeneracyError("simplex function vanishes at the Radon point " + radon.point.str());
  MaxMinForm form{{}, radon.point, h};
  for (const auto& facet : hull_facets(shadow)) {
    Scalar at_apex = facet.support(radon.point);
    if (sign(at_apex) <= 0)
      throw DegeneracyError("Radon point not interior to the shadow of the simplex");
    form.functionals.push_back(facet.support.scaled(h / at_apex));
  }
  return form;
}

} // namespace plrelu

#pragma once

#include "plrelu/pl_mesh.hpp"
#include "plrelu/simplex_function.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace plrelu {

/// A supplied or sampled cone point produced a degenerate or vertical simplex.
class GenericityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct SignedTerm {
  int sign; ///< +1 or -1
  LiftedSimplex simplex;
};

/// f = sum_i sign_i * tau(simplex_i); every simplex has the cone point as vertex 0.
struct SignedDecomposition {
  std::size_t dim = 0;
  Point cone_point;
  std::vector<SignedTerm> terms;

  Scalar eval(const Point& x) const {
    if (x.dim() != dim)
      throw DimensionError("decomposition on R^" + std::to_string(dim) + " evaluated at a point of R^" +
                           std::to_string(x.dim()));
    Scalar total = 0;
    for (const auto& term : terms) {
      Scalar t = term.simplex.tau(x);
      if (term.sign > 0) total += t;
      else total -= t;
    }
    return total;
  }
};

inline Scalar eval_decomposition(const SignedDecomposition& dec, const Point& x) { return dec.eval(x); }

/// One oriented d-face of the cycle [base] - [graph] in R^{d+1}.
struct CycleFace {
  std::size_t mesh_simplex;
  bool graph; ///< false: base face at height 0
  std::vector<Point> vertices;
};

/// Projected orientation of base faces: +1 for odd d, -1 for even d.
/// Graph faces carry the opposite sign.
inline int base_face_orientation(std::size_t dim) { return dim % 2 == 1 ? 1 : -1; }

/// Faces of the cycle bounded by the support and the graph of f, oriented as
/// the boundary of {(x, t) : t between 0 and f(x)}.
///
/// The outward normal on the base is -e_{d+1}, so a base face is the mesh
/// simplex at height 0 with projected orientation (-1)^{d+1}; the graph face
/// over the same simplex has the opposite projected orientation. Orientation
/// is flipped by swapping the first two vertices.
inline std::vector<CycleFace> cycle_faces(const PLMesh& mesh) {
  std::vector<CycleFace> faces;
  const bool swap_base = base_face_orientation(mesh.dim()) < 0;
  for (std::size_t s = 0; s < mesh.simplex_count(); ++s) {
    CycleFace base{s, false, {}}, graph{s, true, {}};
    for (auto v : mesh.simplices()[s]) {
      base.vertices.push_back(mesh.vertices()[v].lifted(0));
      graph.vertices.push_back(mesh.vertices()[v].lifted(mesh.values()[v]));
    }
    if (swap_base) std::swap(base.vertices[0], base.vertices[1]);
    else std::swap(graph.vertices[0], graph.vertices[1]);
    faces.push_back(std::move(base));
    faces.push_back(std::move(graph));
  }
  return faces;
}

namespace detail {

inline std::string face_label(const CycleFace& face) {
  return std::string(face.graph ? "graph" : "base") + " face of mesh simplex " + std::to_string(face.mesh_simplex) +
         " " + describe(face.vertices);
}

/// Cones every face to apex. Throws GenericityError naming the first bad face.
inline std::vector<SignedTerm> cone_terms(const std::vector<CycleFace>& faces, const Point& apex) {
  std::vector<SignedTerm> terms;
  terms.reserve(faces.size());
  for (const auto& face : faces) {
    std::vector<Point> pts;
    pts.reserve(face.vertices.size() + 1);
    pts.push_back(apex);
    pts.insert(pts.end(), face.vertices.begin(), face.vertices.end());
    const int eps = orientation(pts);
    if (eps == 0) throw GenericityError("cone point " + apex.str() + " is coplanar with the " + face_label(face));
    try {
      terms.push_back({eps, LiftedSimplex(std::move(pts))});
    } catch (const DegeneracyError& e) {
      throw GenericityError("cone point " + apex.str() + " over the " + face_label(face) + ": " + e.what());
    }
  }
  return terms;
}

} // namespace detail

constexpr int cone_point_retry_budget = 64;

/// Deterministic integer cone-point candidates: horizontal coordinates in a
/// box of side 8 * spread around the mesh, height strictly below every value.
class ConePointSampler {
public:
  ConePointSampler(const PLMesh& mesh, std::uint64_t seed) : rng_(seed), dim_(mesh.dim()) {
    Scalar spread = 1;
    lo_.assign(dim_, Scalar(0));
    hi_.assign(dim_, Scalar(0));
    Scalar min_value = 0;
    if (!mesh.vertices().empty()) {
      lo_ = hi_ = mesh.vertices()[0].coords();
      for (const auto& v : mesh.vertices())
        for (std::size_t r = 0; r < dim_; ++r) {
          lo_[r] = std::min(lo_[r], v[r]);
          hi_[r] = std::max(hi_[r], v[r]);
        }
      for (const auto& value : mesh.values()) min_value = std::min(min_value, value);
      for (std::size_t r = 0; r < dim_; ++r) spread = std::max(spread, Scalar(hi_[r] - lo_[r]));
    }
    half_box_ = to_int(4 * spread) + 1;
    floor_ = to_int(min_value) - 1;
    for (std::size_t r = 0; r < dim_; ++r) center_.push_back(to_int((lo_[r] + hi_[r]) / 2));
  }

  Point next() {
    std::uniform_int_distribution<long> horizontal(-half_box_, half_box_);
    std::uniform_int_distribution<long> depth(1, 2 * half_box_);
    std::vector<Scalar> c;
    for (std::size_t r = 0; r < dim_; ++r) c.emplace_back(center_[r] + horizontal(rng_));
    c.emplace_back(floor_ - depth(rng_));
    return Point(std::move(c));
  }

private:
  static long to_int(const Scalar& s) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
    return q.get_si();
  }

  std::mt19937_64 rng_;
  std::size_t dim_;
  std::vector<Scalar> lo_, hi_;
  std::vector<long> center_;
  long half_box_ = 1;
  long floor_ = -1;
};

/// Cones the cycle [base] - [graph] of the mesh to a generic point.
///
/// Each face F = (w_1..w_{d+1}) yields the term (a, w_1..w_{d+1}) with sign
/// orientation(a, w_1..w_{d+1}). When no cone point is supplied, candidates
/// are drawn from a seeded sampler until every term is nondegenerate.
inline SignedDecomposition decompose(const PLMesh& mesh, const std::optional<Point>& cone_point = std::nullopt,
                                     std::uint64_t seed = 0) {
  const auto faces = cycle_faces(mesh);
  SignedDecomposition dec;
  dec.dim = mesh.dim();
  if (cone_point) {
    if (cone_point->dim() != mesh.dim() + 1)
      throw DimensionError("cone point must lie in R^" + std::to_string(mesh.dim() + 1));
    dec.cone_point = *cone_point;
    dec.terms = detail::cone_terms(faces, *cone_point);
    return dec;
  }
  ConePointSampler sampler(mesh, seed);
  std::string last_failure;
  for (int attempt = 0; attempt < cone_point_retry_budget; ++attempt) {
    Point candidate = sampler.next();
    try {
      dec.terms = detail::cone_terms(faces, candidate);
      dec.cone_point = std::move(candidate);
      return dec;
    } catch (const GenericityError& e) {
      last_failure = e.what();
    }
  }
  throw GenericityError("no generic cone point after " + std::to_string(cone_point_retry_budget) +
                        " samples; last failure: " + last_failure);
}

/// Drops pairs of identical simplices carrying opposite signs.
inline SignedDecomposition prune(const SignedDecomposition& dec) {
  SignedDecomposition out{dec.dim, dec.cone_point, {}};
  std::vector<bool> removed(dec.terms.size(), false);
  auto same_simplex = [](const LiftedSimplex& a, const LiftedSimplex& b) {
    auto va = a.vertices(), vb = b.vertices();
    auto less = [](const Point& p, const Point& q) { return p.coords() < q.coords(); };
    std::sort(va.begin(), va.end(), less);
    std::sort(vb.begin(), vb.end(), less);
    return va == vb;
  };
  for (std::size_t i = 0; i < dec.terms.size(); ++i) {
    if (removed[i]) continue;
    for (std::size_t j = i + 1; j < dec.terms.size(); ++j) {
      if (removed[j] || dec.terms[i].sign == dec.terms[j].sign) continue;
      if (same_simplex(dec.terms[i].simplex, dec.terms[j].simplex)) {
        removed[i] = removed[j] = true;
        break;
      }
    }
  }
  for (std::size_t i = 0; i < dec.terms.size(); ++i)
    if (!removed[i]) out.terms.push_back(dec.terms[i]);
  return out;
}

} // namespace plrelu

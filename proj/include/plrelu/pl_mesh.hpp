#pragma once

#include "plrelu/exact_lp.hpp"
#include "plrelu/geometry.hpp"

#include <map>
#include <string>
#include <vector>

namespace plrelu {

using SimplexIndices = std::vector<std::size_t>;

struct MeshViolation {
  enum class Kind { degenerate_simplex, non_conforming, nonzero_boundary };
  Kind kind;
  std::vector<std::size_t> simplices;
  std::vector<std::size_t> vertices;
  std::string message;
};

inline const char* to_string(MeshViolation::Kind k) {
  switch (k) {
  case MeshViolation::Kind::degenerate_simplex: return "degenerate simplex";
  case MeshViolation::Kind::non_conforming: return "non-conforming";
  case MeshViolation::Kind::nonzero_boundary: return "nonzero boundary value";
  }
  return "?";
}

struct ValidationReport {
  std::vector<MeshViolation> violations;
  bool valid() const { return violations.empty(); }
};

/// A compactly supported PL function on R^d: heights on the vertices of a
/// simplicial mesh, zero off the mesh.
///
/// Construction checks index bounds and lengths, and reorders each
/// nondegenerate simplex so its orientation is positive. The geometric
/// invariants (nondegenerate, conforming, zero boundary) are reported by
/// validate() instead of thrown.
class PLMesh {
public:
  PLMesh(std::size_t dim, std::vector<Point> vertices, std::vector<Scalar> values,
         std::vector<SimplexIndices> simplices)
      : dim_(dim), vertices_(std::move(vertices)), values_(std::move(values)), simplices_(std::move(simplices)) {
    if (dim_ == 0) throw DimensionError("mesh dimension must be positive");
    if (values_.size() != vertices_.size())
      throw DimensionError("mesh has " + std::to_string(vertices_.size()) + " vertices but " +
                           std::to_string(values_.size()) + " values");
    for (std::size_t v = 0; v < vertices_.size(); ++v)
      if (vertices_[v].dim() != dim_)
        throw DimensionError("vertex " + std::to_string(v) + " is not in R^" + std::to_string(dim_));
    cells_.reserve(simplices_.size());
    for (std::size_t s = 0; s < simplices_.size(); ++s) {
      auto& simplex = simplices_[s];
      if (simplex.size() != dim_ + 1)
        throw DimensionError("simplex " + std::to_string(s) + " needs " + std::to_string(dim_ + 1) + " vertices");
      for (auto v : simplex)
        if (v >= vertices_.size())
          throw std::out_of_range("simplex " + std::to_string(s) + " references missing vertex " + std::to_string(v));
      cells_.push_back(make_cell(simplex));
    }
  }

  std::size_t dim() const { return dim_; }
  std::size_t simplex_count() const { return simplices_.size(); }
  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Scalar>& values() const { return values_; }
  const std::vector<SimplexIndices>& simplices() const { return simplices_; }

  std::vector<Point> simplex_points(std::size_t s) const {
    std::vector<Point> pts;
    for (auto v : simplices_[s]) pts.push_back(vertices_[v]);
    return pts;
  }

  bool is_degenerate(std::size_t s) const { return !cells_[s].nondegenerate; }

  /// Barycentric coordinates of x in simplex s (nondegenerate simplices only).
  std::vector<Scalar> barycentric(std::size_t s, const Point& x) const {
    const auto& cell = cells_[s];
    if (!cell.nondegenerate) throw DegeneracyError("simplex " + std::to_string(s) + " is degenerate");
    std::vector<Scalar> out;
    for (const auto& b : cell.barycentric) out.push_back(b(x));
    return out;
  }

  bool contains(std::size_t s, const Point& x) const {
    const auto& cell = cells_[s];
    if (!cell.nondegenerate) return false;
    return std::all_of(cell.barycentric.begin(), cell.barycentric.end(),
                       [&](const AffineFunctional& b) { return sign(b(x)) >= 0; });
  }

  /// Value of the linear interpolant of simplex s at x (whether or not x is inside).
  Scalar interpolant(std::size_t s, const Point& x) const { return cells_[s].interpolant(x); }

  /// f(x): barycentric interpolation on the first closed simplex containing x, else 0.
  Scalar eval(const Point& x) const {
    if (x.dim() != dim_)
      throw DimensionError("evaluation point in R^" + std::to_string(x.dim()) + " for mesh in R^" +
                           std::to_string(dim_));
    for (std::size_t s = 0; s < simplices_.size(); ++s)
      if (contains(s, x)) return cells_[s].interpolant(x);
    return 0;
  }

  /// Facets (sorted d-subsets of vertex indices) with the simplices that own them.
  std::map<SimplexIndices, std::vector<std::size_t>> facet_incidence() const {
    std::map<SimplexIndices, std::vector<std::size_t>> out;
    for (std::size_t s = 0; s < simplices_.size(); ++s) {
      SimplexIndices sorted = simplices_[s];
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t skip = 0; skip <= dim_; ++skip) {
        SimplexIndices facet;
        for (std::size_t i = 0; i <= dim_; ++i)
          if (i != skip) facet.push_back(sorted[i]);
        out[facet].push_back(s);
      }
    }
    return out;
  }

  std::vector<SimplexIndices> boundary_facets() const {
    std::vector<SimplexIndices> out;
    for (const auto& [facet, owners] : facet_incidence())
      if (owners.size() == 1) out.push_back(facet);
    return out;
  }

  std::vector<std::size_t> boundary_vertices() const {
    std::vector<std::size_t> out;
    for (const auto& facet : boundary_facets()) out.insert(out.end(), facet.begin(), facet.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  /// True iff conv(s) and conv(t) meet exactly in the convex hull of their shared vertices.
  ///
  /// Decided by an exact LP: maximize the barycentric weight a common point
  /// puts on non-shared vertices; the pair conforms iff that is 0 or the
  /// hulls are disjoint.
  bool conforming_pair(std::size_t s, std::size_t t) const {
    const auto& a = simplices_[s];
    const auto& b = simplices_[t];
    for (std::size_t r = 0; r < dim_; ++r) {
      Scalar lo_a = vertices_[a[0]][r], hi_a = lo_a, lo_b = vertices_[b[0]][r], hi_b = lo_b;
      for (auto v : a) {
        lo_a = std::min(lo_a, vertices_[v][r]);
        hi_a = std::max(hi_a, vertices_[v][r]);
      }
      for (auto v : b) {
        lo_b = std::min(lo_b, vertices_[v][r]);
        hi_b = std::max(hi_b, vertices_[v][r]);
      }
      if (hi_a < lo_b || hi_b < lo_a) return true;
    }
    const std::size_t k = dim_ + 1;
    Matrix rows(dim_ + 2, std::vector<Scalar>(2 * k, Scalar(0)));
    std::vector<Scalar> rhs(dim_ + 2, Scalar(0));
    std::vector<Scalar> objective(2 * k, Scalar(0));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t r = 0; r < dim_; ++r) {
        rows[r][i] = vertices_[a[i]][r];
        rows[r][k + i] = -vertices_[b[i]][r];
      }
      rows[dim_][i] = 1;
      rows[dim_ + 1][k + i] = 1;
      if (std::find(b.begin(), b.end(), a[i]) == b.end()) objective[i] = 1;
      if (std::find(a.begin(), a.end(), b[i]) == a.end()) objective[k + i] = 1;
    }
    rhs[dim_] = 1;
    rhs[dim_ + 1] = 1;
    auto result = detail::ExactLp::maximize(rows, rhs, objective);
    return result.status == detail::ExactLp::Status::infeasible ||
           (result.status == detail::ExactLp::Status::optimal && result.value == 0);
  }

  ValidationReport validate() const {
    ValidationReport report;
    for (std::size_t s = 0; s < simplices_.size(); ++s) {
      if (!cells_[s].nondegenerate)
        report.violations.push_back({MeshViolation::Kind::degenerate_simplex, {s}, simplices_[s],
                                     "simplex " + std::to_string(s) + " has affinely dependent vertices"});
      SimplexIndices sorted = simplices_[s];
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        report.violations.push_back({MeshViolation::Kind::degenerate_simplex, {s}, simplices_[s],
                                     "simplex " + std::to_string(s) + " repeats a vertex index"});
    }
    for (std::size_t s = 0; s < simplices_.size(); ++s) {
      if (!cells_[s].nondegenerate) continue;
      for (std::size_t t = s + 1; t < simplices_.size(); ++t) {
        if (!cells_[t].nondegenerate) continue;
        if (!conforming_pair(s, t))
          report.violations.push_back({MeshViolation::Kind::non_conforming, {s, t}, {},
                                       "simplices " + std::to_string(s) + " and " + std::to_string(t) +
                                           " do not meet in a common face"});
      }
    }
    for (const auto& [facet, owners] : facet_incidence())
      if (owners.size() > 2)
        report.violations.push_back({MeshViolation::Kind::non_conforming, owners, facet,
                                     "facet shared by " + std::to_string(owners.size()) + " simplices"});
    for (auto v : boundary_vertices())
      if (values_[v] != 0)
        report.violations.push_back({MeshViolation::Kind::nonzero_boundary, {}, {v},
                                     "boundary vertex " + std::to_string(v) + " has value " +
                                         format_scalar(values_[v])});
    return report;
  }

private:
  struct Cell {
    bool nondegenerate = false;
    AffineFunctional interpolant;
    std::vector<AffineFunctional> barycentric;
  };

  Cell make_cell(SimplexIndices& simplex) {
    Cell cell;
    std::vector<Point> pts;
    for (auto v : simplex) pts.push_back(vertices_[v]);
    int o = orientation(pts);
    if (o == 0) return cell;
    if (o < 0) {
      std::swap(simplex[0], simplex[1]);
      std::swap(pts[0], pts[1]);
    }
    cell.nondegenerate = true;
    std::vector<Scalar> heights;
    for (auto v : simplex) heights.push_back(values_[v]);
    cell.interpolant = solve_affine(pts, heights);
    for (std::size_t i = 0; i <= dim_; ++i) {
      std::vector<Scalar> unit(dim_ + 1, Scalar(0));
      unit[i] = 1;
      cell.barycentric.push_back(solve_affine(pts, unit));
    }
    return cell;
  }

  std::size_t dim_;
  std::vector<Point> vertices_;
  std::vector<Scalar> values_;
  std::vector<SimplexIndices> simplices_;
  std::vector<Cell> cells_;
};

inline ValidationReport validate(const PLMesh& mesh) { return mesh.validate(); }
inline Scalar eval_mesh(const PLMesh& mesh, const Point& x) { return mesh.eval(x); }

} // namespace plrelu

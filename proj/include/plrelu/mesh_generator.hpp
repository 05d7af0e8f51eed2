#pragma once

#include "plrelu/pl_mesh.hpp"

#include <cstdint>
#include <random>
#include <stdexcept>

namespace plrelu {

namespace detail {

/// Grows a conforming triangulation by local moves that each keep it conforming:
/// interior (stellar) splits, edge bisections, and simplices attached to a
/// boundary facet after an exact overlap check.
class MeshGrower {
public:
  MeshGrower(std::size_t dim, std::mt19937_64& rng) : dim_(dim), rng_(rng) {}

  void seed_simplex(long extent) {
    std::uniform_int_distribution<long> coord(0, extent);
    while (true) {
      std::vector<Point> pts;
      for (std::size_t i = 0; i <= dim_; ++i) {
        std::vector<Scalar> c;
        for (std::size_t r = 0; r < dim_; ++r) c.emplace_back(coord(rng_));
        pts.emplace_back(std::move(c));
      }
      if (orientation(pts) == 0) continue;
      vertices_ = pts;
      simplices_ = {SimplexIndices(dim_ + 1)};
      std::iota(simplices_[0].begin(), simplices_[0].end(), std::size_t{0});
      return;
    }
  }

  std::size_t count() const { return simplices_.size(); }
  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<SimplexIndices>& simplices() const { return simplices_; }

  bool stellar_split(std::size_t budget) {
    if (dim_ > budget) return false;
    const std::size_t s = pick(simplices_.size());
    std::uniform_int_distribution<int> weight(1, 4);
    std::vector<Scalar> c(dim_, Scalar(0));
    Scalar total = 0;
    for (auto v : simplices_[s]) {
      Scalar w = weight(rng_);
      total += w;
      for (std::size_t r = 0; r < dim_; ++r) c[r] += w * vertices_[v][r];
    }
    for (auto& x : c) x /= total;
    const std::size_t centre = add_vertex(Point(std::move(c)));
    const SimplexIndices old = simplices_[s];
    for (std::size_t i = 0; i <= dim_; ++i) {
      SimplexIndices piece = old;
      piece[i] = centre;
      if (i == 0) simplices_[s] = piece;
      else simplices_.push_back(piece);
    }
    return true;
  }

  bool bisect_edge(std::size_t budget) {
    if (dim_ < 2) return false;
    const auto& host = simplices_[pick(simplices_.size())];
    const std::size_t i = pick(dim_ + 1);
    std::size_t j = pick(dim_);
    if (j >= i) ++j;
    const std::size_t u = host[i], w = host[j];
    std::vector<std::size_t> around;
    for (std::size_t s = 0; s < simplices_.size(); ++s) {
      const auto& sx = simplices_[s];
      if (std::find(sx.begin(), sx.end(), u) != sx.end() && std::find(sx.begin(), sx.end(), w) != sx.end())
        around.push_back(s);
    }
    if (around.size() > budget) return false;
    const std::size_t mid = add_vertex(ratio(1, 2) * (vertices_[u] + vertices_[w]));
    for (auto s : around) {
      SimplexIndices a = simplices_[s], b = simplices_[s];
      std::replace(a.begin(), a.end(), u, mid);
      std::replace(b.begin(), b.end(), w, mid);
      simplices_[s] = a;
      simplices_.push_back(b);
    }
    return true;
  }

  bool attach_outside() {
    const PLMesh probe = snapshot();
    const auto incidence = probe.facet_incidence();
    std::vector<std::pair<SimplexIndices, std::size_t>> boundary;
    for (const auto& [facet, owners] : incidence)
      if (owners.size() == 1) boundary.emplace_back(facet, owners.front());
    if (boundary.empty()) return false;
    const auto& [facet, owner] = boundary[pick(boundary.size())];

    std::size_t opposite = 0;
    for (auto v : simplices_[owner])
      if (std::find(facet.begin(), facet.end(), v) == facet.end()) opposite = v;

    std::vector<Point> frame;
    for (auto v : facet) frame.push_back(vertices_[v]);
    frame.push_back(vertices_[opposite]);
    std::vector<Scalar> unit(dim_ + 1, Scalar(0));
    unit.back() = 1;
    const AffineFunctional inward = solve_affine(frame, unit);

    Scalar scale = 0;
    for (const auto& c : inward.normal()) scale = std::max(scale, Scalar(abs(c)));
    std::vector<Scalar> centroid(dim_, Scalar(0));
    for (auto v : facet)
      for (std::size_t r = 0; r < dim_; ++r) centroid[r] += vertices_[v][r];
    std::uniform_int_distribution<int> step(1, 6);
    const Scalar length = ratio(step(rng_), 2);
    for (std::size_t r = 0; r < dim_; ++r)
      centroid[r] = centroid[r] / static_cast<long>(dim_) - length * inward.normal()[r] / scale;

    std::vector<Point> trial_vertices = vertices_;
    trial_vertices.emplace_back(std::move(centroid));
    std::vector<SimplexIndices> trial_simplices = simplices_;
    SimplexIndices fresh = facet;
    fresh.push_back(trial_vertices.size() - 1);
    trial_simplices.push_back(fresh);
    const PLMesh trial(dim_, trial_vertices, std::vector<Scalar>(trial_vertices.size(), Scalar(0)), trial_simplices);
    const std::size_t added = trial_simplices.size() - 1;
    if (trial.is_degenerate(added)) return false;
    for (std::size_t s = 0; s < added; ++s)
      if (!trial.conforming_pair(s, added)) return false;
    vertices_ = std::move(trial_vertices);
    simplices_ = std::move(trial_simplices);
    return true;
  }

  PLMesh snapshot(std::vector<Scalar> values = {}) const {
    if (values.empty()) values.assign(vertices_.size(), Scalar(0));
    return PLMesh(dim_, vertices_, std::move(values), simplices_);
  }

private:
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  std::size_t add_vertex(Point p) {
    vertices_.push_back(std::move(p));
    return vertices_.size() - 1;
  }

  std::size_t dim_;
  std::mt19937_64& rng_;
  std::vector<Point> vertices_;
  std::vector<SimplexIndices> simplices_;
};

} // namespace detail

/// Seeded random element of PL(d, n) with at most n_target simplices, d <= 3.
///
/// Coordinates stay within [-2^8, 2^8]; interior vertices get random heights
/// p/q with |p| <= 64, q <= 8 (either sign), boundary vertices get 0.
inline PLMesh generate_random(std::size_t dim, std::size_t n_target, std::uint64_t seed) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("random meshes are generated for 1 <= d <= 3 only");
  if (n_target < 1) throw std::invalid_argument("target simplex count must be at least 1");
  std::mt19937_64 rng(seed);
  detail::MeshGrower grower(dim, rng);
  grower.seed_simplex(16);

  std::uniform_int_distribution<int> move(0, 3);
  for (int attempt = 0; attempt < 400 && grower.count() < n_target; ++attempt) {
    const std::size_t budget = n_target - grower.count();
    switch (move(rng)) {
    case 0: grower.stellar_split(budget); break;
    case 1: grower.bisect_edge(budget); break;
    default: grower.attach_outside(); break;
    }
  }

  const PLMesh shape = grower.snapshot();
  const auto boundary = shape.boundary_vertices();
  std::vector<Scalar> values(shape.vertices().size(), Scalar(0));
  std::uniform_int_distribution<int> num(-64, 64), den(1, 8);
  for (std::size_t v = 0; v < values.size(); ++v)
    if (!std::binary_search(boundary.begin(), boundary.end(), v)) {
      values[v] = ratio(num(rng), den(rng));
    }
  return grower.snapshot(std::move(values));
}

} // namespace plrelu

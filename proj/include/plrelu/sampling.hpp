#pragma once

#include "plrelu/pl_mesh.hpp"

#include <random>
#include <vector>

namespace plrelu {

/// Rational evaluation points spread over the places PL identities tend to
/// break: mesh vertices, facets, simplex interiors, and the exterior.
///
/// Quotas: up to a fifth on vertices, then facets, interiors and exterior
/// points (a bounding box grown by half its size) in rotation.
inline std::vector<Point> stratified_samples(const PLMesh& mesh, std::size_t count, std::mt19937_64& rng) {
  std::vector<Point> out;
  if (count == 0) return out;
  const std::size_t d = mesh.dim();

  for (std::size_t v = 0; v < mesh.vertices().size() && out.size() < count / 5; ++v)
    out.push_back(mesh.vertices()[v]);

  std::uniform_int_distribution<int> weight(1, 9);
  auto convex_point = [&](const std::vector<Point>& pts) {
    std::vector<Scalar> c(d, Scalar(0));
    Scalar total = 0;
    for (const auto& p : pts) {
      Scalar w = weight(rng);
      total += w;
      for (std::size_t r = 0; r < d; ++r) c[r] += w * p[r];
    }
    for (auto& x : c) x /= total;
    return Point(std::move(c));
  };

  std::vector<Scalar> lo(d, Scalar(0)), hi(d, Scalar(1));
  if (!mesh.vertices().empty()) {
    lo = hi = mesh.vertices()[0].coords();
    for (const auto& v : mesh.vertices())
      for (std::size_t r = 0; r < d; ++r) {
        lo[r] = std::min(lo[r], v[r]);
        hi[r] = std::max(hi[r], v[r]);
      }
  }
  std::uniform_int_distribution<int> grid(0, 64);
  auto box_point = [&]() {
    std::vector<Scalar> c(d);
    for (std::size_t r = 0; r < d; ++r) {
      Scalar span = hi[r] - lo[r];
      if (span == 0) span = 1;
      // uniform on a 1/32 grid over [lo - span/2, hi + span/2]
      c[r] = lo[r] - span / 2 + ratio(grid(rng), 32) * span;
    }
    return Point(std::move(c));
  };

  const std::size_t n = mesh.simplex_count();
  std::size_t stratum = 0;
  while (out.size() < count) {
    const std::size_t kind = stratum++ % 3;
    if (n == 0 || kind == 2) {
      out.push_back(box_point());
      continue;
    }
    const std::size_t s = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    auto pts = mesh.simplex_points(s);
    if (kind == 0) {
      pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(std::uniform_int_distribution<std::size_t>(0, d)(rng)));
    }
    out.push_back(convex_point(pts));
  }
  return out;
}

inline std::vector<double> to_doubles(const Point& p) {
  std::vector<double> out;
  for (const auto& c : p.coords()) out.push_back(to_double(c));
  return out;
}

} // namespace plrelu

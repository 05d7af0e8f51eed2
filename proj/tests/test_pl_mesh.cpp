#include "oracles.hpp"
#include "plrelu/mesh_generator.hpp"
#include "plrelu/pl_mesh.hpp"
#include "plrelu/sampling.hpp"

#include <gtest/gtest.h>

using namespace plrelu;

namespace {

PLMesh hat(std::vector<Scalar> values = {0, 1, 0}) {
  return PLMesh(1, {Point{0}, Point{1}, Point{2}}, std::move(values), {{0, 1}, {1, 2}});
}

bool has_kind(const ValidationReport& r, MeshViolation::Kind k) {
  return std::any_of(r.violations.begin(), r.violations.end(), [&](const MeshViolation& v) { return v.kind == k; });
}

} // namespace

TEST(Validate, HatMeshIsValid) {
  auto report = hat().validate();
  EXPECT_TRUE(report.valid());
  EXPECT_EQ(hat().boundary_vertices(), (std::vector<std::size_t>{0, 2}));
}

TEST(Validate, NonzeroBoundaryValueIsReported) {
  auto report = hat({0, 1, 1}).validate();
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(report.violations[0].kind, MeshViolation::Kind::nonzero_boundary);
  EXPECT_EQ(report.violations[0].vertices, std::vector<std::size_t>{2});
}

TEST(Validate, OverlappingIntervalsAreNonConforming) {
  PLMesh mesh(1, {Point{0}, Point{2}, Point{1}, Point{3}}, {0, 0, 0, 0}, {{0, 1}, {2, 3}});
  auto report = mesh.validate();
  EXPECT_FALSE(report.valid());
  ASSERT_TRUE(has_kind(report, MeshViolation::Kind::non_conforming));
  EXPECT_EQ(report.violations[0].simplices, (std::vector<std::size_t>{0, 1}));
}

TEST(Validate, HangingVertexIsNonConforming) {
  // vertex 4 sits on the interior of edge (0,1) of the big triangle
  PLMesh mesh(2, {Point{0, 0}, Point{4, 0}, Point{0, 4}, Point{4, -4}, Point{2, 0}}, {0, 0, 0, 0, 0},
              {{0, 1, 2}, {0, 4, 3}, {4, 1, 3}});
  auto report = mesh.validate();
  EXPECT_TRUE(has_kind(report, MeshViolation::Kind::non_conforming));
}

TEST(Validate, EdgeAdjacentTrianglesConform) {
  PLMesh mesh(2, {Point{0, 0}, Point{4, 0}, Point{0, 4}, Point{4, 4}}, {0, 0, 0, 0}, {{0, 1, 2}, {1, 3, 2}});
  EXPECT_TRUE(mesh.validate().valid());
  // same triangles touching only at a vertex
  PLMesh touching(2, {Point{0, 0}, Point{1, 0}, Point{0, 1}, Point{-1, 0}, Point{0, -1}}, {0, 0, 0, 0, 0},
                  {{0, 1, 2}, {0, 3, 4}});
  EXPECT_TRUE(touching.validate().valid());
}

TEST(Validate, DuplicateCoordinatesUnderDifferentIndicesAreCaught) {
  PLMesh mesh(1, {Point{0}, Point{1}, Point{1}, Point{2}}, {0, 0, 0, 0}, {{0, 1}, {2, 3}});
  EXPECT_TRUE(has_kind(mesh.validate(), MeshViolation::Kind::non_conforming));
}

TEST(Validate, DegenerateSimplexIsReported) {
  PLMesh mesh(2, {Point{0, 0}, Point{1, 1}, Point{2, 2}}, {0, 0, 0}, {{0, 1, 2}});
  auto report = mesh.validate();
  ASSERT_FALSE(report.valid());
  EXPECT_EQ(report.violations[0].kind, MeshViolation::Kind::degenerate_simplex);
}

TEST(PLMesh, StructuralErrorsThrow) {
  EXPECT_THROW(PLMesh(1, {Point{0}, Point{1}}, {0}, {{0, 1}}), DimensionError);
  EXPECT_THROW(PLMesh(1, {Point{0}, Point{1}}, {0, 0}, {{0, 5}}), std::out_of_range);
  EXPECT_THROW(PLMesh(1, {Point{0}, Point{1}}, {0, 0}, {{0}}), DimensionError);
  EXPECT_THROW(PLMesh(2, {Point{0}, Point{1}}, {0, 0}, {}), DimensionError);
}

TEST(PLMesh, OrientationIsNormalizedAtLoad) {
  PLMesh mesh(2, {Point{0, 0}, Point{1, 0}, Point{0, 1}}, {0, 0, 0}, {{0, 2, 1}});
  EXPECT_EQ(orientation(mesh.simplex_points(0)), 1);
}

TEST(EvalMesh, HatValues) {
  const auto m = hat();
  EXPECT_EQ(eval_mesh(m, Point{Scalar(1, 2)}), Scalar(1, 2));
  EXPECT_EQ(eval_mesh(m, Point{5}), 0);
  EXPECT_EQ(eval_mesh(m, Point{1}), 1);
  EXPECT_EQ(eval_mesh(m, Point{Scalar(3, 2)}), Scalar(1, 2));
  EXPECT_EQ(eval_mesh(m, Point{-1}), 0);
  EXPECT_THROW(eval_mesh(m, (Point{0, 0})), DimensionError);
}

TEST(EvalMesh, ContinuousAcrossSharedFacets) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const std::size_t d = 1 + seed % 3;
    const PLMesh mesh = generate_random(d, 10, seed);
    std::mt19937_64 rng(seed);
    for (const auto& [facet, owners] : mesh.facet_incidence()) {
      if (owners.size() != 2) continue;
      std::vector<Point> pts;
      for (auto v : facet) pts.push_back(mesh.vertices()[v]);
      for (int k = 0; k < 3; ++k) {
        std::vector<Scalar> c(d, Scalar(0));
        Scalar total = 0;
        for (const auto& p : pts) {
          Scalar w = std::uniform_int_distribution<int>(0, 5)(rng);
          total += w;
          for (std::size_t r = 0; r < d; ++r) c[r] += w * p[r];
        }
        if (total == 0) continue;
        for (auto& x : c) x /= total;
        const Point x(c);
        EXPECT_TRUE(mesh.contains(owners[0], x) && mesh.contains(owners[1], x));
        EXPECT_EQ(mesh.interpolant(owners[0], x), mesh.interpolant(owners[1], x));
      }
    }
  }
}

TEST(EvalMesh, ZeroOnBoundaryAndOutside) {
  for (std::uint64_t seed = 0; seed < 9; ++seed) {
    const std::size_t d = 1 + seed % 3;
    const PLMesh mesh = generate_random(d, 12, seed);
    for (const auto& facet : mesh.boundary_facets()) {
      Point centroid = mesh.vertices()[facet[0]];
      for (std::size_t i = 1; i < facet.size(); ++i) centroid = centroid + mesh.vertices()[facet[i]];
      centroid = ratio(1, static_cast<long>(facet.size())) * centroid;
      EXPECT_EQ(mesh.eval(centroid), 0);
    }
    EXPECT_EQ(mesh.eval(Point(std::vector<Scalar>(d, Scalar(10000)))), 0);
  }
}

TEST(GenerateRandom, ContractAndDeterminism) {
  const PLMesh small = generate_random(1, 2, 7);
  EXPECT_LE(small.simplex_count(), 2u);
  EXPECT_TRUE(small.validate().valid());

  const PLMesh a = generate_random(2, 8, 1);
  const PLMesh b = generate_random(2, 8, 1);
  EXPECT_TRUE(a.validate().valid());
  EXPECT_EQ(a.vertices(), b.vertices());
  EXPECT_EQ(a.values(), b.values());
  EXPECT_EQ(a.simplices(), b.simplices());

  EXPECT_THROW(generate_random(4, 5, 0), std::invalid_argument);
  EXPECT_THROW(generate_random(2, 0, 0), std::invalid_argument);
}

TEST(GenerateRandom, AlwaysValidAndUsuallyExactCount) {
  std::size_t exact = 0, total = 0;
  for (std::size_t d = 1; d <= 3; ++d)
    for (std::size_t n : {1, 2, 5, 10, 20})
      for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const PLMesh mesh = generate_random(d, n, seed * 31 + n);
        const auto report = mesh.validate();
        EXPECT_TRUE(report.valid()) << "d=" << d << " n=" << n << " seed=" << seed;
        EXPECT_LE(mesh.simplex_count(), n);
        EXPECT_GE(mesh.simplex_count(), 1u);
        for (const auto& v : mesh.vertices())
          for (const auto& c : v.coords()) EXPECT_LE(abs(c), 256);
        exact += mesh.simplex_count() == n;
        ++total;
      }
  EXPECT_GE(exact * 10, total * 9);
}

TEST(Sampling, StratifiedAndDeterministic) {
  const PLMesh mesh = generate_random(2, 6, 3);
  std::mt19937_64 r1(1), r2(1);
  const auto a = stratified_samples(mesh, 120, r1);
  const auto b = stratified_samples(mesh, 120, r2);
  EXPECT_EQ(a.size(), 120u);
  EXPECT_EQ(a, b);
  std::size_t inside = 0, outside = 0;
  for (const auto& p : a) {
    bool in = false;
    for (std::size_t s = 0; s < mesh.simplex_count(); ++s) in = in || mesh.contains(s, p);
    in ? ++inside : ++outside;
  }
  EXPECT_GT(inside, 0u);
  EXPECT_GT(outside, 0u);
}

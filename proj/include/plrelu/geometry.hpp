#pragma once

#include "plrelu/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace plrelu {

class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a construction needs affinely independent input and does not get it.
class DegeneracyError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

using IndexSet = std::vector<std::size_t>;

/// A point of R^k with exact coordinates.
class Point {
public:
  Point() = default;
  explicit Point(std::vector<Scalar> coords) : coords_(std::move(coords)) {}
  Point(std::initializer_list<Scalar> coords) : coords_(coords) {}

  std::size_t dim() const { return coords_.size(); }
  const Scalar& operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<Scalar>& coords() const { return coords_; }

  /// First `k` coordinates (vertical projection R^{k+1} -> R^k when k = dim - 1).
  Point head(std::size_t k) const {
    return Point(std::vector<Scalar>(coords_.begin(), coords_.begin() + static_cast<std::ptrdiff_t>(k)));
  }
  /// Appends one coordinate (lift R^k -> R^{k+1}).
  Point lifted(const Scalar& t) const {
    auto c = coords_;
    c.push_back(t);
    return Point(std::move(c));
  }

  friend bool operator==(const Point&, const Point&) = default;

  friend Point operator+(const Point& a, const Point& b) {
    check_same_dim(a, b);
    std::vector<Scalar> c(a.dim());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] + b[i];
    return Point(std::move(c));
  }
  friend Point operator-(const Point& a, const Point& b) {
    check_same_dim(a, b);
    std::vector<Scalar> c(a.dim());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] - b[i];
    return Point(std::move(c));
  }
  friend Point operator*(const Scalar& s, const Point& a) {
    std::vector<Scalar> c(a.dim());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = s * a[i];
    return Point(std::move(c));
  }

  std::string str() const {
    std::string out = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (i) out += ", ";
      out += format_scalar(coords_[i]);
    }
    return out + ")";
  }

private:
  static void check_same_dim(const Point& a, const Point& b) {
    if (a.dim() != b.dim())
      throw DimensionError("point dimensions differ: " + std::to_string(a.dim()) + " vs " +
                           std::to_string(b.dim()));
  }

  std::vector<Scalar> coords_;
};

/// x -> normal . x + offset. Stored unnormalized.
class AffineFunctional {
public:
  AffineFunctional() = default;
  AffineFunctional(std::vector<Scalar> normal, Scalar offset)
      : normal_(std::move(normal)), offset_(std::move(offset)) {}

  std::size_t dim() const { return normal_.size(); }
  const std::vector<Scalar>& normal() const { return normal_; }
  const Scalar& offset() const { return offset_; }

  Scalar operator()(const Point& x) const {
    if (x.dim() != dim())
      throw DimensionError("functional on R^" + std::to_string(dim()) + " applied to point in R^" +
                           std::to_string(x.dim()));
    Scalar v = offset_;
    for (std::size_t i = 0; i < normal_.size(); ++i) v += normal_[i] * x[i];
    return v;
  }

  bool is_zero() const {
    return offset_ == 0 && std::all_of(normal_.begin(), normal_.end(), [](const Scalar& c) { return c == 0; });
  }

  AffineFunctional scaled(const Scalar& s) const {
    auto n = normal_;
    for (auto& c : n) c *= s;
    return {std::move(n), offset_ * s};
  }

  /// Same zero set and same positive side: equal up to a positive factor,
  /// compared by cross-multiplication.
  bool same_halfspace(const AffineFunctional& other) const {
    if (dim() != other.dim()) return false;
    auto coeff = [](const AffineFunctional& f, std::size_t i) -> const Scalar& {
      return i < f.dim() ? f.normal_[i] : f.offset_;
    };
    std::size_t pivot = 0;
    while (pivot <= dim() && coeff(*this, pivot) == 0) ++pivot;
    if (pivot > dim()) return other.is_zero();
    const Scalar& a = coeff(*this, pivot);
    const Scalar& b = coeff(other, pivot);
    if (sign(a) != sign(b)) return false;
    for (std::size_t i = 0; i <= dim(); ++i)
      if (coeff(*this, i) * b != coeff(other, i) * a) return false;
    return true;
  }

  friend bool operator==(const AffineFunctional&, const AffineFunctional&) = default;

  std::string str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < normal_.size(); ++i) os << (i ? ", " : "") << format_scalar(normal_[i]);
    os << "] . x + " << format_scalar(offset_);
    return os.str();
  }

private:
  std::vector<Scalar> normal_;
  Scalar offset_;
};

using Matrix = std::vector<std::vector<Scalar>>;

/// Exact determinant by fraction-based Gaussian elimination.
inline Scalar determinant(Matrix m) {
  const std::size_t n = m.size();
  Scalar det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Scalar factor = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
    }
  }
  return det;
}

/// Solves the square system a x = b; nullopt when a is singular.
inline std::optional<std::vector<Scalar>> solve_linear(Matrix a, std::vector<Scalar> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Scalar factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
      b[r] -= factor * b[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

namespace detail {

inline std::size_t common_dim(std::span<const Point> points) {
  if (points.empty()) throw DimensionError("empty point list");
  const std::size_t k = points.front().dim();
  for (const auto& p : points)
    if (p.dim() != k) throw DimensionError("points of mixed dimension");
  return k;
}

inline std::string describe(std::span<const Point> points) {
  std::string out;
  for (std::size_t i = 0; i < points.size(); ++i) out += (i ? " " : "") + points[i].str();
  return out;
}

} // namespace detail

/// Sign of det[p1 - p0, ..., pk - p0] for k+1 points of R^k.
inline int orientation(std::span<const Point> points) {
  const std::size_t k = detail::common_dim(points);
  if (points.size() != k + 1)
    throw DimensionError("orientation needs " + std::to_string(k + 1) + " points in R^" + std::to_string(k) +
                         ", got " + std::to_string(points.size()));
  Matrix m(k, std::vector<Scalar>(k));
  for (std::size_t row = 0; row < k; ++row)
    for (std::size_t col = 0; col < k; ++col) m[row][col] = points[col + 1][row] - points[0][row];
  return sign(determinant(std::move(m)));
}

inline int orientation(std::initializer_list<Point> points) {
  return orientation(std::span<const Point>(points.begin(), points.size()));
}

/// The affine g with g(points[i]) = values[i], for k+1 affinely independent points of R^k.
inline AffineFunctional solve_affine(std::span<const Point> points, std::span<const Scalar> values) {
  const std::size_t k = detail::common_dim(points);
  if (points.size() != k + 1 || values.size() != k + 1)
    throw DimensionError("solve_affine needs k+1 points and values in R^k");
  Matrix a(k + 1, std::vector<Scalar>(k + 1));
  for (std::size_t i = 0; i <= k; ++i) {
    for (std::size_t j = 0; j < k; ++j) a[i][j] = points[i][j];
    a[i][k] = 1;
  }
  auto x = solve_linear(std::move(a), std::vector<Scalar>(values.begin(), values.end()));
  if (!x) throw DegeneracyError("affinely dependent points: " + detail::describe(points));
  Scalar offset = x->back();
  x->pop_back();
  return {std::move(*x), std::move(offset)};
}

/// Calls fn(indices) for every sorted k-subset of {0..n-1}.
template <typename Fn>
void for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  IndexSet idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  while (true) {
    fn(std::as_const(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

template <typename T>
std::vector<T> pick(std::span<const T> items, const IndexSet& idx) {
  std::vector<T> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(items[i]);
  return out;
}

inline IndexSet complement(std::size_t n, const IndexSet& idx) {
  IndexSet out;
  for (std::size_t i = 0; i < n; ++i)
    if (std::find(idx.begin(), idx.end(), i) == idx.end()) out.push_back(i);
  return out;
}

/// Throws DegeneracyError unless every (k+1)-subset of the given points of R^k is affinely independent.
inline void require_general_position(std::span<const Point> points) {
  const std::size_t k = detail::common_dim(points);
  for_each_combination(points.size(), k + 1, [&](const IndexSet& idx) {
    auto subset = pick(points, idx);
    if (orientation(subset) == 0)
      throw DegeneracyError("general position violated: affinely dependent subset " + detail::describe(subset));
  });
}

/// Ceil((d+2)^2 / 4): the facet-count bound asserted for a shadow of d+2 points.
constexpr std::size_t facet_count_bound(std::size_t d) { return ((d + 2) * (d + 2) + 3) / 4; }

/// Floor((d+2)^2 / 4): the largest facet count a d-polytope on d+2 vertices can have.
constexpr std::size_t max_facet_count(std::size_t d) { return (d + 2) * (d + 2) / 4; }

struct HullFacet {
  IndexSet vertices;       ///< indices into the input, sorted
  AffineFunctional support; ///< zero on the facet, positive on the remaining points
};

/// Facets of conv(points) for d+2 points of R^d in general position.
///
/// Brute force: each d-subset S is a facet iff the two points outside S lie
/// strictly on the same side of aff(S).
inline std::vector<HullFacet> hull_facets(std::span<const Point> points) {
  const std::size_t d = detail::common_dim(points);
  if (points.size() != d + 2)
    throw DimensionError("hull_facets expects d+2 = " + std::to_string(d + 2) + " points, got " +
                         std::to_string(points.size()));
  require_general_position(points);

  std::vector<HullFacet> facets;
  for_each_combination(points.size(), d, [&](const IndexSet& idx) {
    IndexSet rest = complement(points.size(), idx);
    // functional vanishing on S and equal to 1 at rest[0]
    auto frame = pick(points, idx);
    frame.push_back(points[rest[0]]);
    std::vector<Scalar> values(d + 1, Scalar(0));
    values.back() = 1;
    AffineFunctional h = solve_affine(frame, values);
    if (sign(h(points[rest[1]])) > 0) facets.push_back({idx, std::move(h)});
  });
  return facets;
}

struct RadonPartition {
  IndexSet a; ///< smaller side; on a tie, the side holding index 0
  IndexSet b;
  Point point;
  std::vector<Scalar> weights_a; ///< convex coefficients of `point` over a
  std::vector<Scalar> weights_b; ///< convex coefficients of `point` over b
};

/// Unique Radon partition of d+2 points of R^d in general position.
///
/// The affine dependence sum(l_i p_i) = 0, sum(l_i) = 0 is read off by
/// Cramer's rule: l_i = (-1)^i det of the (d+1)x(d+1) minor without column i.
inline RadonPartition radon_point(std::span<const Point> points) {
  const std::size_t d = detail::common_dim(points);
  if (points.size() != d + 2)
    throw DimensionError("radon_point expects d+2 = " + std::to_string(d + 2) + " points, got " +
                         std::to_string(points.size()));
  require_general_position(points);

  const std::size_t m = d + 2;
  std::vector<Scalar> lambda(m);
  for (std::size_t skip = 0; skip < m; ++skip) {
    Matrix minor(d + 1, std::vector<Scalar>(d + 1));
    for (std::size_t col = 0, c = 0; col < m; ++col) {
      if (col == skip) continue;
      for (std::size_t row = 0; row < d; ++row) minor[row][c] = points[col][row];
      minor[d][c] = 1;
      ++c;
    }
    lambda[skip] = determinant(std::move(minor));
    if (skip % 2 == 1) lambda[skip] = -lambda[skip];
  }
  if (std::all_of(lambda.begin(), lambda.end(), [](const Scalar& l) { return l == 0; }))
    throw DegeneracyError("zero affine dependence vector for " + detail::describe(points));

  IndexSet pos, neg;
  for (std::size_t i = 0; i < m; ++i) {
    if (sign(lambda[i]) > 0) pos.push_back(i);
    else if (sign(lambda[i]) < 0) neg.push_back(i);
    else throw DegeneracyError("general position violated: zero Radon coefficient at index " + std::to_string(i));
  }

  auto convex = [&](const IndexSet& side) {
    Scalar total = 0;
    for (auto i : side) total += lambda[i];
    std::vector<Scalar> w;
    for (auto i : side) w.push_back(lambda[i] / total);
    return w;
  };

  bool swap_sides = pos.size() > neg.size() || (pos.size() == neg.size() && pos.front() != 0);
  RadonPartition out;
  out.a = swap_sides ? neg : pos;
  out.b = swap_sides ? pos : neg;
  out.weights_a = convex(out.a);
  out.weights_b = convex(out.b);
  std::vector<Scalar> p(d, Scalar(0));
  for (std::size_t j = 0; j < out.a.size(); ++j)
    for (std::size_t r = 0; r < d; ++r) p[r] += out.weights_a[j] * points[out.a[j]][r];
  out.point = Point(std::move(p));
  return out;
}

} // namespace plrelu

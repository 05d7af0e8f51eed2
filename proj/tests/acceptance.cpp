// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include "oracles.hpp"
#include "plrelu/plrelu.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>

using namespace plrelu;

namespace {

int failures = 0;
std::map<int, std::string> lines; // printed in criterion order at the end

void report(int id, bool pass, const std::string& what, const std::string& detail, double seconds) {
  char time[32];
  std::snprintf(time, sizeof time, "%.1fs", seconds);
  lines[id] = std::string(pass ? "PASS" : "FAIL") + " criterion " + std::to_string(id) + ": " + what + " [" + detail +
              "] (" + time + ")";
  if (!pass) ++failures;
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::size_t ceil_log2(std::size_t v) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < v) ++k;
  return k;
}

// Star of one interior vertex over a simplex: d+1 cells, valid in any d.
PLMesh stellar_mesh(std::size_t d) {
  std::vector<Point> vertices;
  vertices.emplace_back(std::vector<Scalar>(d, Scalar(0)));
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Scalar> c(d, Scalar(0));
    c[i] = static_cast<long>(4 * d + i);
    vertices.emplace_back(std::move(c));
  }
  std::vector<Scalar> centre(d, Scalar(0));
  for (std::size_t i = 0; i < d; ++i) centre[i] = ratio(static_cast<long>(3 + i), 2);
  vertices.emplace_back(std::move(centre));
  std::vector<Scalar> values(d + 2, Scalar(0));
  values.back() = ratio(7, 3);
  std::vector<SimplexIndices> simplices;
  for (std::size_t skip = 0; skip <= d; ++skip) {
    SimplexIndices s;
    for (std::size_t v = 0; v <= d; ++v)
      if (v != skip) s.push_back(v);
    s.push_back(d + 1);
    simplices.push_back(std::move(s));
  }
  return PLMesh(d, std::move(vertices), std::move(values), std::move(simplices));
}

// Criteria 1, 2, 5 share the mesh corpus.
void identity_and_fidelity() {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t meshes = 0, exact_points = 0, float_points = 0, mismatches = 0, bad_counts = 0, invalid = 0;
  std::size_t pruned_total = 0, terms_total = 0;
  double max_err = 0, fidelity_seconds = 0;
  std::string first_problem;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const std::size_t d = 1 + i % 3;
    const std::size_t target = 2 + (i * 7) % 19;
    const PLMesh mesh = generate_random(d, target, 5000 + i);
    ++meshes;
    if (!mesh.validate().valid()) {
      ++invalid;
      continue;
    }
    const std::size_t n = mesh.simplex_count();
    const auto dec = decompose(mesh, std::nullopt, i);
    const auto pruned = prune(dec);
    terms_total += dec.terms.size();
    pruned_total += pruned.terms.size();
    if (dec.terms.size() != 2 * n || pruned.terms.size() > 2 * n) ++bad_counts;

    std::mt19937_64 rng(i);
    for (const auto& x : stratified_samples(mesh, 120, rng)) {
      ++exact_points;
      const Scalar want = mesh.eval(x);
      if (dec.eval(x) != want || pruned.eval(x) != want) {
        if (first_problem.empty()) first_problem = "mesh " + std::to_string(i) + " at " + x.str();
        ++mismatches;
      }
    }

    const auto tf = std::chrono::steady_clock::now();
    const auto net = compile_decomposition(dec);
    for (const auto& x : stratified_samples(mesh, 1000, rng)) {
      ++float_points;
      max_err = std::max(max_err, std::abs(net.forward(to_doubles(x)) - to_double(mesh.eval(x))));
    }
    fidelity_seconds += since(tf);
  }
  const double total = since(t0);
  std::ostringstream d1, d2, d5;
  d1 << meshes << " meshes, " << exact_points << " exact samples, " << mismatches << " mismatches, " << invalid
     << " invalid meshes";
  if (!first_problem.empty()) d1 << ", first at " << first_problem;
  report(1, mismatches == 0 && invalid == 0, "exact decomposition identity", d1.str(), total - fidelity_seconds);
  d2 << terms_total << " terms before pruning, " << pruned_total << " after, " << bad_counts << " count violations";
  report(2, bad_counts == 0 && invalid == 0, "term count 2n (<= 2n after pruning)", d2.str(), 0.0);
  d5 << float_points << " float samples, max |forward - eval| = " << max_err << " (tol 1e-6)";
  report(5, max_err <= 1e-6 && float_points >= 1000 * meshes, "network fidelity", d5.str(), fidelity_seconds);
}

// Criteria 3 and 4.
void maxmin_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t mismatches = 0, over_bound = 0, checks = 0;
  std::ostringstream maxima;
  for (std::size_t d = 1; d <= 3; ++d) {
    std::mt19937_64 rng(700 + d);
    std::size_t max_m = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      const auto delta = oracle::random_lifted_simplex(rng, d);
      const auto form = maxmin_form(delta);
      max_m = std::max(max_m, form.functionals.size());
      if (form.functionals.size() > facet_count_bound(d)) ++over_bound;
      // shadow vertices and the apex, then random points around the shadow
      std::vector<Point> pts = delta.shadow();
      pts.push_back(form.apex);
      while (pts.size() < 50) pts.push_back(oracle::random_point(rng, d, 10, 5));
      for (const auto& x : pts) {
        ++checks;
        if (form(x) != delta.tau(x)) ++mismatches;
      }
    }
    maxima << (d > 1 ? ", " : "") << "d=" << d << ": max " << max_m << " <= " << facet_count_bound(d);
  }
  const double t = since(t0);
  report(3, mismatches == 0, "max-min form equals clipping evaluator",
         std::to_string(checks) + " exact comparisons, " + std::to_string(mismatches) + " mismatches", t);
  report(4, over_bound == 0, "functional count <= ceil((d+2)^2/4)", maxima.str(), 0.0);
}

void depth_bound() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  double c0 = -1e9;
  std::ostringstream detail;
  for (std::size_t d = 1; d <= 8; ++d) {
    const std::size_t lg = ceil_log2(d);
    std::mt19937_64 rng(40 + d);
    // synthetic forms at the functional-count bound
    MaxMinForm form{{}, Point(std::vector<Scalar>(d, Scalar(0))), 1};
    for (std::size_t i = 0; i < facet_count_bound(d); ++i)
      form.functionals.emplace_back(oracle::random_point(rng, d, 3, 2).coords(), oracle::random_scalar(rng, 3, 2));
    std::size_t simplex_depth = compile_simplex(form).depth();
    // and real simplices padded to the fixed architecture
    for (int trial = 0; trial < 10; ++trial) {
      const auto delta = oracle::random_lifted_simplex(rng, d);
      simplex_depth = std::max(simplex_depth, compile_simplex(maxmin_form(delta), max_facet_count(d)).depth());
    }
    ok = ok && simplex_depth <= 2 * lg + 3;

    const PLMesh mesh = d <= 3 ? generate_random(d, 12, 900 + d) : stellar_mesh(d);
    ok = ok && mesh.validate().valid();
    const auto net = compile_mesh(mesh, d);
    const auto s = stats(net, d, mesh.simplex_count());
    ok = ok && net.depth() <= 2 * lg + 4;
    c0 = std::max(c0, s.c0);
    std::mt19937_64 srng(d);
    for (const auto& x : stratified_samples(mesh, 50, srng))
      ok = ok && std::abs(net.forward(to_doubles(x)) - to_double(mesh.eval(x))) <= 1e-6;
    detail << (d > 1 ? ", " : "") << "d=" << d << ": " << simplex_depth << "/" << net.depth();
  }
  detail << " (simplex/full depth); max C0 = " << c0;
  report(6, ok, "depth <= 2ceil(log2 d)+3 per simplex, +4 full", detail.str(), since(t0));
}

// Criteria 7 and 8.
void scaling_and_universality() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t ns[] = {2, 5, 10, 20};
  std::map<std::pair<std::size_t, std::size_t>, NetworkStats> worst;
  bool shapes_ok = true;
  std::size_t compiled = 0;
  Scalar c1 = 0, c2 = 0;
  for (std::size_t d = 1; d <= 3; ++d)
    for (std::size_t n : ns) {
      std::optional<std::vector<LayerShape>> reference;
      NetworkStats w;
      for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const PLMesh mesh = generate_random(d, n, 100 * n + seed);
        const auto net = compile_mesh(mesh, seed, {.fixed_architecture = true, .term_slots = 2 * n});
        ++compiled;
        if (!reference) reference = net.shape_signature();
        shapes_ok = shapes_ok && net.shape_signature() == *reference;
        const auto s = stats(net, d, n);
        w.width = std::max(w.width, s.width);
        w.size = std::max(w.size, s.size);
        w.c1 = std::max(w.c1, s.c1);
        w.c2 = std::max(w.c2, s.c2);
      }
      worst[{d, n}] = w;
      c1 = std::max(c1, w.c1);
      c2 = std::max(c2, w.c2);
    }
  const double t = since(t0);

  // linear in n: for n < n', width(n') <= (n'/n) width(n), likewise size
  bool linear = true;
  for (std::size_t d = 1; d <= 3; ++d)
    for (std::size_t a : ns)
      for (std::size_t b : ns) {
        if (b <= a) continue;
        const auto& lo = worst[{d, a}];
        const auto& hi = worst[{d, b}];
        linear = linear && hi.width * a <= lo.width * b && hi.size * a <= lo.size * b;
      }
  std::ostringstream d7;
  d7 << "C1 = " << format_scalar(c1) << ", C2 = " << format_scalar(c2) << "; d=3,n=20: width "
     << worst[{3, 20}].width << ", size " << worst[{3, 20}].size << "; linear in n: " << (linear ? "yes" : "no");
  report(7, linear, "width/size scale as d^2 n", d7.str(), t);
  report(8, shapes_ok, "one layer-shape signature per (d, n)",
         std::to_string(compiled) + " networks over 12 (d, n) pairs", 0.0);
}

} // namespace

int main() {
  identity_and_fidelity();
  maxmin_equivalence();
  depth_bound();
  scaling_and_universality();
  for (const auto& [id, line] : lines) std::printf("%s\n", line.c_str());
  return failures == 0 ? 0 : 1;
}

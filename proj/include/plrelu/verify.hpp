#pragma once

#include "plrelu/cone_decomposition.hpp"
#include "plrelu/relu_compiler.hpp"
#include "plrelu/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <thread>

namespace plrelu {

struct VerifyOptions {
  std::size_t samples = 1000;
  double tolerance = 1e-9;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::optional<std::size_t> flip_sign; ///< negate this term before checking (fault injection)
};

struct VerifyReport {
  std::size_t samples = 0;
  double max_abs_error = 0;
  std::size_t exact_mismatches = 0;
  std::size_t term_count = 0;
  std::size_t depth = 0;
  std::size_t width = 0;
  std::size_t size = 0;
  double tolerance = 0;
  bool pass = false;
};

/// Checks mesh == decomposition exactly and |mesh - network| <= tolerance on
/// stratified samples. Results do not depend on `jobs`.
inline VerifyReport verify_mesh(const PLMesh& mesh, const VerifyOptions& options) {
  if (options.samples == 0) throw std::invalid_argument("verification needs at least one sample");
  SignedDecomposition dec = decompose(mesh, std::nullopt, options.seed);
  if (options.flip_sign) {
    if (*options.flip_sign >= dec.terms.size())
      throw std::out_of_range("term " + std::to_string(*options.flip_sign) + " does not exist (" +
                              std::to_string(dec.terms.size()) + " terms)");
    dec.terms[*options.flip_sign].sign *= -1;
  }
  const ReluNetwork net = compile_decomposition(dec);

  std::mt19937_64 rng(options.seed ^ 0x9e3779b97f4a7c15ULL);
  const auto points = stratified_samples(mesh, options.samples, rng);

  struct Partial {
    double max_err = 0;
    std::size_t mismatches = 0;
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(points.size())));
  std::vector<Partial> partials(jobs);
  auto work = [&](unsigned job) {
    Partial& p = partials[job];
    for (std::size_t i = job; i < points.size(); i += jobs) {
      const Scalar exact = mesh.eval(points[i]);
      if (dec.eval(points[i]) != exact) ++p.mismatches;
      const auto x = to_doubles(points[i]);
      p.max_err = std::max(p.max_err, std::abs(net.forward(x) - to_double(exact)));
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::jthread> threads;
    for (unsigned j = 0; j < jobs; ++j) threads.emplace_back(work, j);
  }

  VerifyReport report;
  report.samples = points.size();
  for (const auto& p : partials) {
    report.max_abs_error = std::max(report.max_abs_error, p.max_err);
    report.exact_mismatches += p.mismatches;
  }
  report.term_count = dec.terms.size();
  report.depth = net.depth();
  report.width = net.width();
  report.size = net.size();
  report.tolerance = options.tolerance;
  report.pass = report.exact_mismatches == 0 && report.max_abs_error <= options.tolerance;
  return report;
}

} // namespace plrelu

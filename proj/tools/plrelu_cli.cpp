// plrelu: lower PL meshes to signed simplex sums and ReLU networks, and check
// that all three agree.
//
// Exit codes: 0 success, 1 domain failure (invalid mesh, failed
// verification, non-generic cone point), 2 I/O or parse failure.

#include "plrelu/plrelu.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace plrelu;
using io::json;

constexpr int exit_ok = 0;
constexpr int exit_domain = 1;
constexpr int exit_io = 2;

/// Raised for failures that map to exit code 1.
class DomainFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

Point parse_point(const std::string& text) {
  std::vector<Scalar> coords;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) coords.push_back(parse_scalar(item));
  if (coords.empty()) throw ParseError("empty point '" + text + "'");
  return Point(std::move(coords));
}

void emit(const json& j, const std::string& out) {
  if (out.empty() || out == "-") std::cout << j.dump(2) << '\n';
  else io::write_json_file(out, j);
}

void print_report(std::ostream& os, const ValidationReport& report) {
  if (report.valid()) {
    os << "valid\n";
    return;
  }
  os << "invalid: " << report.violations.size() << " violation(s)\n";
  for (const auto& v : report.violations) os << "  " << to_string(v.kind) << ": " << v.message << '\n';
}

PLMesh load_valid_mesh(const std::string& path) {
  PLMesh mesh = io::mesh_from_json(io::read_json_file(path));
  auto report = mesh.validate();
  if (!report.valid()) {
    std::ostringstream os;
    print_report(os, report);
    throw DomainFailure(os.str());
  }
  return mesh;
}

void print_stats(std::ostream& os, const NetworkStats& s, std::size_t d, std::size_t n) {
  os << "d      " << d << '\n'
     << "n      " << n << '\n'
     << "depth  " << s.depth << '\n'
     << "width  " << s.width << '\n'
     << "size   " << s.size << '\n'
     << std::setprecision(6) << "C0     " << s.c0 << "  (depth - 2 log2 d)\n"
     << "C1     " << format_scalar(s.c1) << " = " << to_double(s.c1) << "  (width / d^2 n)\n"
     << "C2     " << format_scalar(s.c2) << " = " << to_double(s.c2) << "  (size / d^2 n)\n";
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lower compactly supported PL functions to simplex-function sums and ReLU networks"};
  app.require_subcommand(1);

  std::string mesh_file, artifact_file, network_file, out_file, cone_point_text, x_text;
  std::uint64_t seed = 0;
  bool do_prune = false, sweep = false;
  std::size_t samples = 1000, dim = 0, n = 0, seeds = 20;
  double tol = 1e-9;
  unsigned jobs = 1;
  std::optional<std::size_t> flip;

  auto* validate_cmd = app.add_subcommand("validate", "Check mesh invariants");
  validate_cmd->add_option("mesh", mesh_file, "Mesh JSON file")->required();

  auto* decompose_cmd = app.add_subcommand("decompose", "Write the signed simplex-function decomposition");
  decompose_cmd->add_option("mesh", mesh_file, "Mesh JSON file")->required();
  decompose_cmd->add_option("--out", out_file, "Output file (stdout if omitted)");
  decompose_cmd->add_option("--cone-point", cone_point_text, "Cone point \"c1,...,c_{d+1}\"");
  decompose_cmd->add_option("--seed", seed, "Seed for cone point sampling");
  decompose_cmd->add_flag("--prune", do_prune, "Cancel identical opposite-sign terms");

  auto* compile_cmd = app.add_subcommand("compile", "Write the ReLU network computing the mesh function");
  compile_cmd->add_option("mesh", mesh_file, "Mesh JSON file")->required();
  compile_cmd->add_option("--out", out_file, "Output file (stdout if omitted)");
  compile_cmd->add_option("--seed", seed, "Seed for cone point sampling");

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a mesh, decomposition or network at a point");
  eval_cmd->add_option("artifact", artifact_file, "Mesh, decomposition or network JSON file")->required();
  eval_cmd->add_option("x", x_text, "Point \"x1,...,xd\"")->required();

  auto* verify_cmd = app.add_subcommand("verify", "Cross-check mesh, decomposition and network");
  verify_cmd->add_option("mesh", mesh_file, "Mesh JSON file")->required();
  verify_cmd->add_option("--samples", samples, "Number of sample points");
  verify_cmd->add_option("--tol", tol, "Absolute tolerance for the network");
  verify_cmd->add_option("--seed", seed, "Seed for cone point and samples");
  verify_cmd->add_option("--jobs", jobs, "Worker threads");
  verify_cmd->add_option("--debug-flip-sign", flip, "Negate the sign of term I before checking");

  auto* gen_cmd = app.add_subcommand("gen", "Generate a random valid mesh (d <= 3)");
  gen_cmd->add_option("dim", dim, "Dimension d")->required();
  gen_cmd->add_option("n", n, "Maximum simplex count")->required();
  gen_cmd->add_option("--seed", seed, "Generator seed");
  gen_cmd->add_option("--out", out_file, "Output file (stdout if omitted)");

  auto* stats_cmd = app.add_subcommand("stats", "Report depth/width/size and implied constants");
  stats_cmd->add_option("network", network_file, "Network JSON file");
  stats_cmd->add_option("--dim", dim, "Input dimension d (default: network input_dim)");
  stats_cmd->add_option("--n", n, "Mesh simplex count n (default: half the output layer fan-in)");
  stats_cmd->add_flag("--sweep", sweep, "Compile random meshes of PL(d, n) and report the maxima");
  stats_cmd->add_option("--seeds", seeds, "Number of meshes in sweep mode");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_io;
  }

  try {
    if (*validate_cmd) {
      PLMesh mesh = io::mesh_from_json(io::read_json_file(mesh_file));
      auto report = mesh.validate();
      print_report(std::cout, report);
      return report.valid() ? exit_ok : exit_domain;
    }

    if (*decompose_cmd) {
      PLMesh mesh = load_valid_mesh(mesh_file);
      std::optional<Point> cone;
      if (!cone_point_text.empty()) cone = parse_point(cone_point_text);
      SignedDecomposition dec = decompose(mesh, cone, seed);
      if (do_prune) dec = prune(dec);
      emit(io::decomposition_to_json(dec), out_file);
      std::cerr << dec.terms.size() << " terms, cone point " << dec.cone_point.str() << '\n';
      return exit_ok;
    }

    if (*compile_cmd) {
      PLMesh mesh = load_valid_mesh(mesh_file);
      ReluNetwork net = compile_mesh(mesh, seed);
      emit(io::network_to_json(net), out_file);
      std::cerr << "depth " << net.depth() << ", width " << net.width() << ", size " << net.size() << '\n';
      return exit_ok;
    }

    if (*eval_cmd) {
      const json j = io::read_json_file(artifact_file);
      const Point x = parse_point(x_text);
      switch (io::detect_artifact(j)) {
      case io::ArtifactKind::mesh: std::cout << format_scalar(io::mesh_from_json(j).eval(x)) << '\n'; break;
      case io::ArtifactKind::decomposition:
        std::cout << format_scalar(io::decomposition_from_json(j).eval(x)) << '\n';
        break;
      case io::ArtifactKind::network: {
        const auto xs = to_doubles(x);
        std::cout << std::fixed << std::setprecision(10) << io::network_from_json(j).forward(xs) << '\n';
        break;
      }
      }
      return exit_ok;
    }

    if (*verify_cmd) {
      PLMesh mesh = load_valid_mesh(mesh_file);
      VerifyOptions options{samples, tol, seed, jobs, flip};
      const VerifyReport r = verify_mesh(mesh, options);
      std::cout << "samples          " << r.samples << '\n'
                << "exact_mismatches " << r.exact_mismatches << '\n'
                << "max_abs_error    " << std::scientific << std::setprecision(3) << r.max_abs_error << '\n'
                << "tolerance        " << r.tolerance << '\n'
                << std::defaultfloat << "term_count       " << r.term_count << '\n'
                << "depth            " << r.depth << '\n'
                << "width            " << r.width << '\n'
                << "size             " << r.size << '\n'
                << "result           " << (r.pass ? "PASS" : "FAIL") << '\n';
      return r.pass ? exit_ok : exit_domain;
    }

    if (*gen_cmd) {
      emit(io::mesh_to_json(generate_random(dim, n, seed)), out_file);
      return exit_ok;
    }

    if (*stats_cmd) {
      if (sweep) {
        if (dim == 0 || n == 0) throw std::invalid_argument("--sweep needs --dim and --n");
        NetworkStats worst;
        for (std::size_t s = 0; s < seeds; ++s) {
          PLMesh mesh = generate_random(dim, n, s);
          ReluNetwork net = compile_mesh(mesh, s, {.fixed_architecture = true, .term_slots = 2 * n});
          NetworkStats st = stats(net, dim, n);
          worst.depth = std::max(worst.depth, st.depth);
          worst.width = std::max(worst.width, st.width);
          worst.size = std::max(worst.size, st.size);
          worst.c0 = std::max(worst.c0, st.c0);
          worst.c1 = std::max(worst.c1, st.c1);
          worst.c2 = std::max(worst.c2, st.c2);
        }
        std::cout << "sweep over " << seeds << " meshes (maxima)\n";
        print_stats(std::cout, worst, dim, n);
        return exit_ok;
      }
      if (network_file.empty()) throw std::invalid_argument("stats needs a network file or --sweep");
      ReluNetwork net = io::network_from_json(io::read_json_file(network_file));
      const std::size_t d = dim ? dim : net.input_dim();
      std::size_t count = n;
      if (count == 0 && !net.layers().empty()) count = net.layers().back().inputs / 2;
      print_stats(std::cout, stats(net, d, count), d, count);
      return exit_ok;
    }
  } catch (const io::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_io;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return exit_io;
  } catch (const json::exception& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return exit_io;
  } catch (const DomainFailure& e) {
    std::cerr << e.what();
    return exit_domain;
  } catch (const GenericityError& e) {
    std::cerr << "genericity error: " << e.what() << '\n';
    return exit_domain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_domain;
  }
  return exit_ok;
}

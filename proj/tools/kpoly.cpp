// kpoly: command-line front end.
//
// Exit codes: 0 success, 2 input or parse error, 3 an asserted invariant
// failed, 4 a size limit was exceeded.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kpoly/approximation.hpp"
#include "kpoly/curvature_estimators.hpp"
#include "kpoly/errors.hpp"
#include "kpoly/gh_metric.hpp"
#include "kpoly/io.hpp"
#include "kpoly/kpolyhedron.hpp"
#include "kpoly/metric_graph.hpp"
#include "kpoly/smoothing.hpp"

namespace kpoly::cli {
namespace {

constexpr int kExitInput = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitSize = 4;

// Raised when an operation ran but a property it asserts does not hold.
struct InvariantViolation {
  std::string message;
};

int exit_code_for(Errc c) {
  switch (c) {
    case Errc::kSizeLimitExceeded:
      return kExitSize;
    case Errc::kNoRoot:
    case Errc::kPhaseExceedsTau:
    case Errc::kInsufficientSamples:
      return kExitInvariant;
    default:
      return kExitInput;
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, sep)) out.push_back(part);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

// v:<vertex> | e:<triangle>:<edge>:<param> | f:<triangle>:<w0>:<w1>:<w2>
SurfacePoint parse_anchor(const std::string& text) {
  const std::vector<std::string> f = split(text, ':');
  if (f.size() == 2 && f[0] == "v") return VertexAnchor{parse_int(f[1])};
  if (f.size() == 4 && f[0] == "e") return EdgeAnchor{parse_int(f[1]), parse_int(f[2]), parse_double(f[3])};
  if (f.size() == 5 && f[0] == "f") {
    return FaceAnchor{parse_int(f[1]), {parse_double(f[2]), parse_double(f[3]), parse_double(f[4])}};
  }
  throw Error(Errc::kParse, "bad point '" + text + "': expected v:<id>, e:<t>:<e>:<param> or f:<t>:<w0>:<w1>:<w2>");
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  for (const std::string& s : split(text, ',')) out.push_back(parse_double(s));
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const std::string& s : split(text, ',')) out.push_back(parse_int(s));
  return out;
}

std::string fd(double x) { return format_double(x); }

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw Error(Errc::kParse, "cannot open " + path + " for writing");
    }
  }
  std::ostream& out() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

int run_check(const std::string& path, std::ostream& out) {
  const KPolyhedron p = load_polyhedron(path);
  const AlexandrovReport r = check_alexandrov(p);
  const auto cones = conical_points(p, kDefaultTolerances.cone_omega);
  // Distinct cone curvatures, equal up to 1e-12.
  std::vector<double> values;
  for (const auto& [v, w] : cones) {
    if (values.empty() || std::fabs(values.back() - w) > 1e-12) values.push_back(w);
  }
  out << "alexandrov: " << (r.pass ? "pass" : "fail") << ", vertices: " << p.num_vertices();
  if (!cones.empty()) {
    out << ", " << cones.size() << " conical (ω=";
    for (std::size_t i = 0; i < values.size(); ++i) out << (i ? ", " : "") << fd(values[i]);
    out << ")";
  }
  out << "\n";
  if (!r.pass) {
    std::string ids;
    for (int v : r.offending) ids += (ids.empty() ? "" : " ") + std::to_string(v);
    throw InvariantViolation{"total angle exceeds 2π at vertices " + ids};
  }
  return 0;
}

int run_gauss_bonnet(const std::string& path, std::ostream& out) {
  const KPolyhedron p = load_polyhedron(path);
  const double r = gauss_bonnet_residual(p);
  out << "residual,euler_characteristic,total_area\n"
      << fd(r) << "," << p.euler_characteristic() << "," << fd(p.total_area()) << "\n";
  if (!(std::fabs(r) <= 1e-8)) throw InvariantViolation{"gauss-bonnet residual " + fd(r) + " exceeds 1e-8"};
  return 0;
}

int run_distance(const std::string& path, const std::string& from, const std::string& to,
                 const std::vector<int>& ms, std::ostream& out) {
  const KPolyhedron p = load_polyhedron(path);
  const SurfacePoint x = parse_anchor(from), y = parse_anchor(to);
  out << "m,distance\n";
  for (int m : ms) out << m << "," << fd(distance(p, x, y, m)) << "\n";
  return 0;
}

void write_certificate(std::ostream& out, const Correspondence& c) {
  out << "certificate:";
  for (int i = 0; i < c.rows(); ++i) {
    for (int j = 0; j < c.cols(); ++j) {
      if (c(i, j)) out << " (" << i << "," << j << ")";
    }
  }
  out << "\n";
}

int run_gh(const std::string& xp, const std::string& yp, int size_limit, bool require_exact,
           int restarts, std::uint64_t seed, std::ostream& out) {
  const FiniteMetricSpace x = load_metric_space(xp), y = load_metric_space(yp);
  const double lo = gh_lower_bound(x, y);
  const bool small = std::max(x.size(), y.size()) <= size_limit;
  if (!small && require_exact) {
    throw Error(Errc::kSizeLimitExceeded, "exact GH needs max size <= " + std::to_string(size_limit));
  }
  const GhResult r = small ? gh_exact_certified(x, y, size_limit) : gh_upper_bound(x, y, restarts, seed);
  out << "lower=" << fd(lo) << ", " << (small ? "exact=" : "upper=") << fd(r.value) << "\n";
  write_certificate(out, r.certificate);
  if (!(lo <= r.value + 1e-12)) throw InvariantViolation{"lower bound exceeds the GH value"};
  return 0;
}

int run_approximate(const std::string& target, const std::vector<int>& levels, int k, int m,
                    std::ostream& out) {
  std::unique_ptr<TargetSurface> t;
  if (target == "sphere") {
    t = std::make_unique<SphereTarget>();
  } else if (target == "torus") {
    t = std::make_unique<FlatTorusTarget>();
  } else {
    throw Error(Errc::kParse, "unknown target '" + target + "': expected sphere or torus");
  }
  out << "level,delta,gh_upper,max_omega\n";
  for (const ConvergenceRow& r : convergence_experiment(*t, levels, k, m)) {
    out << r.level << "," << fd(r.delta) << "," << fd(r.gh_upper) << "," << fd(r.max_omega) << "\n";
  }
  return 0;
}

int run_smooth(double omega, double epsilon, double tau, int samples, std::ostream& out) {
  if (samples < 2) throw Error(Errc::kParameterOutOfRange, "--samples must be at least 2");
  const LambdaSolution s = find_lambda(omega, epsilon, tau);
  out << "lambda,A,B,amp,phi\n"
      << fd(s.lambda) << "," << fd(s.ab.a) << "," << fd(s.ab.b) << "," << fd(s.amp_phase.amp) << ","
      << fd(s.amp_phase.phi) << "\n\n";
  // f > 0 on (0, pi - |phi|); knots are read from the right.
  const double end = std::numbers::pi - std::fabs(s.amp_phase.phi);
  out << "t,f,fprime,curvature\n";
  for (int i = 1; i < samples; ++i) {
    const double t = end * i / samples;
    const auto side = KnotSide::kRight;
    out << fd(t) << "," << fd(s.profile.f(t, side)) << "," << fd(s.profile.fprime(t, side)) << ","
        << fd(curvature_of_warp(s.profile, t, side)) << "\n";
  }
  return 0;
}

int run_curvature(const std::string& path, const std::string& point, const std::string& deltas,
                  double angle_floor, int samples, std::uint64_t seed, std::ostream& out) {
  const KPolyhedron p = load_polyhedron(path);
  SamplingOptions o;
  o.angle_floor = angle_floor;
  o.samples = samples;
  o.seed = seed;
  out << "delta,inf_ratio,sup_ratio,n_accepted\n";
  for (const CurvatureRow& r : estimate_curvature_bounds(p, parse_anchor(point), parse_list(deltas), o)) {
    out << fd(r.delta) << "," << fd(r.inf_ratio) << "," << fd(r.sup_ratio) << "," << r.n_accepted << "\n";
  }
  return 0;
}

int main_impl(int argc, char** argv) {
  CLI::App app{"kpoly: kappa-polyhedra, Gromov-Hausdorff bounds, smoothing and curvature estimators"};
  app.require_subcommand(1);
  std::string output;
  app.add_option("-o,--output", output, "Write results to this file instead of standard output");

  std::string poly_path, x_path, y_path;

  CLI::App* check = app.add_subcommand("check", "Validate a .kpoly file and report Alexandrov status and cone points");
  check->add_option("file", poly_path, ".kpoly input")->required();

  CLI::App* gb = app.add_subcommand("gauss-bonnet", "Print the discrete Gauss-Bonnet residual");
  gb->add_option("file", poly_path, ".kpoly input")->required();

  std::string from, to, ms_text = "8";
  CLI::App* dist = app.add_subcommand("distance", "Graph distance between two surface points");
  dist->add_option("file", poly_path, ".kpoly input")->required();
  dist->add_option("--from", from, "Point: v:<id>, e:<t>:<e>:<param> or f:<t>:<w0>:<w1>:<w2>")->required();
  dist->add_option("--to", to, "Point, same syntax as --from")->required();
  dist->add_option("--m", ms_text, "Comma-separated Steiner points per edge")->capture_default_str();

  int size_limit = kDefaultGhSizeLimit, restarts = 8;
  bool require_exact = false;
  std::uint64_t seed = 0;
  CLI::App* gh = app.add_subcommand("gh", "Gromov-Hausdorff bounds between two .fms files");
  gh->add_option("x", x_path, "First .fms input")->required();
  gh->add_option("y", y_path, "Second .fms input")->required();
  gh->add_option("--size-limit", size_limit, "Largest size solved exactly")->capture_default_str();
  gh->add_flag("--exact", require_exact, "Fail with exit 4 instead of falling back to the upper bound");
  gh->add_option("--restarts", restarts, "Local-search restarts for the upper bound")->capture_default_str();
  gh->add_option("--seed", seed, "Seed of the upper-bound search")->capture_default_str();

  std::string target = "sphere", levels_text = "0,1,2,3";
  int k = 42, m = 8;
  CLI::App* approx = app.add_subcommand("approximate", "Convergence table of polyhedral approximations");
  approx->add_option("--target", target, "sphere or torus")->capture_default_str();
  approx->add_option("--levels", levels_text, "Comma-separated subdivision levels")->capture_default_str();
  approx->add_option("--k", k, "Matched points")->capture_default_str();
  approx->add_option("--m", m, "Steiner points per edge")->capture_default_str();

  double omega = 0.0, epsilon = 0.0, tau = 0.1;
  int profile_samples = 200;
  CLI::App* smooth = app.add_subcommand("smooth", "Warping profile smoothing a cone point");
  smooth->add_option("--omega", omega, "Cone curvature")->required();
  smooth->add_option("--epsilon", epsilon, "Band start")->required();
  smooth->add_option("--tau", tau, "Largest admissible |phase|")->capture_default_str();
  smooth->add_option("--samples", profile_samples, "Profile rows")->capture_default_str();

  std::string point, deltas_text = "0.2,0.1,0.05";
  double angle_floor = 0.2;
  int samples = 64;
  CLI::App* curv = app.add_subcommand("curvature", "Sampled lower/upper curvature ratios at a point");
  curv->add_option("file", poly_path, ".kpoly input")->required();
  curv->add_option("--point", point, "Point, same syntax as distance --from")->required();
  curv->add_option("--deltas", deltas_text, "Strictly decreasing comma-separated scales")->capture_default_str();
  curv->add_option("--angle-floor", angle_floor, "Smallest admissible triangle angle")->capture_default_str();
  curv->add_option("--samples", samples, "Triangles per scale")->capture_default_str();
  curv->add_option("--seed", seed, "Sampling seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    Output sink(output);
    std::ostream& out = sink.out();
    out.precision(17);
    if (*check) return run_check(poly_path, out);
    if (*gb) return run_gauss_bonnet(poly_path, out);
    if (*dist) return run_distance(poly_path, from, to, parse_int_list(ms_text), out);
    if (*gh) return run_gh(x_path, y_path, size_limit, require_exact, restarts, seed, out);
    if (*approx) return run_approximate(target, parse_int_list(levels_text), k, m, out);
    if (*smooth) return run_smooth(omega, epsilon, tau, profile_samples, out);
    if (*curv) return run_curvature(poly_path, point, deltas_text, angle_floor, samples, seed, out);
  } catch (const InvariantViolation& v) {
    std::cerr << "kpoly: invariant violated: " << v.message << "\n";
    return kExitInvariant;
  } catch (const Error& e) {
    std::cerr << "kpoly: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return kExitInput;
}

}  // namespace
}  // namespace kpoly::cli

int main(int argc, char** argv) { return kpoly::cli::main_impl(argc, argv); }

#include "cli.hpp"

#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "torsion/classify.hpp"
#include "torsion/curves.hpp"
#include "torsion/subspace.hpp"
#include "torsion/surface.hpp"

namespace torsion::cli {

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string family = "U";
  int size = 2;
  int n = 2;
  std::optional<int> m;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::size_t samples = 0;  // 0: command default
  int jobs = 0;
  Tolerances tol;
  std::string format = "json";
  std::string output;

  // demo-surface
  double a_min = 0.0;
  double a_max = 2.0;
  std::string points_csv;
  std::optional<double> force_a;
  std::optional<double> force_phi;

  GroupSpec spec() const { return GroupSpec(parse_family(family), size); }
  Execution exec() const { return Execution::parallel(jobs); }

  nlohmann::json echo() const {
    nlohmann::json j{{"command", command},
                     {"group", family},
                     {"size", size},
                     {"n", n},
                     {"trials", trials},
                     {"seed", seed},
                     {"samples", samples},
                     {"tolerances", {{"membership", tol.membership}, {"rank", tol.rank}, {"subspace", tol.subspace}}},
                     {"format", format}};
    if (m) j["m"] = *m;
    if (command == "demo-surface") {
      j["a_min"] = a_min;
      j["a_max"] = a_max;
      if (force_a) j["force_a"] = *force_a;
      if (force_phi) j["force_phi"] = *force_phi;
    }
    return j;
  }
};

void validate(const RunConfig& c) {
  if (c.trials < 1) throw ConfigError("--trials must be >= 1");
  if (c.n < 1) throw ConfigError("--n must be >= 1");
  if (c.m && *c.m < 1) throw ConfigError("--m must be >= 1");
  if (!(c.tol.membership > 0) || !(c.tol.rank > 0) || !(c.tol.subspace > 0))
    throw ConfigError("tolerances must be positive");
  if (c.jobs < 0) throw ConfigError("--jobs must be >= 0");
}

std::size_t samples_or(const RunConfig& c, std::size_t fallback) { return c.samples ? c.samples : fallback; }

std::string report_text(const VerificationReport& r) {
  std::ostringstream s;
  s << r.check << ": " << (r.passed() ? "PASS" : r.status == Status::fail ? "FAIL" : "REJECTED")
    << "  worst_residual=" << std::setprecision(6) << r.worst_residual << "  trials=" << r.trials.size() << '\n';
  for (const auto& [k, v] : r.details.items()) s << "  " << k << ": " << v.dump() << '\n';
  return s.str();
}

int exit_for(const VerificationReport& r, std::ostream& err) {
  if (r.passed()) return ok;
  if (const TrialRecord* t = r.first_failure()) {
    err << r.check << ": trial with seed " << t->seed << " did not pass";
    if (!t->note.empty()) err << " (" << t->note << ")";
    err << "; replay with --seed " << t->seed << " --trials 1\n";
  } else {
    err << r.check << ": aggregate check failed\n";
  }
  return verification_failed;
}

void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (c.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.output);
  if (!f) throw ConfigError("cannot open output file " + c.output);
  f << text;
}

int emit_report(const RunConfig& c, VerificationReport r, std::ostream& out, std::ostream& err) {
  r.config = c.echo();
  if (const TrialRecord* t = r.first_failure()) r.details["failing_seed"] = t->seed;
  if (c.format == "json") {
    emit(c, nlohmann::json(r).dump(2) + "\n", out);
  } else if (c.format == "text") {
    emit(c, report_text(r), out);
  } else {
    throw ConfigError("--format csv is only available for catalog, path and point clouds");
  }
  return exit_for(r, err);
}

template <class Trial>
VerificationReport trial_sweep(const std::string& name, const RunConfig& c, Trial&& trial) {
  return sweep(name, c.trials, c.seed, c.exec(), std::forward<Trial>(trial));
}

int cmd_catalog(const RunConfig& c, std::ostream& out) {
  const GroupSpec spec = c.spec();
  const auto catalog = catalog_components(spec, c.n, c.tol, c.exec());
  if (c.format == "csv") {
    emit(c, catalog_csv(catalog), out);
  } else if (c.format == "json") {
    nlohmann::json j = catalog_json(catalog);
    j["config"] = c.echo();
    emit(c, j.dump(2) + "\n", out);
  } else {
    std::ostringstream s;
    s << spec.name() << ", n = " << c.n << ": " << catalog.size() << " component(s)\n";
    for (std::size_t i = 0; i < catalog.size(); ++i)
      s << "  [" << i << "] " << catalog[i].canonical.str() << "  dim " << catalog[i].dimension << "  order "
        << catalog[i].exact_order << '\n';
    emit(c, s.str(), out);
  }
  return ok;
}

VerificationReport verify_report(const std::string& which, const RunConfig& c) {
  const GroupSpec spec = c.spec();
  const int n = c.n;
  const Tolerances tol = c.tol;

  if (which == "lemma31") {
    return trial_sweep("tangent_space", c, [&](std::size_t, std::uint64_t s) {
      TrialRecord t = tangent_space_check(random_element(spec, s), random_algebra_element(spec, s)).trials.at(0);
      t.seed = s;
      return t;
    });
  }
  if (which == "lemma32") {
    return trial_sweep("curve_kernel", c, [&](std::size_t, std::uint64_t s) {
      const TorsionSample g = random_torsion_element(spec, n, s);
      const AlgebraElement x = random_algebra_element(spec, s);
      TrialRecord t = curve_kernel_check(g.element, n, x, tol).trials.at(0);
      const TrialRecord p = product_identity_check(g.element, n, x, 0.5, tol).trials.at(0);
      t.seed = s;
      t.metrics["product_residual"] = p.residual;
      if (t.passed() && !p.passed()) {
        t.status = p.status;
        t.note = "product identity: " + p.note;
      }
      return t;
    });
  }
  if (which == "lemma33" || which == "zero-intersection") {
    const bool identity_check = which == "lemma33";
    return trial_sweep(identity_check ? "kernel_image_identity" : "zero_intersection", c,
                       [&](std::size_t, std::uint64_t s) {
                         const TorsionSample g = random_torsion_element(spec, n, s);
                         TrialRecord t = (identity_check ? verify_kernel_image_identity(g.element, n, tol)
                                                         : verify_zero_intersection(g.element, n, tol))
                                             .trials.at(0);
                         t.seed = s;
                         return t;
                       });
  }
  if (which == "gcd") {
    if (!c.m) throw ConfigError("verify gcd needs --m");
    return gcd_intersection_check(spec, n, *c.m);
  }
  if (which == "density") {
    if (!spec.is_compact()) throw UnsupportedGroup("density needs a compact group");
    return trial_sweep("density", c, [&](std::size_t, std::uint64_t s) {
      const TorsionApproximant a = nearest_torsion_approximant(random_element(spec, s), n);
      TrialRecord t;
      t.seed = s;
      t.inputs_digest = digest(spec.name() + ":" + std::to_string(n) + ":" + std::to_string(s));
      const double pres = power_residual(a.element, n);
      t.status = a.distance <= a.bound && pres <= n * tol.membership ? Status::pass : Status::fail;
      t.residual = a.distance;
      t.metrics = {{"distance", a.distance}, {"bound", a.bound}, {"power_residual", pres}};
      return t;
    });
  }
  throw ConfigError("unknown verify subcommand " + which);
}

VerificationReport demo_surface(const RunConfig& c, std::vector<SurfacePoint>& points) {
  const auto start = std::chrono::steady_clock::now();
  points = sample_surface(c.a_min, c.a_max, samples_or(c, 10000), c.seed);
  if (c.force_a || c.force_phi) {
    if (!c.force_a || !c.force_phi) throw ConfigError("--force-a and --force-phi go together");
    points.front() = surface_point(*c.force_a, *c.force_phi, 1);
  }

  std::vector<SurfacePoint> axis;
  for (int i = 0; i < 100; ++i) axis.push_back({-2.0 + 4.0 * i / 99, 0.0, 0.0, 0.0});

  const VerificationReport cone = tangent_cone_bound_check(points, c.exec());
  const VerificationReport locus = singular_locus_scan(axis, points, 1e-12, 0.5);

  double worst_membership = 0.0;
  for (const auto& p : points) worst_membership = std::max(worst_membership, p.residual / std::max(1.0, std::pow(p.x, 8)));
  TrialRecord on_surface;
  on_surface.inputs_digest = digest(std::to_string(points.size()) + ":" + std::to_string(c.seed));
  on_surface.seed = c.seed;
  on_surface.status = worst_membership <= 1e-12 ? Status::pass : Status::fail;
  on_surface.residual = worst_membership;
  on_surface.note = "surface_residual";

  VerificationReport r;
  r.check = "demo_surface";
  r.trials = {on_surface, cone.trials.at(0), locus.trials.at(0)};
  r.trials[1].note = "tangent_cone_bound";
  r.trials[2].note = "singular_locus";
  r.trials[1].seed = r.trials[2].seed = c.seed;
  r.finalize();
  r.details = {{"points", points.size()},
               {"cone_violations", cone.trials[0].metrics.at("violations")},
               {"max_axis_gradient", locus.trials[0].metrics.at("max_axis_gradient")},
               {"min_circle_gradient", locus.trials[0].metrics.at("min_circle_gradient")}};
  r.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

int cmd_path(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const GroupSpec spec = c.spec();
  const TorsionSample g = random_torsion_element(spec, c.n, c.seed);
  const GroupElement g2 = conjugate(random_element(spec, c.seed + 1), g.element);
  const ComponentPath path = connect_within_component(g.element, g2, c.n, static_cast<int>(samples_or(c, 20)));
  if (c.format == "csv") {
    emit(c, path_csv(path), out);
    return exit_for(path_check(path, c.n, c.tol), err);
  }
  return emit_report(c, path_check(path, c.n, c.tol), out, err);
}

std::uint64_t env_seed() {
  const char* v = std::getenv("TORSION_ORBITS_SEED");
  if (!v || !*v) return 0;
  char* end = nullptr;
  errno = 0;
  const unsigned long long s = std::strtoull(v, &end, 10);
  if (errno || *end || v[0] == '-') throw ConfigError("TORSION_ORBITS_SEED is not a non-negative integer");
  return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Connected components of the finite-order locus E_n(G) in U(m), SU(m), SO(m) and SL(2,R)",
               "torsion-orbits"};
  app.require_subcommand(1);

  app.add_option("--group", c.family, "group family: U, SU, SO or SL2R");
  app.add_option("--size", c.size, "matrix size m");
  app.add_option("--n", c.n, "order bound n (or the denominator N for density)");
  app.add_option("--m", c.m, "second order for the gcd check");
  app.add_option("--trials", c.trials, "number of random draws");
  auto* seed_opt = app.add_option("--seed", c.seed, "base seed; trial i uses seed + i");
  app.add_option("--samples", c.samples, "samples for census, demo-surface and path");
  app.add_option("--jobs", c.jobs, "worker threads (0: all cores)");
  app.add_option("--tol-membership", c.tol.membership, "membership tolerance");
  app.add_option("--tol-rank", c.tol.rank, "relative rank threshold");
  app.add_option("--tol-subspace", c.tol.subspace, "principal-angle tolerance (radians)");
  app.add_option("--format", c.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--output", c.output, "write the report here instead of stdout");

  auto* catalog = app.add_subcommand("catalog", "list the components of E_n(G)")->fallthrough();

  auto* verify = app.add_subcommand("verify", "run a randomized verifier")->fallthrough()->require_subcommand(1);
  std::string verify_which;
  for (const char* name : {"lemma31", "lemma32", "lemma33", "zero-intersection", "gcd", "density"}) {
    verify->add_subcommand(name)->fallthrough()->callback([&verify_which, name] { verify_which = name; });
  }

  auto* census = app.add_subcommand("census", "cluster sampled solutions of g^n = e")->fallthrough()->require_subcommand(1);
  auto* census_sl2 = census->add_subcommand("sl2", "SL(2,R) classes via trace and rotation sense")->fallthrough();
  auto* census_cluster = census->add_subcommand("cluster", "compact groups, clustered by invariant")->fallthrough();

  auto* demo = app.add_subcommand("demo-surface", "sample the surface (y^2+z^2)^2 = 4 x^4 z^2")->fallthrough();
  demo->add_option("--a-min", c.a_min, "smallest slice coordinate");
  demo->add_option("--a-max", c.a_max, "largest slice coordinate");
  demo->add_option("--points-csv", c.points_csv, "write the point cloud here");
  demo->add_option("--force-a", c.force_a, "replace the first sample's slice");
  demo->add_option("--force-phi", c.force_phi, "replace the first sample's angle");

  auto* path = app.add_subcommand("path", "connect two conjugate torsion elements")->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : config_error;
  }

  try {
    if (!seed_opt->count()) c.seed = env_seed();
    validate(c);

    if (catalog->parsed()) {
      c.command = "catalog";
      if (c.format == "json" && !app.get_option("--format")->count()) c.format = "csv";
      return cmd_catalog(c, out);
    }
    if (verify->parsed()) {
      c.command = "verify " + verify_which;
      return emit_report(c, verify_report(verify_which, c), out, err);
    }
    if (census_sl2->parsed()) {
      c.command = "census sl2";
      return emit_report(c, sl2_component_census(c.n, samples_or(c, 1000), c.seed, c.exec()), out, err);
    }
    if (census_cluster->parsed()) {
      c.command = "census cluster";
      return emit_report(c, cluster_census(c.spec(), c.n, samples_or(c, 1000), c.seed, c.exec()), out, err);
    }
    if (demo->parsed()) {
      c.command = "demo-surface";
      std::vector<SurfacePoint> points;
      VerificationReport r = demo_surface(c, points);
      if (!c.points_csv.empty()) {
        std::ofstream f(c.points_csv);
        if (!f) throw ConfigError("cannot open " + c.points_csv);
        f << point_cloud_csv(points);
      }
      return emit_report(c, std::move(r), out, err);
    }
    if (path->parsed()) {
      c.command = "path";
      return cmd_path(c, out, err);
    }
  } catch (const UnsupportedGroup& e) {
    err << "error: " << e.what() << '\n';
    return unsupported_group;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return config_error;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return config_error;
  } catch (const DifferentComponents& e) {
    err << "error: " << e.what() << '\n';
    return verification_failed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return verification_failed;
  }
  return config_error;
}

}  // namespace torsion::cli

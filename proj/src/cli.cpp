#include "parabasin/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#ifdef PARABASIN_HAVE_OPENMP
#include <omp.h>
#endif

#include "parabasin/io.hpp"

namespace parabasin::cli {

namespace {

using io::Json;

// Raised during the validation phase; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void configure_threads() {
#ifdef PARABASIN_HAVE_OPENMP
  if (const char* env = std::getenv("PARABASIN_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) omp_set_num_threads(n);
  }
#endif
}

std::ofstream open_output(const std::string& path) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream file(p, std::ios::binary);
  if (!file) throw Error(ErrorKind::IoFailure, "cannot open " + path);
  return file;
}

void write_text(const std::string& path, const std::string& text) {
  auto file = open_output(path);
  file << text;
  if (!file) throw Error(ErrorKind::IoFailure, "cannot write " + path);
}

// Precondition failures become usage errors; computational ones pass through.
template <class F>
auto validate(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    switch (e.kind()) {
      case ErrorKind::InvalidArgument:
      case ErrorKind::NotParabolic:
      case ErrorKind::Linear:
      case ErrorKind::DegenerateAngle:
        throw UsageError(std::string(to_string(e.kind())) + ": " + e.what());
      default:
        throw;
    }
  }
}

ParabolicMap load_poly(const std::string& text) {
  return validate([&] { return analyze_parabolic(io::parse_coefficients(text)); });
}

Complex load_complex(const std::string& text) {
  return validate([&] { return io::parse_complex(text); });
}

void require(bool condition, const std::string& message) {
  if (!condition) throw UsageError(message);
}

ModelDomain load_domain(const std::string& name, double low, double high) {
  if (name == "halfplane") return HalfPlane{};
  if (name == "slit") return SlitPlane{};
  require(high > low, "--high must exceed --low");
  if (name == "sector") {
    require(high - low <= 2.0 * std::numbers::pi, "sector width must be <= 2 pi");
    return Sector{low, high};
  }
  if (name == "double") {
    require(high - low > 2.0 * std::numbers::pi, "double sector width must be > 2 pi");
    return DoubleSector{low, high};
  }
  throw UsageError("unknown domain '" + name + "'");
}

DomainPoint load_point(const std::string& text, const std::optional<double>& theta) {
  const Complex z = load_complex(text);
  if (theta) return LiftedPoint{std::abs(z), *theta};
  return z;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parabolic basin laboratory: orbits, petals, Kobayashi bounds, certificates"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::string poly;
  std::function<int()> action;

  auto add_poly = [&](CLI::App* sub) {
    sub->add_option("--poly", poly, "Ascending coefficients, e.g. 0,1,1 for z+z^2")
        ->required();
  };

  // vectors
  auto* vectors = app.add_subcommand("vectors", "Parabolic data and attraction vectors (JSON)");
  add_poly(vectors);
  vectors->callback([&] {
    action = [&] {
      const ParabolicMap f = load_poly(poly);
      out << io::to_json(f).dump() << '\n';
      return 0;
    };
  });

  // orbit
  std::string z0_text;
  std::size_t n_steps = 100;
  bool classify = false;
  double tol = 0.05;
  std::string out_path;
  auto* orbit = app.add_subcommand("orbit", "Forward orbit as CSV, optionally classified");
  add_poly(orbit);
  orbit->add_option("--z0", z0_text, "Starting point")->required();
  orbit->add_option("--n", n_steps, "Iterations")->capture_default_str();
  orbit->add_flag("--classify", classify, "Classify the approach direction");
  orbit->add_option("--tol", tol, "Direction tolerance")->capture_default_str();
  orbit->add_option("--out", out_path, "CSV path (default: standard output)");
  orbit->callback([&] {
    action = [&] {
      const ParabolicMap f = load_poly(poly);
      const Complex z0 = load_complex(z0_text);
      if (classify) require(n_steps >= 100, "--classify needs --n >= 100");
      const OrbitRecord record = classify ? classify_direction(f, z0, n_steps, tol)
                                          : forward_orbit(f, z0, n_steps);
      std::ostringstream csv;
      csv << "k,re,im\n";
      csv.precision(17);
      for (std::size_t k = 0; k < record.points.size(); ++k) {
        csv << k << ',' << record.points[k].real() << ',' << record.points[k].imag() << '\n';
      }
      if (out_path.empty()) {
        out << csv.str();
      } else {
        write_text(out_path, csv.str());
      }
      Json status = {{"status", record.status == OrbitStatus::ConvergedToDirection ? "ConvergedToDirection"
                                : record.status == OrbitStatus::Escaped           ? "Escaped"
                                                                                  : "Undecided"},
                     {"direction", record.direction},
                     {"direction_error", io::number(record.direction_error)},
                     {"steps", record.points.size() - 1}};
      (out_path.empty() ? err : out) << status.dump() << '\n';
      return 0;
    };
  });

  // preimages
  std::string w_text;
  double root_tol = 1e-10;
  auto* pre = app.add_subcommand("preimages", "All solutions of f(z) = w (JSON)");
  add_poly(pre);
  pre->add_option("--w", w_text, "Target value")->required();
  pre->add_option("--tol", root_tol, "Residual tolerance")->capture_default_str();
  pre->callback([&] {
    action = [&] {
      const ParabolicMap f = load_poly(poly);
      const Complex w = load_complex(w_text);
      Json roots = Json::array();
      for (const Complex& z : preimages(f, w, root_tol)) roots.push_back(io::complex_json(z));
      out << Json{{"w", io::complex_json(w)}, {"preimages", roots}}.dump() << '\n';
      return 0;
    };
  });

  // enumerate-q
  std::string q_text;
  int k_max = 20;
  int l_max = 10;
  int direction = 0;
  bool no_filter = false;
  auto* enumerate = app.add_subcommand("enumerate-q", "Truncated forward/backward orbit set (CSV)");
  add_poly(enumerate);
  enumerate->add_option("--q", q_text, "Reference point")->required();
  enumerate->add_option("--kmax", k_max, "Forward depth")->capture_default_str();
  enumerate->add_option("--lmax", l_max, "Backward depth")->capture_default_str();
  enumerate->add_option("--direction", direction, "Attraction direction index")->capture_default_str();
  enumerate->add_option("--tol", root_tol, "Root residual tolerance")->capture_default_str();
  enumerate->add_flag("--no-filter", no_filter, "Keep points of every direction");
  enumerate->add_option("--out", out_path, "CSV path")->capture_default_str();
  enumerate->callback([&] {
    action = [&] {
      const ParabolicMap f = load_poly(poly);
      const Complex q = load_complex(q_text);
      require(k_max >= 0 && l_max >= 0, "--kmax and --lmax must be nonnegative");
      require(direction >= 0 && direction < f.m(), "--direction out of range");
      EnumerateOptions options;
      options.membership_filter = !no_filter;
      const QEnumeration e = validate([&] {
        return enumerate_q(f, q, k_max, l_max, direction, root_tol, options);
      });
      const std::string path = out_path.empty() ? "out/q.csv" : out_path;
      auto file = open_output(path);
      io::write_csv(file, e);
      out << Json{{"points", e.points.size()},
                  {"generated", e.generated},
                  {"excluded_undecided", e.excluded_undecided},
                  {"excluded_other_direction", e.excluded_other_direction},
                  {"csv", path}}
                 .dump()
          << '\n';
      return 0;
    };
  });

  // pacman
  double theta0 = 0.1;
  std::size_t inv_steps = 0;
  std::size_t samples = 10000;
  auto* pacman = app.add_subcommand("pacman", "Two-stage Pac-Man construction (JSON)");
  add_poly(pacman);
  pacman->add_option("--theta0", theta0, "Gap half-angle in (0, pi/6)")->capture_default_str();
  pacman->add_option("--invariance-steps", inv_steps, "Also check D_R0' -> D_R0 for this many steps");
  pacman->add_option("--samples", samples, "Invariance sample points")->capture_default_str();
  pacman->callback([&] {
    action = [&] {
      const ParabolicMap f = load_poly(poly);
      require(theta0 > 0.0 && theta0 < std::numbers::pi / 6.0, "--theta0 must lie in (0, pi/6)");
      const PacManConstruction c = construct_pacman(f, theta0);
      Json result = io::to_json(c);
      if (inv_steps > 0) {
        Json checks = Json::array();
        for (int j = 0; j < f.m(); ++j) {
          checks.push_back(io::to_json(check_petal_invariance(f, c, inv_steps, samples, j)));
        }
        result["invariance"] = checks;
      }
      out << result.dump() << '\n';
      return 0;
    };
  });

  // distance
  std::string domain_name = "halfplane";
  double low = 0.0;
  double high = 0.0;
  std::string z1_text;
  std::string z2_text;
  std::optional<double> theta1;
  std::optional<double> theta2;
  std::vector<std::string> via;
  auto* distance = app.add_subcommand("distance", "Kobayashi distance on a model domain (JSON)");
  distance->add_option("--domain", domain_name, "halfplane | slit | sector | double")
      ->capture_default_str();
  distance->add_option("--low", low, "Sector lower argument");
  distance->add_option("--high", high, "Sector upper argument");
  distance->add_option("--z1", z1_text, "First point")->required();
  distance->add_option("--z2", z2_text, "Second point")->required();
  distance->add_option("--theta1", theta1, "Argument lift of z1 (double sectors)");
  distance->add_option("--theta2", theta2, "Argument lift of z2 (double sectors)");
  distance->add_option("--via", via, "Intermediate polyline vertices; adds a path length");
  distance->callback([&] {
    action = [&] {
      const ModelDomain domain = load_domain(domain_name, low, high);
      const DomainPoint p1 = load_point(z1_text, theta1);
      const DomainPoint p2 = load_point(z2_text, theta2);
      Json result = {{"domain", io::to_json(domain)},
                     {"distance", io::to_json(distance_exact(domain, p1, p2))}};
      PathPolyline path{{p1}};
      for (const auto& v : via) path.vertices.push_back(load_complex(v));
      path.vertices.push_back(p2);
      result["path_length"] = io::number(path_length(domain, path));
      out << result.dump() << '\n';
      return 0;
    };
  });

  // verify / closure share the certificate inputs
  double C = 2.0;
  std::optional<std::string> z0_override;
  std::string table_path = "out/certificate.txt";
  std::string bounds_path;
  int depth = 3;
  auto add_cert_options = [&](CLI::App* sub) {
    add_poly(sub);
    sub->add_option("--C", C, "Target distance")->capture_default_str();
    sub->add_option("--q", q_text, "Reference point in the basin")->required();
    sub->add_option("--kmax", k_max, "Forward depth")->capture_default_str();
    sub->add_option("--lmax", l_max, "Backward depth")->capture_default_str();
    sub->add_option("--direction", direction, "Attraction direction index")->capture_default_str();
    sub->add_option("--z0", z0_override, "Override the recipe's base point");
  };
  auto build_certificate = [&] {
    const ParabolicMap f = load_poly(poly);
    const Complex q = load_complex(q_text);
    require(C > 0.0, "--C must be positive");
    require(k_max >= 0 && l_max >= 0, "--kmax and --lmax must be nonnegative");
    require(direction >= 0 && direction < f.m(), "--direction out of range");
    VerifyOptions options;
    if (z0_override) options.z0_override = load_complex(*z0_override);
    return std::pair(f, validate([&] {
                       return verify_theorem(f, C, q, k_max, l_max, direction, options);
                     }));
  };

  auto* verify = app.add_subcommand("verify", "Certify d(z0, Q) >= C on a truncation (JSON)");
  add_cert_options(verify);
  verify->add_option("--table", table_path, "Human-readable table path")->capture_default_str();
  verify->add_option("--bounds-csv", bounds_path, "Per-point bounds CSV path");
  verify->callback([&] {
    action = [&] {
      const auto [f, cert] = build_certificate();
      out << io::to_json(cert).dump(2) << '\n';
      std::ostringstream table;
      io::write_table(table, cert);
      write_text(table_path, table.str());
      if (!bounds_path.empty()) {
        auto file = open_output(bounds_path);
        io::write_bounds_csv(file, cert);
      }
      return cert.pass ? 0 : 1;
    };
  });

  auto* closure = app.add_subcommand("closure", "Preimage-closure check on a certificate (JSON)");
  add_cert_options(closure);
  closure->add_option("--depth", depth, "Preimage depth of z0")->capture_default_str();
  closure->callback([&] {
    action = [&] {
      require(depth >= 0, "--depth must be nonnegative");
      const auto [f, cert] = build_certificate();
      const ClosureReport report = corollary_d_closure(f, cert, depth);
      out << io::to_json(report).dump(2) << '\n';
      return report.status == ClosureStatus::Ok && report.failures.empty() ? 0 : 1;
    };
  });

  // render
  std::string center_text = "-0.25";
  double width = 1.5;
  std::optional<double> height;
  int resolution = 256;
  std::size_t n_max = 10000;
  std::optional<std::string> seed_text;
  auto* render = app.add_subcommand("render", "Basin raster as a PPM image");
  add_poly(render);
  render->add_option("--center", center_text, "Window center")->capture_default_str();
  render->add_option("--width", width, "Window width")->capture_default_str();
  render->add_option("--height", height, "Window height (default: width)");
  render->add_option("--resolution", resolution, "Pixels per side")->capture_default_str();
  render->add_option("--nmax", n_max, "Iteration budget per pixel")->capture_default_str();
  render->add_option("--seed-point", seed_text, "Immediate-component seed to overlay");
  render->add_option("--out", out_path, "PPM path (default: out/basin.ppm)");
  render->callback([&] {
    action = [&] {
      const ParabolicMap f = load_poly(poly);
      const Complex center = load_complex(center_text);
      require(resolution >= 1 && resolution <= 8192, "--resolution must lie in [1, 8192]");
      require(width > 0.0 && height.value_or(width) > 0.0, "window must be nonempty");
      RasterGrid grid = classify_grid(f, {center, width, height.value_or(width)}, resolution, n_max);
      if (seed_text) grid.component_mask = immediate_component(grid, load_complex(*seed_text));
      const std::string path = out_path.empty() ? "out/basin.ppm" : out_path;
      open_output(path);
      write_image(grid, path);
      std::size_t counts[3] = {0, 0, 0};
      for (const auto& label : grid.labels) ++counts[static_cast<int>(label.kind)];
      out << Json{{"image", path},
                  {"direction_pixels", counts[0]},
                  {"escaped_pixels", counts[1]},
                  {"undecided_pixels", counts[2]}}
                 .dump()
          << '\n';
      return 0;
    };
  });

  // prop3
  double radius = 0.3;
  double half_angle = 0.3;
  int prop_resolution = 1024;
  std::size_t prop_nmax = 20000;
  auto* prop3 = app.add_subcommand("prop3", "Disjointness of the edge-touching basin pieces (JSON)");
  add_poly(prop3);
  prop3->add_option("--R", radius, "Radius")->capture_default_str();
  prop3->add_option("--theta0", half_angle, "Half-angle")->capture_default_str();
  prop3->add_option("--resolution", prop_resolution, "Pixels per side")->capture_default_str();
  prop3->add_option("--nmax", prop_nmax, "Iteration budget per pixel")->capture_default_str();
  prop3->callback([&] {
    action = [&] {
      const ParabolicMap f = load_poly(poly);
      require(f.has_higher_terms(), "prop3 needs a term beyond a z^{m+1}");
      require(radius > 0.0 && half_angle > 0.0, "--R and --theta0 must be positive");
      require(prop_resolution >= 1 && prop_resolution <= 8192, "--resolution must lie in [1, 8192]");
      const Prop3Report report = prop3_disjointness(f, radius, half_angle, prop_resolution, prop_nmax);
      out << io::to_json(report).dump() << '\n';
      return report.disjoint ? 0 : 1;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  configure_threads();
  try {
    return action();
  } catch (const UsageError& e) {
    err << Json{{"error", "UsageError"}, {"message", e.what()}}.dump() << '\n';
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return 2;
  } catch (const Error& e) {
    err << Json{{"error", to_string(e.kind())}, {"message", e.what()}}.dump() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << Json{{"error", "Internal"}, {"message", e.what()}}.dump() << '\n';
    return 1;
  }
}

}  // namespace parabasin::cli

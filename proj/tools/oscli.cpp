// Command-line front end: oscillatory geometries, spherical-mean inversion,
// time reversal and levitation experiments.

#include <omp.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "CLI11.hpp"
#include "json.hpp"
#include "osc/errors.hpp"
#include "osc/fbp.hpp"
#include "osc/io.hpp"
#include "osc/levitation.hpp"
#include "osc/presets.hpp"
#include "osc/separators.hpp"
#include "osc/time_reversal.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace osc;

namespace {

constexpr const char* kModule = "cli_app";

struct Options {
  std::string poly;
  std::vector<double> point;
  std::string q;
  std::string phantom;
  std::string sinogram;
  int directions = 0;
  int nsigma = 512;
  double dsigma = 0.0;
  std::vector<double> grid;
  std::string out;
  std::string format = "csv";
  double normalization = 0.0;
  int interpolation = 3;
  int probes = 10;
  std::vector<double> probe;
  unsigned seed = 1;
  std::vector<double> layer;
  int levels = 8;
  std::string traces;
  double horizon = 0.0;
};

Geometry geometry(const Options& o) {
  if (o.poly.empty()) throw InputError(kModule, "--poly is required");
  Geometry g;
  if (o.poly.rfind("preset:", 0) == 0) {
    const auto pr = preset(o.poly.substr(7));
    g.p = pr.p;
    g.point = pr.point;
  } else {
    g = load_geometry(o.poly);
  }
  if (!o.point.empty()) g.point = to_point(o.point, g.p.dim(), kModule);
  if (!g.point) throw InputError(kModule, "no base point: pass --point or add a 'point' line to the polynomial file");
  return g;
}

Polynomial separator_candidate(const Options& o, const Geometry& g) {
  if (o.q.empty() || o.q == "euler") return euler_separator(g.p, *g.point);
  if (o.q.rfind("preset:", 0) == 0) {
    const auto pr = preset(o.q.substr(7));
    if (!pr.q) throw InputError(kModule, "preset '" + o.q.substr(7) + "' has no separator");
    return *pr.q;
  }
  // Plain constants are handy for uniform densities.
  try {
    std::size_t used = 0;
    const double c = std::stod(o.q, &used);
    if (used == o.q.size()) return Polynomial::constant(g.p.dim(), c);
  } catch (const std::invalid_argument&) {
  }
  auto q = load_polynomial(o.q);
  if (q.dim() != g.p.dim()) throw InputError(kModule, "separator and polynomial dimensions differ");
  return q;
}

QuadratureRule rule(const Options& o, int dim, int default2 = 180, int default3 = 362) {
  if (o.directions < 0) throw InputError(kModule, "--directions must be positive");
  const int n = o.directions > 0 ? o.directions : (dim == 2 ? default2 : default3);
  if (n < 2) throw InputError(kModule, "--directions must be at least 2");
  return QuadratureRule::with_directions(dim, n);
}

GridSpec grid(const Options& o, int dim) {
  std::vector<double> g = o.grid.empty() ? std::vector<double>{-1.0, 1.0, dim == 2 ? 128.0 : 48.0} : o.grid;
  if (g.size() != 3) throw InputError(kModule, "--grid takes three values: lo hi resolution");
  if (g[2] < 1 || g[2] != std::floor(g[2])) throw InputError(kModule, "grid resolution must be a positive integer");
  const auto spec = dim == 2 ? GridSpec::square(g[0], g[1], static_cast<int>(g[2]))
                             : GridSpec::cube(g[0], g[1], static_cast<int>(g[2]));
  spec.validate();
  return spec;
}

GridFormat format(const Options& o) {
  if (o.format == "csv") return GridFormat::csv;
  if (o.format == "pgm16") return GridFormat::pgm16;
  throw InputError(kModule, "--format must be csv or pgm16");
}

fs::path output(const Options& o, const std::string& fallback) { return o.out.empty() ? fs::path(fallback) : fs::path(o.out); }

void emit(const json& report, const fs::path& path) {
  std::ofstream f(path);
  if (!f) throw InputError(kModule, "cannot open " + path.string());
  f << report.dump(2) << '\n';
  std::cout << report.dump(2) << '\n';
}

double phantom_error(const ScalarGrid& g, const Phantom& f) {
  std::vector<double> rec;
  std::vector<double> truth;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.flags[i]) continue;
    rec.push_back(g.values[i]);
    truth.push_back(f.value(g.spec.center(i)));
  }
  return relative_l2(rec, truth);
}

// Random points in a ball around the anchor that stays inside the cavity.
std::vector<Vec3> probe_points(const Options& o, const Polynomial& p, const Vec3& a, const QuadratureRule& r) {
  if (!o.probe.empty()) return {to_point(o.probe, p.dim(), kModule)};
  if (o.probes < 1) throw InputError(kModule, "--probes must be positive");
  const double radius = 0.8 * distance_to_zero_set(p, a, r);
  std::mt19937 rng(o.seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Vec3> pts;
  while (static_cast<int>(pts.size()) < o.probes) {
    Vec3 v(u(rng), u(rng), p.dim() == 3 ? u(rng) : 0.0);
    if (v.norm() <= 1.0) pts.push_back(a + radius * v);
  }
  return pts;
}

int analyze(const Options& o) {
  const auto g = geometry(o);
  const auto r = rule(o, g.p.dim());
  const auto spec = grid(o, g.p.dim());
  const auto verdict = is_oscillatory_at(g.p, *g.point, r);
  const fs::path dir = output(o, "analyze_out");
  fs::create_directories(dir);

  json report = {{"degree", g.p.degree()}, {"dimension", g.p.dim()}, {"degenerate_fraction", verdict.degenerate_fraction}};
  switch (verdict.kind) {
    case OscillationVerdict::Kind::oscillatory:
      report["verdict"] = "oscillatory";
      break;
    case OscillationVerdict::Kind::counterexample: {
      report["verdict"] = "counterexample";
      const Vec3& w = *verdict.witness;
      report["witness"] = {w[0], w[1], w[2]};
      break;
    }
    case OscillationVerdict::Kind::inconclusive:
      report["verdict"] = "inconclusive";
      break;
  }
  const auto mask = cavity_mask(g.p, spec, r);
  write_grid(mask.grid, dir / ("mask." + std::string(o.format == "pgm16" ? "pgm" : "csv")), format(o));
  report["mask_convexity"] = mask.convexity_score(2000);
  if (verdict.oscillatory()) {
    const auto ovals = extract_ovals(g.p, *g.point, r);
    json files = json::array();
    for (std::size_t k = 0; k < ovals.clouds.size(); ++k) {
      OvalSet one;
      one.clouds.assign(k, {});
      one.clouds.push_back(ovals.clouds[k]);
      const auto path = dir / ("oval_" + std::to_string(k + 1) + ".csv");
      write_ovals_csv(one, g.p.dim(), path);
      files.push_back(path.string());
    }
    report["ovals"] = files;
    report["nested"] = ovals.nested;
  }
  emit(report, dir / "analyze.json");
  return 0;
}

int separator(const Options& o) {
  const auto g = geometry(o);
  const auto q = separator_candidate(o, g);
  const auto rep = verify_separator(g.p, q, *g.point, rule(o, g.p.dim()));
  emit(rep.to_json(), output(o, "separator.json"));
  return 0;
}

int simulate(const Options& o) {
  const auto g = geometry(o);
  if (o.phantom.empty()) throw InputError(kModule, "--phantom is required");
  const auto f = load_phantom(o.phantom, g.p.dim());
  if (o.nsigma < 9) throw InputError(kModule, "--nsigma must be at least 9");
  const auto r = rule(o, g.p.dim());
  double ds = o.dsigma;
  if (ds < 0.0) throw InputError(kModule, "--dsigma must be positive");
  if (ds == 0.0) {
    // Cover the farthest point of the support seen from any sensor.
    const auto layout = sinogram_layout(g.p, *g.point, r, 1.0, 1);
    double reach = 0.0;
    for (const auto& c : layout.columns) reach = std::max(reach, f.max_support_distance(c.center(*g.point)));
    ds = 1.05 * reach * reach / o.nsigma;
  }
  const auto s = simulate_sinogram(f, g.p, *g.point, r, ds, o.nsigma);
  const auto path = output(o, "sinogram.csv");
  write_sinogram_csv(s, path);
  std::cout << json{{"sinogram", path.string()}, {"columns", s.columns.size()}, {"d_sigma", ds}}.dump(2) << '\n';
  return 0;
}

int reconstruct_cmd(const Options& o, bool time_reversal) {
  const auto g = geometry(o);
  if (o.sinogram.empty()) throw InputError(kModule, "--sinogram is required");
  const auto spec = grid(o, g.p.dim());
  const auto fmt = format(o);
  ReconstructionConfig cfg;
  cfg.normalization = o.normalization;
  cfg.interpolation = o.interpolation;
  cfg.validate();
  if (o.horizon != 0.0 && !(o.horizon >= 1.0)) throw InputError(kModule, "--horizon must be at least 1");
  const auto s = read_sinogram_csv(o.sinogram);
  if (s.dim != g.p.dim()) throw InputError(kModule, "sinogram dimension differs from the polynomial");

  json report;
  const auto fbp = reconstruct(s, g.p, *g.point, spec, cfg);
  ScalarGrid result = fbp;
  if (time_reversal) {
    if (!o.traces.empty()) {
      fs::create_directories(o.traces);
      const auto u = transmit(s, o.horizon);
      const auto v = filtrate(u);
      write_trace_csv(u, fs::path(o.traces) / "u.csv");
      write_trace_csv(v, fs::path(o.traces) / "v.csv");
    }
    result = tr_reconstruct(s, g.p, *g.point, spec, o.horizon);
    report["relative_l2_vs_fbp"] = relative_l2(result.values, fbp.values);
  }
  const auto path = output(o, time_reversal ? "timereverse.csv" : "reconstruction.csv");
  write_grid(result, path, fmt);
  report["grid"] = path.string();
  report["min"] = result.min();
  report["max"] = result.max();
  if (!o.phantom.empty()) report["relative_l2_vs_phantom"] = phantom_error(result, load_phantom(o.phantom, g.p.dim()));
  std::cout << report.dump(2) << '\n';
  return 0;
}

int levitate(const Options& o, bool layer) {
  const auto g = geometry(o);
  // Field quadrature needs finer angular sampling than the geometry checks.
  const auto r = rule(o, g.p.dim(), 2000, 1152);
  MassDensitySpec spec;
  spec.p = g.p;
  spec.q = separator_candidate(o, g);
  spec.anchor = *g.point;
  if (layer) {
    if (o.layer.size() != 2) throw InputError(kModule, "--layer takes two values: lo hi");
    spec.kind = MassDensitySpec::Kind::layer;
    spec.lo = o.layer[0];
    spec.hi = o.layer[1];
    spec.layer_nodes = o.levels;
  }
  spec.validate();
  // Probes stay clear of the innermost mass.
  const Polynomial inner = layer ? g.p - Polynomial::constant(g.p.dim(), g.p.value(spec.anchor) > spec.hi ? spec.hi : spec.lo) : g.p;
  std::vector<FieldProbe> probes;
  for (const auto& x : probe_points(o, inner, spec.anchor, r)) {
    probes.push_back(layer ? layer_field(spec, x, r) : surface_field(spec, x, r));
  }
  const Vec3 pred = layer ? Vec3::Zero() : constant_field_prediction(g.p, spec.q, spec.anchor, r);
  auto report = levitation_report(probes, pred, g.p.dim());
  report["total_mass"] = total_mass(spec, r);
  emit(report, output(o, layer ? "layer_levitate.json" : "levitate.json"));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Oscillatory geometries: spherical mean inversion, time reversal, levitation"};
  app.set_config("--config", "", "Key-value configuration file");
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "OpenMP thread count (0 keeps the runtime default)")->check(CLI::NonNegativeNumber);

  Options o;
  auto geometry_opts = [&](CLI::App* c) {
    c->add_option("--poly", o.poly, "Polynomial file, or preset:<name>")->required();
    c->add_option("--point", o.point, "Base point in the hyperbolic cavity")->expected(2, 3);
    c->add_option("--directions", o.directions, "Number of quadrature directions");
    c->add_option("--out", o.out, "Output file or directory");
  };

  auto* an = app.add_subcommand("analyze", "Oscillation verdict, cavity mask and ovals");
  geometry_opts(an);
  an->add_option("--grid", o.grid, "Mask box and resolution: lo hi res")->expected(3);
  an->add_option("--format", o.format, "csv or pgm16");

  auto* sep = app.add_subcommand("separator", "Construct or verify a separator");
  geometry_opts(sep);
  sep->add_option("--q", o.q, "Candidate file, preset:<name>, a constant, or 'euler'");

  auto* sim = app.add_subcommand("simulate", "Spherical-mean sinogram of a phantom");
  geometry_opts(sim);
  sim->add_option("--phantom", o.phantom, "Phantom description file")->required();
  sim->add_option("--nsigma", o.nsigma, "Number of sigma intervals");
  sim->add_option("--dsigma", o.dsigma, "Sigma spacing (default: cover the support)");

  CLI::App* rec_cmds[2] = {app.add_subcommand("reconstruct", "Filtered back projection"),
                           app.add_subcommand("timereverse", "Time-reversal pipeline")};
  for (auto* c : rec_cmds) {
    geometry_opts(c);
    c->add_option("--sinogram", o.sinogram, "Sinogram CSV")->required();
    c->add_option("--grid", o.grid, "Output box and resolution: lo hi res")->expected(3);
    c->add_option("--format", o.format, "csv or pgm16");
    c->add_option("--phantom", o.phantom, "Phantom file for an error report");
    c->add_option("--normalization", o.normalization, "Override c_n");
    c->add_option("--interpolation", o.interpolation, "1 or 3");
  }
  rec_cmds[1]->add_option("--traces", o.traces, "Directory for the u and v boundary traces");
  rec_cmds[1]->add_option("--horizon", o.horizon, "Recording time, as a multiple of the sinogram sigma range");

  CLI::App* lev_cmds[2] = {app.add_subcommand("levitate", "Field of |q| delta(p) in the cavity"),
                           app.add_subcommand("layer-levitate", "Field of |q| dx in a layer")};
  for (auto* c : lev_cmds) {
    geometry_opts(c);
    c->add_option("--q", o.q, "Density polynomial file, preset:<name>, a constant, or 'euler'");
    c->add_option("--probes", o.probes, "Number of random probe points");
    c->add_option("--probe", o.probe, "A single probe point")->expected(2, 3);
    c->add_option("--seed", o.seed, "Probe RNG seed");
  }
  lev_cmds[1]->add_option("--layer", o.layer, "Layer bounds lo hi")->expected(2)->required();
  lev_cmds[1]->add_option("--levels", o.levels, "Gauss-Legendre nodes across the layer");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (threads > 0) omp_set_num_threads(threads);

  try {
    if (*an) return analyze(o);
    if (*sep) return separator(o);
    if (*sim) return simulate(o);
    if (*rec_cmds[0]) return reconstruct_cmd(o, false);
    if (*rec_cmds[1]) return reconstruct_cmd(o, true);
    if (*lev_cmds[0]) return levitate(o, false);
    if (*lev_cmds[1]) return levitate(o, true);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << kModule << ": " << e.what() << '\n';
    return 2;
  }
  return 0;
}

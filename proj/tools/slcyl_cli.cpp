// slcyl: construction sweeps, verification runs and plot data.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "slcyl/assembly.hpp"
#include "slcyl/errors.hpp"
#include "slcyl/harmonic.hpp"
#include "slcyl/io.hpp"
#include "slcyl/lawlor.hpp"
#include "slcyl/sampling.hpp"
#include "slcyl/sphere.hpp"
#include "slcyl/verify.hpp"
#include "slcyl/weighted.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace slcyl;

namespace {

constexpr int kSchema = 1;

struct Common {
  std::string out = "slcyl_out";
  std::uint64_t seed = 20240611;
};

struct ModelOpts {
  std::vector<double> lawlor_a{1.0, 1.0, 1.0};
  int a = 2;
  double b = 1.5;
  double A = 32.0;
};

void add_model_opts(CLI::App* sub, ModelOpts& m) {
  sub->add_option("--lawlor-a", m.lawlor_a, "neck parameters a_1,..,a_n (n >= 3)")->delimiter(',');
  sub->add_option("--degree", m.a, "integer a > 1 of phi_a and the neck scale |u|^a");
  sub->add_option("--b", m.b, "band exponent b in (1, a)");
  sub->add_option("--A", m.A, "scale parameter; X lives in rho < 1/A");
}

Model build_model(const ModelOpts& m) {
  if (m.lawlor_a.size() < 3)
    throw ArgumentError("config: n >= 3 required (lawlor a has " + std::to_string(m.lawlor_a.size()) + " entries)");
  return Model::make(LawlorParams::normalized(m.lawlor_a), m.a, m.b, m.A);
}

json model_json(const ModelOpts& m) { return {{"lawlor_a", m.lawlor_a}, {"a", m.a}, {"b", m.b}, {"A", m.A}}; }

void write_json(const fs::path& p, const json& j) { io::write_text(p, j.dump(2) + "\n"); }

std::vector<std::pair<double, double>> xy(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<std::pair<double, double>> v;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i)
    if (x[i] > 0.0 && y[i] > 0.0) v.emplace_back(x[i], y[i]);
  return v;
}

// "6..12" or "6,8,10": exponents i of scales 2^-i
std::vector<double> parse_scales(const std::string& s) {
  std::vector<int> ex;
  const auto dots = s.find("..");
  try {
    if (dots != std::string::npos) {
      const int lo = std::stoi(s.substr(0, dots)), hi = std::stoi(s.substr(dots + 2));
      for (int i = lo; i <= hi; ++i) ex.push_back(i);
    } else {
      std::stringstream ss(s);
      std::string tok;
      while (std::getline(ss, tok, ',')) ex.push_back(std::stoi(tok));
    }
  } catch (const std::logic_error&) {
    throw ArgumentError("config: scales must look like 6..12 or 6,8,10");
  }
  if (ex.size() < 2) throw ArgumentError("config: probe needs at least 2 scales");
  std::vector<double> out;
  for (int e : ex) out.push_back(std::ldexp(1.0, -e));
  return out;
}

// ---- neck

struct NeckOpts {
  std::vector<double> a;
  std::vector<double> target;
  std::size_t table_points = 201;
  double table_y = 20.0;
};

int cmd_neck(const Common& c, const NeckOpts& o) {
  if (!o.a.empty() && !o.target.empty()) throw ArgumentError("config: give either --a or --target-angles");
  LawlorParams p = !o.target.empty() ? LawlorParams::from_target_angles(o.target)
                                     : LawlorParams::normalized(o.a.empty() ? std::vector<double>{1, 1, 1} : o.a);
  const std::size_t n = p.n();
  const fs::path dir(c.out);

  std::vector<std::vector<double>> table;
  for (std::size_t i = 0; i < o.table_points; ++i) {
    const double y = -o.table_y + 2.0 * o.table_y * static_cast<double>(i) / static_cast<double>(o.table_points - 1);
    std::vector<double> row{y};
    for (std::size_t k = 0; k < n; ++k) row.push_back(p.psi(k, y));
    row.push_back(p.beta(y));
    table.push_back(std::move(row));
  }
  std::vector<std::string> header{"y"};
  for (std::size_t k = 1; k <= n; ++k) header.push_back("psi" + std::to_string(k));
  header.push_back("beta");
  io::write_text(dir / "neck_table.csv", io::csv(header, table));

  // sup |grad g| at radii Lambda 2^k over both ends
  const auto dirs = sphere_points(n, 512);
  const double L = p.graphical_radius();
  std::vector<double> radii, sups;
  std::vector<std::vector<double>> rows;
  for (int k = 0; k <= 6; ++k) {
    const double r = L * std::ldexp(1.0, k);
    double sup = 0.0;
    for (int m = 1; m <= 2; ++m)
      for (const auto& s : dirs) sup = std::max(sup, neck_graph_potential(p, ConePoint{m, s, r}).grad.norm());
    radii.push_back(r);
    sups.push_back(sup);
    rows.push_back({r, sup});
  }
  const auto pts = xy(radii, sups);
  const auto fit = exponent_fit(pts);
  io::write_text(dir / "decay.csv", io::csv({"r", "sup_grad_g"}, rows));
  io::write_text(dir / "decay_fit.json", fit_json(fit) + "\n");
  io::write_text(dir / "decay.svg", io::loglog_svg("neck graph decay", "r", "sup |grad g|", pts, &fit));

  json j = json::parse(golden_constants_json(p));
  const double sum = std::accumulate(p.theta().begin(), p.theta().end(), 0.0);
  const bool pass = std::abs(sum - std::numbers::pi) <= 1e-8 && std::abs(fit.slope - (1.0 - n)) <= 0.1;
  j["schema_version"] = kSchema;
  j["decay_slope"] = fit.slope;
  j["decay_expected"] = 1.0 - static_cast<double>(n);
  j["pass"] = pass;
  write_json(dir / "neck.json", j);
  std::cout << "theta sum - pi = " << sum - std::numbers::pi << ", A = " << p.A() << ", decay slope = " << fit.slope
            << (pass ? "  PASS" : "  FAIL") << '\n';
  return pass ? 0 : 1;
}

// ---- harmonic

struct HarmonicOpts {
  int a = 2;
  int n = 3;
  double c = -1.0;
};

int cmd_harmonic(const Common& c, const HarmonicOpts& o) {
  if (o.n < 3) throw ArgumentError("config: n >= 3 required");
  if (o.a < 1) throw ArgumentError("config: integer a >= 1 required");
  const auto poly = HarmonicPoly::make(o.a, o.n, {o.c, o.c});
  const auto P = phi_polynomial(o.a, o.n);
  const bool harmonic = cylinder_laplacian(P, o.n).is_zero();
  json degrees = json::object();
  bool gap = true;
  for (auto [name, kind] : {std::pair{"sphere", LinkKind::UnitSphere}, std::pair{"sphere_pair", LinkKind::PairOfUnitSpheres}}) {
    const auto ds = degree_set(LinkSpec{o.n, kind, {}}, 2.0 - o.n, 0.0);
    json arr = json::array();
    for (const auto& d : ds) arr.push_back({{"d", d.d}, {"multiplicity", d.multiplicity}});
    degrees[name] = arr;
    gap = gap && ds.empty();
  }
  json j = json::parse(coeffs_json(poly));
  j["schema_version"] = kSchema;
  j["polynomial"] = P.str();
  j["laplacian_zero"] = harmonic;
  j["degrees_in_gap"] = degrees;
  j["pass"] = harmonic && gap;
  write_json(fs::path(c.out) / "harmonic.json", j);
  std::cout << P.str() << "\nlaplacian zero: " << (harmonic ? "yes" : "no")
            << ", degrees in (2-n, 0): " << (gap ? "none" : "found") << ((harmonic && gap) ? "  PASS" : "  FAIL") << '\n';
  return harmonic && gap ? 0 : 1;
}

// ---- assemble

struct AssembleOpts {
  std::size_t points = 400;
};

int cmd_assemble(const Common& c, const ModelOpts& mo, const AssembleOpts& o) {
  const Model model = build_model(mo);
  const fs::path dir(c.out);
  io::write_text(dir / "region_map.svg", io::region_map_svg(model.profile));

  std::vector<CylinderPoint> cloud;
  const double top = 1.0 / model.profile.A;
  for (int i = 0; i < 4; ++i) {
    const double lo = top * std::ldexp(1.0, -i - 2);
    for (const auto& s : sample_X_shell(model, lo, 2.0 * lo, o.points / 4, c.seed + static_cast<std::uint64_t>(i)))
      if (!s.neck_chart) cloud.push_back(s.cyl);
  }
  std::ostringstream pc;
  write_point_cloud_csv(pc, model, cloud);
  io::write_text(dir / "points.csv", pc.str());

  std::vector<std::vector<double>> rows;
  std::vector<std::pair<double, double>> pairs;
  for (int e = 5; e <= 12; ++e) {
    const double u = std::ldexp(1.0, -e);
    const double gap = cancellation_gap(model, u), control = cancellation_gap(model, u, 64, true);
    rows.push_back({u, gap, control});
    pairs.emplace_back(u, gap);
  }
  const auto fit = exponent_fit(pairs);
  const double n = static_cast<double>(model.neck.n());
  const double expected = std::min(2.0 * (mo.b - 1.0), (mo.b - mo.a) * (2.0 - n));
  const bool pass = fit.slope >= expected - 0.15;
  io::write_text(dir / "cancellation.csv", io::csv({"u", "gap", "uncancelled"}, rows));
  io::write_text(dir / "cancellation.svg",
                 io::loglog_svg("band mismatch |G - phi_a| / u^2a", "u", "gap", pairs, &fit));
  json j = json::parse(fit_json(fit));
  j["schema_version"] = kSchema;
  j["model"] = model_json(mo);
  j["expected_rate"] = expected;
  j["pass"] = pass;
  write_json(dir / "cancellation_fit.json", j);
  std::cout << "cancellation slope " << fit.slope << " (expected >= " << expected << ")" << (pass ? "  PASS" : "  FAIL")
            << '\n';
  return pass ? 0 : 1;
}

// ---- angle-sweep

struct SweepOpts {
  double delta = 4.1;
  double tau = -0.1;
  int depth = 26;
  std::size_t samples = 96;
  int A_lo = 5;
  int A_hi = 12;
};

int cmd_angle_sweep(const Common& c, const ModelOpts& mo, const SweepOpts& o) {
  if (o.A_hi - o.A_lo < 3) throw ArgumentError("config: A-list needs at least 4 entries");
  const Model model = build_model(mo);
  std::vector<double> As;
  for (int e = o.A_lo; e <= o.A_hi; ++e) As.push_back(std::ldexp(1.0, e));
  if (o.depth < mo.a * (o.A_hi + 1)) throw ArgumentError("config: depth >= a (A-hi + 1) required");
  const auto rep = weight_feasibility(model, o.delta, o.tau, As, o.depth, o.samples, c.seed);
  const fs::path dir(c.out);

  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < As.size(); ++i) rows.push_back({As[i], rep.weight_sup[i], rep.angle_ratio_sup[i]});
  io::write_text(dir / "angle_sweep.csv", io::csv({"A", "weight_sup", "angle_ratio_sup"}, rows));

  const WeightSpec spec{0, 0.5, o.delta - 2.0, o.tau - 2.0};
  const auto sweep = dyadic_sweep(theta_sampler(model), spec, model.profile.A, o.depth, o.samples, c.seed);
  io::write_text(dir / "angle_boxes.csv", sweep_csv(sweep));
  io::write_text(dir / "weight_decay.svg",
                 io::loglog_svg("weight sup against A", "A", "sup", xy(As, rep.weight_sup), &rep.weight_fit));
  io::write_text(dir / "angle_decay.svg",
                 io::loglog_svg("angle ratio sup against A", "A", "sup", xy(As, rep.angle_ratio_sup), &rep.angle_fit));

  constexpr double kKappa = 0.05;
  const bool pass = rep.weight_kappa >= kKappa && rep.angle_kappa >= kKappa;
  json j{{"schema_version", kSchema},
         {"model", model_json(mo)},
         {"delta", o.delta},
         {"tau", o.tau},
         {"A_list", As},
         {"weight_sup", rep.weight_sup},
         {"angle_ratio_sup", rep.angle_ratio_sup},
         {"weight_fit", json::parse(fit_json(rep.weight_fit))},
         {"angle_fit", json::parse(fit_json(rep.angle_fit))},
         {"weight_kappa", rep.weight_kappa},
         {"angle_kappa", rep.angle_kappa},
         {"kappa_threshold", kKappa},
         {"pass", pass}};
  write_json(dir / "feasibility.json", j);
  std::cout << "weight kappa " << rep.weight_kappa + 0.0 << ", angle kappa " << rep.angle_kappa + 0.0 << " (need >= " << kKappa
            << ")" << (pass ? "  PASS" : "  FAIL") << '\n';
  return pass ? 0 : 1;
}

// ---- probe

struct ProbeOpts {
  std::string scales = "6..12";
  std::size_t samples = 600;
};

int cmd_probe(const Common& c, const ModelOpts& mo, const ProbeOpts& o) {
  const Model model = build_model(mo);
  const auto scales = parse_scales(o.scales);
  const auto res = tangent_cone_probe(model, scales, o.samples, c.seed);
  const fs::path dir(c.out);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < res.scales.size(); ++i)
    rows.push_back({res.scales[i], res.forward[i], res.reverse[i], res.distances[i], static_cast<double>(res.counts[i])});
  io::write_text(dir / "probe.csv", io::csv({"scale", "forward", "reverse", "distance", "count"}, rows));
  const auto pts = xy(res.scales, res.distances);
  const FitResult fit = pts.size() >= 4 ? exponent_fit(pts) : FitResult{};
  io::write_text(dir / "probe.svg", io::loglog_svg("distance to C x R", "scale", "Hausdorff", pts,
                                                   pts.size() >= 4 ? &fit : nullptr));
  bool decreasing = true;
  for (std::size_t i = 1; i < res.distances.size(); ++i)
    decreasing = decreasing && res.distances[i] < res.distances[i - 1];
  const bool pass = decreasing && res.distances.back() <= 0.05;
  write_json(dir / "probe.json", {{"schema_version", kSchema},
                                  {"model", model_json(mo)},
                                  {"scales", res.scales},
                                  {"distances", res.distances},
                                  {"decreasing", decreasing},
                                  {"fit", json::parse(fit_json(fit))},
                                  {"pass", pass}});
  for (std::size_t i = 0; i < res.scales.size(); ++i)
    std::cout << "scale " << res.scales[i] << "  distance " << res.distances[i] << '\n';
  std::cout << (pass ? "PASS" : "FAIL") << '\n';
  return pass ? 0 : 1;
}

// ---- verify

struct VerifyOpts {
  std::string preset = "default";
  std::vector<int> only;
};

int cmd_verify(const Common& c, const ModelOpts& mo, const VerifyOpts& o, const CLI::App* sub) {
  SuiteConfig cfg;
  if (o.preset == "quick") {
    cfg.A_exp_hi = 9;
    cfg.depth = 20;
    cfg.box_samples = 48;
    cfg.probe_hi = 10;
    cfg.probe_samples = 300;
    cfg.charts = 40;
  } else if (o.preset != "default") {
    throw ArgumentError("config: preset must be default or quick");
  }
  if (sub->count("--lawlor-a")) cfg.lawlor_a = mo.lawlor_a;
  if (sub->count("--degree")) cfg.a = mo.a;
  if (sub->count("--b")) cfg.b = mo.b;
  if (sub->count("--A")) cfg.A = mo.A;
  cfg.seed = c.seed;
  cfg.only = o.only;
  const auto rep = run_suite(cfg);
  const fs::path dir(c.out);
  io::write_text(dir / "report.json", rep.json() + "\n");
  io::write_text(dir / "summary.csv", rep.summary_csv());
  for (const auto& ch : rep.checks)
    std::cout << (ch.pass ? "PASS " : "FAIL ") << ch.id << ' ' << ch.name << "  " << ch.measured << ' '
              << ch.comparison << ' ' << ch.tolerance << '\n';
  std::cout << (rep.all_pass() ? "all pass" : "not all pass") << '\n';
  return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate special Lagrangians with cylindrical tangent cone"};
  app.require_subcommand(1);
  app.config_formatter(std::make_shared<CLI::ConfigINI>());
  app.set_config("--config", "", "key = value file, one [section] per subcommand");

  Common common;
  app.add_option("--out", common.out, "output directory")->envname("SLCYL_OUTPUT_DIR");
  app.add_option("--seed", common.seed, "base random seed");
  app.fallthrough();

  NeckOpts neck;
  auto* s_neck = app.add_subcommand("neck", "Lawlor neck angles, tables and decay");
  s_neck->add_option("--a", neck.a, "a_1,..,a_n")->delimiter(',');
  s_neck->add_option("--target-angles", neck.target, "theta_1,..,theta_n summing to pi")->delimiter(',');
  s_neck->add_option("--table-points", neck.table_points);
  s_neck->add_option("--table-y", neck.table_y);

  HarmonicOpts harm;
  auto* s_harm = app.add_subcommand("harmonic", "phi_a coefficients and the degree gap");
  s_harm->add_option("--degree", harm.a);
  s_harm->add_option("--n", harm.n);
  s_harm->add_option("--c", harm.c, "end constant used for both components");

  ModelOpts m_asm, m_sweep, m_probe, m_verify;
  AssembleOpts asmo;
  auto* s_asm = app.add_subcommand("assemble", "region map, point cloud and band cancellation");
  add_model_opts(s_asm, m_asm);
  s_asm->add_option("--points", asmo.points);

  SweepOpts sweep;
  auto* s_sweep = app.add_subcommand("angle-sweep", "weighted angle and weight decay against A");
  add_model_opts(s_sweep, m_sweep);
  s_sweep->add_option("--delta", sweep.delta);
  s_sweep->add_option("--tau", sweep.tau);
  s_sweep->add_option("--depth", sweep.depth);
  s_sweep->add_option("--samples", sweep.samples);
  s_sweep->add_option("--A-lo", sweep.A_lo, "A-list starts at 2^A-lo");
  s_sweep->add_option("--A-hi", sweep.A_hi, "A-list ends at 2^A-hi");

  ProbeOpts probe;
  auto* s_probe = app.add_subcommand("probe", "Hausdorff distance of rescaled X to C x R");
  add_model_opts(s_probe, m_probe);
  s_probe->add_option("--scales", probe.scales, "exponents i of scales 2^-i, e.g. 6..12");
  s_probe->add_option("--samples", probe.samples);

  VerifyOpts ver;
  auto* s_ver = app.add_subcommand("verify", "run every acceptance check");
  add_model_opts(s_ver, m_verify);
  s_ver->add_option("--preset", ver.preset, "default or quick");
  s_ver->add_option("--only", ver.only, "criteria ids to run")->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    fs::create_directories(common.out);
    if (*s_neck) return cmd_neck(common, neck);
    if (*s_harm) return cmd_harmonic(common, harm);
    if (*s_asm) return cmd_assemble(common, m_asm, asmo);
    if (*s_sweep) return cmd_angle_sweep(common, m_sweep, sweep);
    if (*s_probe) return cmd_probe(common, m_probe, probe);
    if (*s_ver) return cmd_verify(common, m_verify, ver, s_ver);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    try {
      const std::string name = app.get_subcommands().empty() ? "run" : app.get_subcommands().front()->get_name();
      write_json(fs::path(common.out) / (name + "_error.json"),
                 {{"schema_version", kSchema}, {"pass", false}, {"error", e.what()}});
    } catch (const std::exception&) {
    }
    return 2;
  }
  return 1;
}

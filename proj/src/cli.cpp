#include "momentshape/cli.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "momentshape/json_io.hpp"
#include "momentshape/markov1d.hpp"
#include "momentshape/reconstruct.hpp"
#include "momentshape/stability.hpp"
#include "momentshape/volume.hpp"

namespace momentshape {

namespace {

constexpr int kOk = 0;
constexpr int kValidationFailure = 1;
constexpr int kUsageError = 2;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

Json parse_json_file(const std::string& path) {
  return Json::parse(read_file(path));  // throws with byte position on malformed input
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-")
    std::cout << content;
  else
    write_atomic(path, content);
}

struct GlobalOptions {
  std::uint64_t seed = 42;
  int grid_n = 512;
  double tol = 1e-8;
};

int cmd_moments(const std::string& spec_path, int d, const std::string& backend,
                const GlobalOptions& g, const std::string& out_path) {
  DomainSpec spec = domain_spec_from_json(parse_json_file(spec_path));
  validate(spec);

  Json out;
  if (std::holds_alternative<IntervalUnionSpec>(spec)) {
    out = moment1d_to_json(interval_moments(std::get<IntervalUnionSpec>(spec), d));
  } else if (backend == "grid" || std::holds_alternative<SublevelSpec>(spec)) {
    out = moment2d_to_json(grid_moments(sample_shade(spec, g.grid_n), d));
  } else if (const auto* disk = std::get_if<DiskSpec>(&spec)) {
    out = moment2d_to_json(disk_moments(disk->center, disk->radius, d));
  } else {
    out = moment2d_to_json(conformal_moments(std::get<ConformalSpec>(spec).phi, d));
  }
  emit(out_path, out.dump(2) + "\n");
  return kOk;
}

int cmd_exptransform(const std::string& in_path, const std::string& out_path) {
  Json in = parse_json_file(in_path);
  Json out;
  if (in.contains("s") && in["s"].is_array() && !in["s"].empty() && in["s"][0].is_number()) {
    out = expcoeff1d_to_json(s_to_t(moment1d_from_json(in)));
  } else {
    out = expcoeff2d_to_json(s_to_b(moment2d_from_json(in)));
  }
  emit(out_path, out.dump(2) + "\n");
  return kOk;
}

int cmd_reconstruct(const std::string& in_path, const ReconstructOptions& opt,
                    const std::string& out_path, const std::string& levelset_path,
                    int levelset_n, double levelset_r) {
  Json in = parse_json_file(in_path);
  ExpCoeffTable2D b = in.contains("b") ? expcoeff2d_from_json(in)
                                       : s_to_b(moment2d_from_json(in));
  ReconstructionReport report = reconstruct_from_b(b, opt);
  emit(out_path, reconstruction_report_to_json(report).dump(2) + "\n");

  if (!levelset_path.empty()) {
    if (!report.node_poly.ok) return kValidationFailure;
    HermitianBivarPoly q(report.q_coeffs);
    auto samples =
        level_set_samples(q, {-levelset_r, levelset_r, -levelset_r, levelset_r}, levelset_n);
    std::ostringstream csv;
    csv << "x,y\n";
    for (const auto& [x, y] : samples) csv << fmt(x) << "," << fmt(y) << "\n";
    write_atomic(levelset_path, csv.str());
  }
  return report.node_poly.ok ? kOk : kValidationFailure;
}

int cmd_markov1d(const std::string& in_path, double tol, const std::string& out_path) {
  Json in = parse_json_file(in_path);
  MomentTable1D s;
  if (in.contains("intervals")) {
    auto spec = std::get<IntervalUnionSpec>(domain_spec_from_json(
        Json{{"type", "intervals"}, {"intervals", in["intervals"]}}));
    int d = static_cast<int>(spec.intervals.size());
    s = interval_moments(spec, std::max(2 * d, 2));
  } else {
    s = moment1d_from_json(in);
  }
  Markov1DReport report = run_markov1d(s, tol);
  emit(out_path, markov1d_report_to_json(report).dump(2) + "\n");
  return report.pade.ok && report.ends.ok ? kOk : kValidationFailure;
}

int cmd_volume(const std::string& poly_path, const std::vector<double>& deltas,
               long long samples, double r, const GlobalOptions& g,
               const std::string& out_path) {
  RealPoly p = real_poly_from_json(parse_json_file(poly_path));
  auto admissible = find_admissible(p);
  // The binding index: smallest total degree, largest coefficient on ties.
  const AdmissibleIndex* alpha = &admissible.front();
  for (const auto& a : admissible)
    if (a.total_degree < alpha->total_degree ||
        (a.total_degree == alpha->total_degree && std::abs(a.coeff) > std::abs(alpha->coeff)))
      alpha = &a;

  auto table = check_vol_ratio(p, *alpha, deltas, samples, g.seed, r);
  std::ostringstream csv;
  csv << "delta,volume,stderr,ratio\n";
  for (const auto& row : table.rows)
    csv << fmt(row.delta) << "," << fmt(row.volume) << "," << fmt(row.std_error) << ","
        << fmt(row.ratio) << "\n";
  emit(out_path, csv.str());
  return table.bounded ? kOk : kValidationFailure;
}

HolderConfig::Family family_from_string(const std::string& name) {
  if (name == "xy-translation") return HolderConfig::Family::kXyTranslation;
  if (name == "circle-dilation") return HolderConfig::Family::kCircleDilation;
  throw std::runtime_error("unknown holder family: " + name);
}

Perturbation perturbation_from_json(const Json& j) {
  Perturbation pert;
  const std::string family = j.at("family").get<std::string>();
  if (family == "dilation")
    pert.family = Perturbation::Family::kBoundaryDilation;
  else if (family == "translation")
    pert.family = Perturbation::Family::kTranslation;
  else if (family == "smudge")
    pert.family = Perturbation::Family::kGraySmudge;
  else
    throw std::runtime_error("unknown perturbation family: " + family);
  pert.epsilon = j.at("epsilon").get<double>();
  return pert;
}

int cmd_stability(const std::string& config_path, const GlobalOptions& g,
                  const std::string& csv_path, const std::string& json_path) {
  Json cfg = parse_json_file(config_path);
  const std::string experiment = cfg.at("experiment").get<std::string>();
  std::ostringstream csv;
  Json summary;
  summary["experiment"] = experiment;
  bool ok = true;

  if (experiment == "holder") {
    HolderConfig hc;
    hc.family = family_from_string(cfg.at("family").get<std::string>());
    hc.eps_grid = cfg.at("eps_grid").get<std::vector<double>>();
    hc.validity_radius = cfg.value("validity_radius", 0.0);
    auto exp = run_holder_experiment(hc);
    csv << "eps,l1,gap,ratio,in_validity_ball\n";
    for (const auto& rec : exp.records)
      csv << fmt(rec.eps) << "," << fmt(rec.l1) << "," << fmt(rec.gap) << ","
          << fmt(rec.ratio) << "," << (rec.in_validity_ball ? 1 : 0) << "\n";
    summary["alpha_order"] = exp.alpha_order;
    summary["max_ratio"] = exp.max_ratio;
    summary["bounded"] = exp.bounded;
    summary["slope"] = exp.slope;
    ok = exp.bounded;
  } else if (experiment == "fenchel") {
    RealPoly p = real_poly_from_json(cfg.at("poly"));
    auto report = fenchel_check(p, cfg.at("eps_grid").get<std::vector<double>>(),
                                cfg.at("s_grid").get<std::vector<double>>(),
                                cfg.value("cells", 4096));
    csv << "eps,s,lambda,rhs,margin\n";
    for (const auto& row : report.rows)
      csv << fmt(row.eps) << "," << fmt(row.s) << "," << fmt(row.lambda) << ","
          << fmt(row.rhs) << "," << fmt(row.margin) << "\n";
    summary["violations"] = report.violations;
    summary["slope"] = report.slope;
    summary["expected_slope"] = report.expected_slope;
    summary["tolerance"] = report.tolerance;
    ok = report.violations == 0;
  } else if (experiment == "diagonal" || experiment == "bgap") {
    const int pairs = cfg.value("pairs", 10);
    const int points = cfg.value("points", 20);
    const int n = cfg.value("grid_n", g.grid_n);
    const std::uint64_t seed = cfg.value("seed", g.seed);
    const bool diagonal = experiment == "diagonal";
    // Pairs are independent jobs with their own substreams; run them
    // concurrently and merge in index order.
    std::vector<PerturbBoundRecord> results(pairs);
    detail::parallel_rows(pairs, [&](int i) {
      ShadeFunction f = random_shade(n, detail::mix_seed(seed, 2 * i));
      ShadeFunction h = random_shade(n, detail::mix_seed(seed, 2 * i + 1));
      if (diagonal) {
        std::vector<Complex> zs;
        for (int k = 0; k < points; ++k) {
          double th = 2.0 * kPi * k / points;
          double radius = 1.0 + 0.6 * ((k * 7919) % points) / points;
          zs.push_back(radius * Complex(std::cos(th), std::sin(th)));
        }
        results[i] = check_diagonal_bound(f, h, zs, 1e-3);
      } else {
        results[i] = check_bgap_bound(f, h, cfg.value("R", 2.0), cfg.value("d", 4));
      }
    });
    int violations = 0;
    csv << (diagonal ? "pair,z_re,z_im,left,right,margin\n" : "pair,k,l,left,right,margin\n");
    for (int i = 0; i < pairs; ++i) {
      violations += results[i].violations;
      for (const auto& row : results[i].rows) {
        if (diagonal)
          csv << i << "," << fmt(row.z.real()) << "," << fmt(row.z.imag()) << ","
              << fmt(row.left) << "," << fmt(row.right) << "," << fmt(row.margin) << "\n";
        else
          csv << i << "," << static_cast<int>(row.z.real()) << ","
              << static_cast<int>(row.z.imag()) << "," << fmt(row.left) << ","
              << fmt(row.right) << "," << fmt(row.margin) << "\n";
      }
    }
    summary["pairs"] = pairs;
    summary["violations"] = violations;
    ok = violations == 0;
  } else if (experiment == "two-domains") {
    auto report = two_domains_experiment(domain_spec_from_json(cfg.at("omega1")),
                                         domain_spec_from_json(cfg.at("omega2")),
                                         cfg.value("moment_order", 4),
                                         cfg.value("grid_n", g.grid_n));
    csv << "left_sup,integral,right_core,implied_constant,consistency_bound\n";
    csv << fmt(report.left_sup) << "," << fmt(report.integral) << ","
        << fmt(report.right_core) << "," << fmt(report.implied_constant) << ","
        << fmt(report.consistency_bound) << "\n";
    summary["degree"] = report.degree;
    summary["left_sup"] = report.left_sup;
    summary["integral"] = report.integral;
    summary["right_core"] = report.right_core;
    summary["implied_constant"] = report.implied_constant;
    summary["consistency_bound"] = report.consistency_bound;
    summary["same_weights"] = report.same_weights;
    summary["difference_bidegree"] = report.difference_bidegree;
    ok = report.implied_constant <= report.consistency_bound;
  } else if (experiment == "rational-approx") {
    auto base = std::get<DiskSpec>(domain_spec_from_json(cfg.at("base")));
    auto report = rational_approx_experiment(base, perturbation_from_json(cfg.at("perturbation")),
                                             cfg.value("R", 2.0), cfg.value("points", 32),
                                             cfg.value("grid_n", g.grid_n));
    csv << "max_left,right_core,implied_c5,l1\n";
    csv << fmt(report.max_left) << "," << fmt(report.right_core) << ","
        << fmt(report.implied_c5) << "," << fmt(report.l1) << "\n";
    summary["max_left"] = report.max_left;
    summary["right_core"] = report.right_core;
    summary["implied_c5"] = report.implied_c5;
    summary["l1"] = report.l1;
  } else {
    throw std::runtime_error("unknown experiment: " + experiment);
  }

  if (!csv_path.empty()) write_atomic(csv_path, csv.str());
  if (!json_path.empty())
    write_atomic(json_path, summary.dump(2) + "\n");
  else
    std::cout << summary.dump(2) << "\n";
  return ok ? kOk : kValidationFailure;
}

int cmd_selftest(const std::string& out_path) {
  std::ostringstream out;
  int failures = 0;
  auto check = [&](const std::string& name, bool pass, double value) {
    out << (pass ? "PASS" : "FAIL") << "  " << name << "  " << fmt(value) << "\n";
    if (!pass) ++failures;
  };

  // Disk end-to-end oracles at two centers.
  for (Complex a : {Complex(0.0, 0.0), Complex(0.2, 0.1)}) {
    const double r = 0.5;
    auto b = s_to_b(disk_moments(a, r, 3));
    double berr = 0.0;
    for (int k = 0; k <= 3; ++k)
      for (int l = 0; l <= 3; ++l)
        berr = std::max(berr, std::abs(b.b(k, l) - r * r * poly::cpow(a, k) *
                                                      poly::cpow(std::conj(a), l)));
    check("disk b-table deviation", berr < 1e-12, berr);

    auto rec = reconstruct_from_b(b);
    check("disk degeneracy degree", rec.chosen_degree == 1 && rec.minimal,
          rec.chosen_degree);
    double perr = rec.node_poly.ok ? std::abs(rec.node_poly.coeffs[0] + a) : 1.0;
    check("disk node polynomial deviation", perr < 1e-10, perr);
    double node_err = 1.0, weight_err = 1.0;
    if (rec.quadrature_extracted && rec.quadrature.data.nodes.size() == 1) {
      node_err = std::abs(rec.quadrature.data.nodes[0] - a);
      weight_err = std::abs(rec.quadrature.data.weights[0] - kPi * r * r);
    }
    check("disk node deviation", node_err < 1e-8, node_err);
    check("disk weight deviation", weight_err < 1e-8, weight_err);
  }

  // 1D: moments of [0,1] produce t = (1, 0, 0, ...).
  auto t = s_to_t(interval_moments(IntervalUnionSpec{{{0.0, 1.0}}}, 8));
  double terr = std::abs(t.t[0] - 1.0);
  for (Eigen::Index k = 1; k < t.t.size(); ++k) terr = std::max(terr, std::abs(t.t[k]));
  check("interval [0,1] t-coefficients", terr < 1e-12, terr);

  auto report = run_markov1d(interval_moments(IntervalUnionSpec{{{-0.7, -0.2}, {0.3, 0.9}}}, 8));
  double iv_err = 1.0;
  if (report.ends.ok && report.ends.intervals.intervals.size() == 2) {
    iv_err = 0.0;
    const double expect[4] = {-0.7, -0.2, 0.3, 0.9};
    int idx = 0;
    for (const auto& [lo, hi] : report.ends.intervals.intervals) {
      iv_err = std::max(iv_err, std::abs(lo - expect[idx++]));
      iv_err = std::max(iv_err, std::abs(hi - expect[idx++]));
    }
  }
  check("two-interval endpoint recovery", iv_err < 1e-9, iv_err);

  out << (failures == 0 ? "SELFTEST PASS" : "SELFTEST FAIL") << "  failures=" << failures
      << "\n";
  emit(out_path, out.str());
  return failures == 0 ? kOk : kValidationFailure;
}

}  // namespace

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"momentshape: shape reconstruction from truncated moment data"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  GlobalOptions global;
  app.add_option("--seed", global.seed, "deterministic seed")->capture_default_str();
  app.add_option("--grid-n", global.grid_n, "grid resolution")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--tol", global.tol, "relative eigenvalue tolerance")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  // moments
  auto* moments = app.add_subcommand("moments", "forward moments of a domain spec");
  std::string spec_path, out_path, backend = "closed";
  int order = 4;
  moments->add_option("--spec", spec_path, "domain spec JSON")->required();
  moments->add_option("--d", order, "moment order")->required();
  moments->add_option("--backend", backend, "closed | grid")
      ->check(CLI::IsMember({"closed", "grid"}));
  moments->add_option("--out", out_path, "output path (default stdout)");

  // exptransform
  auto* expt = app.add_subcommand("exptransform", "moment table to exponential coefficients");
  std::string expt_in, expt_out;
  expt->add_option("--in", expt_in, "MomentTable JSON")->required();
  expt->add_option("--out", expt_out, "output path (default stdout)");

  // reconstruct
  auto* rec = app.add_subcommand("reconstruct", "shape reconstruction from moments or b-table");
  std::string rec_in, rec_out, rec_mode = "auto", levelset_csv;
  int max_degree = -1, levelset_n = 101;
  double levelset_r = 1.5;
  rec->add_option("--in", rec_in, "MomentTable or ExpCoeffTable JSON")->required();
  rec->add_option("--out", rec_out, "report output path (default stdout)");
  rec->add_option("--max-degree", max_degree, "cap on the degeneracy search");
  rec->add_option("--mode", rec_mode, "null | lowest | auto")
      ->check(CLI::IsMember({"null", "lowest", "auto"}));
  rec->add_option("--levelset-csv", levelset_csv, "boundary level-set CSV path");
  rec->add_option("--levelset-n", levelset_n, "level-set grid resolution");
  rec->add_option("--levelset-box", levelset_r, "level-set half box size");

  // markov1d
  auto* mk = app.add_subcommand("markov1d", "1D interval recovery pipeline");
  std::string mk_in, mk_out;
  mk->add_option("--in", mk_in, "{\"intervals\":[...]} or {\"s\":[...]} JSON")->required();
  mk->add_option("--out", mk_out, "report output path (default stdout)");

  // volume
  auto* vol = app.add_subcommand("volume", "sublevel-set volume ratios");
  std::string vol_poly, vol_out;
  std::vector<double> delta_grid{1e-2, 1e-3, 1e-4, 1e-5};
  long long samples = 1000000;
  double vol_r = 1.0;
  vol->add_option("--poly", vol_poly, "polynomial JSON")->required();
  vol->add_option("--delta-grid", delta_grid, "delta values (descending)")
      ->delimiter(',');
  vol->add_option("--samples", samples, "Monte Carlo samples per delta");
  vol->add_option("--r", vol_r, "half side of the sampling cube");
  vol->add_option("--out", vol_out, "CSV output path (default stdout)");

  // stability
  auto* stab = app.add_subcommand("stability", "inequality experiment harness");
  std::string stab_cfg, stab_csv, stab_json;
  stab->add_option("--config", stab_cfg, "experiment config JSON")->required();
  stab->add_option("--out-csv", stab_csv, "records CSV path");
  stab->add_option("--out-json", stab_json, "summary JSON path (default stdout)");

  // selftest
  auto* self = app.add_subcommand("selftest", "deterministic end-to-end oracle suite");
  std::string self_out;
  self->add_option("--out", self_out, "output path (default stdout)");

  std::vector<const char*> argv;
  argv.push_back("momentshape");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (moments->parsed()) return cmd_moments(spec_path, order, backend, global, out_path);
    if (expt->parsed()) return cmd_exptransform(expt_in, expt_out);
    if (rec->parsed()) {
      ReconstructOptions opt;
      opt.tol = global.tol;
      opt.max_degree = max_degree;
      if (rec_mode == "null") opt.mode = NodeMode::kNullVector;
      if (rec_mode == "lowest") opt.mode = NodeMode::kLowestEigen;
      return cmd_reconstruct(rec_in, opt, rec_out, levelset_csv, levelset_n, levelset_r);
    }
    if (mk->parsed()) return cmd_markov1d(mk_in, global.tol, mk_out);
    if (vol->parsed()) return cmd_volume(vol_poly, delta_grid, samples, vol_r, global, vol_out);
    if (stab->parsed()) return cmd_stability(stab_cfg, global, stab_csv, stab_json);
    if (self->parsed()) return cmd_selftest(self_out);
  } catch (const Json::parse_error& e) {
    std::cerr << "momentshape: malformed JSON: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "momentshape: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const std::exception& e) {
    std::cerr << "momentshape: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace momentshape

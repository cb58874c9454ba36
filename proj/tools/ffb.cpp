// Command line front end: transforms, trend filtering, higher order KS
// tests, the simulation harness, and the runtime benchmark, over CSV and
// JSON files.
//
// Exit codes: 0 success, 1 computational failure, 2 usage error,
// 3 I/O or format error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ffb/ffb.hpp"

namespace {

using nlohmann::json;

struct UsageError : ffb::Error {
  using ffb::Error::Error;
};

ffb::InputGrid load_grid(const std::string& path) {
  return ffb::InputGrid::from_values(ffb::read_csv_column(path));
}

int run_transform(const std::string& op, int k, const std::string& x_path,
                  const std::string& y_path, const std::string& out_path) {
  const ffb::InputGrid grid = load_grid(x_path);
  std::vector<double> y = ffb::read_csv_column(y_path);
  if (op == "h") {
    ffb::apply_h(y, grid, k);
  } else if (op == "hinv") {
    ffb::apply_h_inverse(y, grid, k);
  } else if (op == "ht") {
    ffb::apply_h_transpose(y, grid, k);
  } else if (op == "htinv") {
    ffb::apply_h_transpose_inverse(y, grid, k);
  } else {
    throw UsageError("transform: unknown --op " + op);
  }
  ffb::write_csv_column(out_path, y);
  ffb::JsonWriter w;
  w.begin_object().field("op", op).field("k", k).field("n", y.size()).end_object();
  std::cout << w.str() << "\n";
  return 0;
}

int run_trendfilter(int k, const std::string& data_path, double lambda, int nlambda,
                    bool has_lambda, bool rescale, int max_iter, double tol_rel,
                    const std::string& out_path) {
  auto cols = ffb::read_csv_columns(data_path, 2);
  ffb::InputGrid grid = ffb::InputGrid::from_values(cols[0]);
  std::vector<double>& y = cols[1];
  if (rescale) grid = ffb::rescale_unit(grid);

  ffb::SolverConfig cfg;
  cfg.max_iter = max_iter;
  cfg.tol_rel = tol_rel;

  if (has_lambda) {
    ffb::TrendFilterProblem prob{y, grid, k, lambda};
    const ffb::TrendFilterFit f = ffb::fit(prob, cfg);
    std::string csv = "x,y,fitted\n";
    for (std::size_t i = 0; i < y.size(); ++i)
      csv += ffb::fmt_g17(grid[i]) + "," + ffb::fmt_g17(y[i]) + "," +
             ffb::fmt_g17(f.beta[i]) + "\n";
    ffb::write_text_file(out_path, csv);
    ffb::JsonWriter w;
    w.begin_object()
        .field("k", k)
        .field("lambda", lambda)
        .field("objective", f.objective)
        .field("iterations", f.iterations)
        .field("converged", f.converged)
        .field("kkt_residual", ffb::kkt_residual(f, prob))
        .end_object();
    std::cout << w.str() << "\n";
    if (!f.converged) {
      std::cerr << "trendfilter: solver did not converge\n";
      return 1;
    }
    return 0;
  }

  const double lmax = ffb::lambda_max(y, grid, k);
  const std::vector<double> path = ffb::default_lambda_path(lmax, nlambda);
  const std::vector<ffb::TrendFilterFit> fits = ffb::fit_path(y, grid, k, path, cfg);
  std::string csv = "lambda,x,y,fitted\n";
  for (std::size_t j = 0; j < fits.size(); ++j)
    for (std::size_t i = 0; i < y.size(); ++i)
      csv += ffb::fmt_g17(path[j]) + "," + ffb::fmt_g17(grid[i]) + "," +
             ffb::fmt_g17(y[i]) + "," + ffb::fmt_g17(fits[j].beta[i]) + "\n";
  ffb::write_text_file(out_path, csv);

  bool all_converged = true;
  ffb::JsonWriter w;
  w.begin_object().field("k", k).field("nlambda", nlambda).field("lambda_max", lmax);
  w.begin_array("fits");
  for (std::size_t j = 0; j < fits.size(); ++j) {
    w.begin_object()
        .field("lambda", path[j])
        .field("objective", fits[j].objective)
        .field("iterations", fits[j].iterations)
        .field("converged", fits[j].converged)
        .end_object();
    all_converged = all_converged && fits[j].converged;
  }
  w.end_array().end_object();
  std::cout << w.str() << "\n";
  if (!all_converged) {
    std::cerr << "trendfilter: at least one path point did not converge\n";
    return 1;
  }
  return 0;
}

int run_kstest(int k, const std::string& method, const std::string& x_path,
               const std::string& y_path, int permutations, std::uint64_t seed,
               bool seed_given, bool no_rescale, double jitter_eps,
               const std::string& out_path) {
  const std::vector<double> xs = ffb::read_csv_column(x_path);
  const std::vector<double> ys = ffb::read_csv_column(y_path);
  const ffb::TiePolicy policy = (jitter_eps > 0.0)
                                    ? ffb::TiePolicy::jitter(jitter_eps, seed)
                                    : ffb::TiePolicy::reject();
  const ffb::TwoSample joined = ffb::join_samples(xs, ys, policy);
  const ffb::KsMethod m = (method == "g") ? ffb::KsMethod::g : ffb::KsMethod::h;
  ffb::KsOptions opt;
  opt.rescale_unit = !no_rescale;

  ffb::KsResult res;
  if (permutations > 0) {
    res = ffb::permutation_pvalue(joined, k, m, permutations, seed, opt);
  } else {
    res = ffb::ks_statistic(joined, k, m, opt);
  }

  ffb::JsonWriter w;
  w.begin_object()
      .field("statistic", res.statistic)
      .field("k", res.order)
      .field("method", ffb::method_name(res.method));
  if (res.pvalue)
    w.field("pvalue", *res.pvalue);
  else
    w.null_field("pvalue");
  w.field("m", joined.m).field("n", joined.n);
  if (seed_given || permutations > 0)
    w.field("seed", seed);
  else
    w.null_field("seed");
  w.end_object();
  ffb::write_text_file(out_path, w.str() + "\n");
  std::cout << w.str() << "\n";
  return 0;
}

ffb::Distribution parse_distribution(const json& j) {
  if (!j.is_object() || !j.contains("dist"))
    throw ffb::FormatError("spec: distribution needs a \"dist\" field");
  const std::string d = j["dist"].get<std::string>();
  if (d == "normal")
    return ffb::Distribution::normal(j.value("mu", 0.0), j.value("sigma", 1.0));
  if (d == "student_t" || d == "t") return ffb::Distribution::student_t(j.value("df", 3));
  if (d == "laplace")
    return ffb::Distribution::laplace(j.value("mu", 0.0), j.value("b", 1.0));
  if (d == "uniform")
    return ffb::Distribution::uniform(j.value("a", 0.0), j.value("b", 1.0));
  throw ffb::FormatError("spec: unknown distribution " + d);
}

json load_spec(const std::string& path) {
  try {
    return json::parse(ffb::read_text_file(path));
  } catch (const json::parse_error& e) {
    throw ffb::FormatError(std::string("spec: ") + e.what());
  }
}

int run_simulate(const std::string& kind, const std::string& spec_path,
                 const std::string& out_dir) {
  const json spec = load_spec(spec_path);
  std::filesystem::create_directories(out_dir);
  const auto out = [&](const std::string& name) { return out_dir + "/" + name; };

  if (kind == "maxgap") {
    std::vector<int> n_list;
    if (spec.contains("n_list"))
      n_list = spec["n_list"].get<std::vector<int>>();
    else if (spec.contains("n"))
      n_list.push_back(spec["n"].get<int>());
    else
      throw ffb::FormatError("maxgap spec: need n or n_list");
    const int trials = spec.value("trials", 200);
    const double p0 = spec.value("density_floor", 1.0);
    const std::uint64_t seed = spec.value("seed", 1ULL);
    std::vector<ffb::MaxGapResult> results;
    for (int n : n_list) results.push_back(ffb::simulate_max_gap(n, p0, trials, seed));
    ffb::write_text_file(out("maxgap.csv"), ffb::maxgap_csv(results));
    ffb::write_text_file(out("maxgap_summary.json"), ffb::maxgap_json(results) + "\n");
    std::cout << ffb::maxgap_json(results) << "\n";
    return 0;
  }

  if (kind == "tfrate") {
    ffb::TfRateSpec s;
    if (!spec.contains("k") || !spec.contains("n_list"))
      throw ffb::FormatError("tfrate spec: need k and n_list");
    s.k = spec["k"].get<int>();
    s.n_list = spec["n_list"].get<std::vector<int>>();
    s.reps = spec.value("reps", 20);
    s.sigma = spec.value("sigma", 0.25);
    s.seed = spec.value("seed", 1ULL);
    s.calib_points = spec.value("calib_points", 13);
    s.lambda_constant = spec.value("lambda_constant", 0.0);
    const ffb::TfRateResult r = ffb::simulate_tf_rate(s);
    ffb::write_text_file(out("tfrate.csv"), ffb::tfrate_csv(r));
    ffb::write_text_file(out("tfrate_summary.json"), ffb::tfrate_json(r) + "\n");
    std::cout << ffb::tfrate_json(r) << "\n";
    return 0;
  }

  if (kind == "roc") {
    ffb::RocSpec s;
    if (!spec.contains("p") || !spec.contains("q"))
      throw ffb::FormatError("roc spec: need p and q distributions");
    s.name = spec.value("name", "roc");
    s.p = parse_distribution(spec["p"]);
    s.q = parse_distribution(spec["q"]);
    s.n = spec.value("n", 100);
    s.reps = spec.value("reps", 200);
    if (spec.contains("k_list")) s.k_list = spec["k_list"].get<std::vector<int>>();
    if (spec.contains("methods")) {
      s.methods.clear();
      for (const auto& m : spec["methods"]) {
        const std::string name = m.get<std::string>();
        if (name == "h")
          s.methods.push_back(ffb::KsMethod::h);
        else if (name == "g")
          s.methods.push_back(ffb::KsMethod::g);
        else
          throw ffb::FormatError("roc spec: unknown method " + name);
      }
    }
    s.seed = spec.value("seed", 1ULL);
    const ffb::RocTable t = ffb::simulate_roc(s);
    ffb::write_text_file(out("roc_stats.csv"), ffb::roc_stats_csv(t));
    ffb::write_text_file(out("roc_curve.csv"), ffb::roc_curve_csv(t));
    ffb::write_text_file(out("roc_summary.json"), ffb::roc_json(t) + "\n");
    std::cout << ffb::roc_json(t) << "\n";
    return 0;
  }

  throw UsageError("simulate: unknown kind " + kind);
}

int run_bench(int k, int nmax, int reps, const std::string& out_path) {
  if (nmax < 256) throw UsageError("bench: --nmax must be >= 256");
  std::vector<int> n_list;
  for (int n = 256; n <= nmax; n *= 2) n_list.push_back(n);
  const auto rows = ffb::bench_transforms(n_list, k, reps);
  ffb::write_text_file(out_path, ffb::bench_csv(rows));
  std::cout << ffb::bench_csv(rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"falling factorial basis toolkit"};
  app.require_subcommand(1);

  // transform
  auto* t = app.add_subcommand("transform", "apply a fast basis transform to a vector");
  std::string t_op, t_x, t_y, t_out;
  int t_k = 0;
  t->add_option("--op", t_op, "h | hinv | ht | htinv")->required();
  t->add_option("--k", t_k, "polynomial order")->required();
  t->add_option("--x", t_x, "grid points CSV (one column)")->required();
  t->add_option("--y", t_y, "vector CSV (one column)")->required();
  t->add_option("--out", t_out, "output CSV")->required();

  // trendfilter
  auto* tf = app.add_subcommand("trendfilter", "fit trend filtering estimates");
  std::string tf_data, tf_out;
  int tf_k = 0, tf_nlambda = 0, tf_max_iter = 5000;
  double tf_lambda = -1.0, tf_tol_rel = 1e-6;
  bool tf_rescale = false;
  tf->add_option("--k", tf_k, "polynomial order")->required();
  tf->add_option("--data", tf_data, "two-column CSV of x,y")->required();
  auto* lam_opt = tf->add_option("--lambda", tf_lambda, "penalty level");
  auto* nlam_opt = tf->add_option("--nlambda", tf_nlambda, "path length");
  tf->add_option("--out", tf_out, "output CSV")->required();
  tf->add_flag("--rescale", tf_rescale, "rescale inputs to [0,1] first");
  tf->add_option("--max-iter", tf_max_iter, "iteration cap");
  tf->add_option("--tol-rel", tf_tol_rel, "relative stopping tolerance");

  // kstest
  auto* ks = app.add_subcommand("kstest", "two-sample KS test of order k");
  std::string ks_x, ks_y, ks_out, ks_method = "h";
  int ks_k = 0, ks_perm = 0;
  std::uint64_t ks_seed = 0;
  bool ks_norescale = false;
  double ks_jitter = 0.0;
  ks->add_option("--k", ks_k, "test order")->required();
  ks->add_option("--method", ks_method, "h | g");
  ks->add_option("--x", ks_x, "first sample CSV (one column)")->required();
  ks->add_option("--y", ks_y, "second sample CSV (one column)")->required();
  ks->add_option("--permutations", ks_perm, "permutation count for the p-value");
  auto* seed_opt = ks->add_option("--seed", ks_seed, "permutation seed");
  ks->add_flag("--no-rescale", ks_norescale, "skip the joint [0,1] rescale for k >= 1");
  ks->add_option("--jitter", ks_jitter, "break ties with perturbations of this size");
  ks->add_option("--out", ks_out, "output JSON")->required();

  // simulate
  auto* sim = app.add_subcommand("simulate", "run a simulation experiment");
  std::string sim_kind, sim_spec, sim_out;
  sim->add_option("kind", sim_kind, "maxgap | tfrate | roc")->required();
  sim->add_option("--spec", sim_spec, "experiment spec JSON")->required();
  sim->add_option("--out", sim_out, "output directory")->required();

  // bench
  auto* be = app.add_subcommand("bench", "time transform cycles");
  std::string be_out;
  int be_k = 3, be_nmax = 4096, be_reps = 5;
  be->add_option("--k", be_k, "polynomial order");
  be->add_option("--nmax", be_nmax, "largest size (doubling from 256)");
  be->add_option("--reps", be_reps, "median over this many runs");
  be->add_option("--out", be_out, "output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return 2;
  }

  try {
    if (t->parsed()) return run_transform(t_op, t_k, t_x, t_y, t_out);
    if (tf->parsed()) {
      const bool has_lambda = lam_opt->count() > 0;
      const bool has_nlambda = nlam_opt->count() > 0;
      if (has_lambda == has_nlambda)
        throw UsageError("trendfilter: pass exactly one of --lambda or --nlambda");
      if (has_lambda && tf_lambda < 0.0) throw UsageError("trendfilter: lambda must be >= 0");
      if (has_nlambda && tf_nlambda < 1) throw UsageError("trendfilter: nlambda must be >= 1");
      return run_trendfilter(tf_k, tf_data, tf_lambda, tf_nlambda, has_lambda, tf_rescale,
                             tf_max_iter, tf_tol_rel, tf_out);
    }
    if (ks->parsed()) {
      if (ks_method != "h" && ks_method != "g")
        throw UsageError("kstest: --method must be h or g");
      if (ks_perm < 0) throw UsageError("kstest: --permutations must be >= 0");
      return run_kstest(ks_k, ks_method, ks_x, ks_y, ks_perm, ks_seed,
                        seed_opt->count() > 0, ks_norescale, ks_jitter, ks_out);
    }
    if (sim->parsed()) return run_simulate(sim_kind, sim_spec, sim_out);
    if (be->parsed()) return run_bench(be_k, be_nmax, be_reps, be_out);
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const ffb::InvalidOrderError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const ffb::NotConvergedError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const ffb::IoError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const ffb::FormatError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const ffb::TiesPresentError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const ffb::NonFiniteError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const ffb::EmptyInputError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const ffb::TooFewPointsError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const ffb::LengthMismatchError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const ffb::DimensionMismatchError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const ffb::DegenerateRangeError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const ffb::SizeCapError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const ffb::Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}

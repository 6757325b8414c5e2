// Copyright 2026 The freelln Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "freelln/family.hpp"
#include "freelln/io.hpp"
#include "freelln/limit_law.hpp"
#include "freelln/measure.hpp"
#include "freelln/rmt.hpp"
#include "freelln/transforms.hpp"
#include "freelln/verify.hpp"

namespace {

using namespace freelln;

struct CommonOpts {
  double alpha = -1.0;
  double beta = -1.0;
  std::string measure_path;
  std::string out_path;
  std::string format = "csv";
};

struct OutputSink {
  std::unique_ptr<std::ofstream> file;
  std::ostream* stream = &std::cout;

  explicit OutputSink(const std::string& path) {
    if (!path.empty()) {
      file = std::make_unique<std::ofstream>(path);
      if (!*file) throw std::runtime_error("cannot open output file: " + path);
      stream = file.get();
    }
  }
};

bool has_family(const CommonOpts& o) { return o.alpha >= 0.0 && o.beta >= 0.0; }

FamilyParams family_of(const CommonOpts& o) { return {o.alpha, o.beta}; }

// Either --alpha/--beta or --measure <json>; family delegation inside the
// JSON is honored.
MeasureSpec resolve_measure(const CommonOpts& o) {
  if (has_family(o)) {
    MeasureSpec spec;
    spec.family = family_of(o);
    spec.measure = family_measure(*spec.family);
    return spec;
  }
  if (!o.measure_path.empty()) return measure_from_json_file(o.measure_path);
  throw std::invalid_argument("need either --alpha/--beta or --measure");
}

STransform resolve_transform(const MeasureSpec& spec) {
  if (spec.family) return family_stransform(*spec.family);
  return STransform::from_measure(spec.measure);
}

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--alpha", o.alpha, "family parameter alpha (>= 0)");
  cmd->add_option("--beta", o.beta, "family parameter beta (>= 0)");
  cmd->add_option("--measure", o.measure_path, "path to a measure JSON file");
  cmd->add_option("--out", o.out_path, "output path (default: stdout)");
  cmd->add_option("--format", o.format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
}

void emit_table(const CommonOpts& o, const std::string& xname,
                const std::string& yname, const std::vector<double>& xs,
                const std::vector<double>& ys) {
  OutputSink sink(o.out_path);
  if (o.format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < xs.size(); ++i)
      rows.push_back({{xname, xs[i]}, {yname, ys[i]}});
    *sink.stream << rows.dump(2) << "\n";
    return;
  }
  *sink.stream << xname << "," << yname << "\n";
  for (std::size_t i = 0; i < xs.size(); ++i)
    *sink.stream << fmt_g17(xs[i]) << "," << fmt_g17(ys[i]) << "\n";
}

std::vector<double> linear_grid(double lo, double hi, int points) {
  if (points < 2) throw std::invalid_argument("--points must be >= 2");
  std::vector<double> xs(points);
  for (int i = 0; i < points; ++i) xs[i] = lo + (hi - lo) * i / (points - 1.0);
  return xs;
}

int run_density(const CommonOpts& o, double xmin, double xmax, int points) {
  if (!has_family(o))
    throw std::invalid_argument("density requires --alpha/--beta (closed-form family only)");
  const FamilyParams p = family_of(o);
  std::vector<double> xs = linear_grid(xmin, xmax, points), fs;
  fs.reserve(xs.size());
  for (double x : xs) fs.push_back(family_density(p, x));
  emit_table(o, "x", "f", xs, fs);
  return 0;
}

int run_cdf_limit(const CommonOpts& o, double xmin, double xmax, int points) {
  const MeasureSpec spec = resolve_measure(o);
  std::vector<double> xs = linear_grid(xmin, xmax, points), fs;
  fs.reserve(xs.size());
  if (spec.family && !(spec.family->alpha == 0.0 && spec.family->beta == 0.0)) {
    for (double x : xs) fs.push_back(family_limit_cdf(*spec.family, x));
  } else {
    const LimitLaw ll(resolve_transform(spec));
    for (double x : xs) fs.push_back(ll.cdf(x));
  }
  emit_table(o, "x", "F", xs, fs);
  return 0;
}

int run_transforms(const CommonOpts& o, int points) {
  const MeasureSpec spec = resolve_measure(o);
  const STransform st = resolve_transform(spec);
  const double z_lo = st.delta() - 1.0 + 1e-6;
  const double z_hi = -1e-6;
  OutputSink sink(o.out_path);
  std::vector<double> zs = linear_grid(z_lo, z_hi, points);
  if (o.format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (double z : zs) {
      const double s = st(z);
      rows.push_back({{"z", z}, {"chi", z / (z + 1.0) * s}, {"s", s}});
    }
    *sink.stream << rows.dump(2) << "\n";
    return 0;
  }
  *sink.stream << "z,chi,s\n";
  for (double z : zs) {
    const double s = st(z);
    *sink.stream << fmt_g17(z) << "," << fmt_g17(z / (z + 1.0) * s) << ","
                 << fmt_g17(s) << "\n";
  }
  return 0;
}

int run_moments(const CommonOpts& o, double gamma) {
  const MeasureSpec spec = resolve_measure(o);
  double value;
  if (spec.family)
    value = family_moment(*spec.family, gamma);
  else
    value = fractional_moment(resolve_transform(spec), gamma);
  OutputSink sink(o.out_path);
  if (o.format == "json") {
    *sink.stream << nlohmann::json{{"gamma", gamma}, {"moment", value}}.dump(2) << "\n";
  } else {
    *sink.stream << "gamma,moment\n"
                 << fmt_g17(gamma) << "," << fmt_g17(value) << "\n";
  }
  return 0;
}

int run_logstats(const CommonOpts& o, std::optional<double> nfold) {
  const MeasureSpec spec = resolve_measure(o);
  const STransform st = resolve_transform(spec);
  const LogMoments lm = log_moments(st);
  OutputSink sink(o.out_path);
  nlohmann::json j{{"log_mean", lm.mean_ln},
                   {"rho", lm.rho},
                   {"var_mu", lm.var_mu},
                   {"var_nu", lm.var_nu}};
  if (nfold) j["nfold_var"] = nfold_log_variance(st, *nfold);
  if (o.format == "json") {
    *sink.stream << j.dump(2) << "\n";
    return 0;
  }
  *sink.stream << "stat,value\n";
  for (const char* key : {"log_mean", "rho", "var_mu", "var_nu", "nfold_var"})
    if (j.contains(key))
      *sink.stream << key << "," << fmt_g17(j[key].get<double>()) << "\n";
  return 0;
}

int run_mc_product(const CommonOpts& o, int n, int dim, int trials,
                   std::uint64_t seed) {
  const MeasureSpec spec = resolve_measure(o);
  McConfig cfg;
  cfg.dim = dim;
  cfg.n_factors = n;
  cfg.trials = trials;
  cfg.seed = seed;
  if (spec.family)
    cfg.source = *spec.family;
  else
    cfg.source = spec.measure;

  OutputSink sink(o.out_path);
  if (o.format == "csv") {
    // one row per eigenvalue
    *sink.stream << "trial,index,value\n";
    for (int t = 0; t < trials; ++t) {
      const SpectralSample s = product_spectrum(cfg, t);
      for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
        *sink.stream << t << "," << i << "," << fmt_g17(s.eigenvalues[i]) << "\n";
    }
    return 0;
  }
  const STransform st = resolve_transform(spec);
  const LimitLaw ll(st);
  const ConvergenceReport rep =
      lln_convergence_report(cfg, [&](double x) { return ll.cdf(x); }, &st);
  nlohmann::json j = to_json(rep);
  j["tool"] = "freelln";
  j["version"] = kVersion;
  *sink.stream << j.dump(2) << "\n";
  return 0;
}

int run_verify(const CommonOpts& o, const std::string& suite, std::uint64_t seed) {
  const std::vector<Check> checks = verify_suite(suite, seed);
  nlohmann::json jchecks = nlohmann::json::array();
  bool all_pass = true;
  for (const Check& c : checks) {
    jchecks.push_back({{"name", c.name},
                       {"theorem_tag", c.theorem_tag},
                       {"value", c.value},
                       {"tolerance", c.tolerance},
                       {"pass", c.pass}});
    all_pass = all_pass && c.pass;
  }
  nlohmann::json report{{"tool", "freelln"},
                        {"version", kVersion},
                        {"suite", suite},
                        {"seed", seed},
                        {"checks", jchecks},
                        {"pass", all_pass}};
  OutputSink sink(o.out_path);
  *sink.stream << report.dump(2) << "\n";
  if (!all_pass) {
    for (const Check& c : checks)
      if (!c.pass)
        std::cerr << "FAILED " << c.theorem_tag << "/" << c.name
                  << " value=" << fmt_g17(c.value)
                  << " tolerance=" << fmt_g17(c.tolerance) << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* panels = std::getenv("FREELLN_PANELS")) {
    const int p = std::atoi(panels);
    if (p >= 1) freelln::default_panel_count() = p;
  }

  CLI::App app{"freelln: numerical toolkit for the free multiplicative law of large numbers"};
  app.require_subcommand(1);

  CommonOpts od, oc, ot, om, ol, omc, ov;
  double xmin = 0.1, xmax = 10.0;
  double cmin = 0.01, cmax = 10.0;
  int points_d = 100, points_c = 100, points_t = 100;
  double gamma = 0.5;
  double nfold_n = -1.0;
  int mc_n = 8, mc_dim = 256, mc_trials = 10;
  std::uint64_t mc_seed = 0, v_seed = 0;
  std::string suite = "all";

  CLI::App* density = app.add_subcommand("density", "density of a family member on a grid");
  add_common(density, od);
  density->add_option("--xmin", xmin, "left end of the grid");
  density->add_option("--xmax", xmax, "right end of the grid");
  density->add_option("--points", points_d, "number of grid points");

  CLI::App* cdf = app.add_subcommand("cdf-limit", "limit-law CDF on a grid");
  add_common(cdf, oc);
  cdf->add_option("--xmin", cmin, "left end of the grid");
  cdf->add_option("--xmax", cmax, "right end of the grid");
  cdf->add_option("--points", points_c, "number of grid points");

  CLI::App* tr = app.add_subcommand("transforms", "chi and S on a z-grid");
  add_common(tr, ot);
  tr->add_option("--points", points_t, "number of grid points");

  CLI::App* mo = app.add_subcommand("moments", "fractional moment of the source");
  add_common(mo, om);
  mo->add_option("--gamma", gamma, "moment exponent");

  CLI::App* ls = app.add_subcommand("logstats", "log mean, rho and log variances");
  add_common(ls, ol);
  ls->add_option("--n", nfold_n, "also report the n-fold log variance");

  CLI::App* mc = app.add_subcommand("mc-product",
                                    "random-matrix product spectra (csv) or report (json)");
  add_common(mc, omc);
  mc->add_option("--n", mc_n, "number of factors");
  mc->add_option("--dim", mc_dim, "matrix dimension");
  mc->add_option("--trials", mc_trials, "number of trials");
  mc->add_option("--seed", mc_seed, "random seed");

  CLI::App* ve = app.add_subcommand("verify", "run a verification suite");
  add_common(ve, ov);
  ve->add_option("--suite", suite, "transforms, limitlaw, family, mc, or all")
      ->check(CLI::IsMember({"transforms", "limitlaw", "family", "mc", "all"}));
  ve->add_option("--seed", v_seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 64;
  }

  try {
    if (density->parsed()) return run_density(od, xmin, xmax, points_d);
    if (cdf->parsed()) return run_cdf_limit(oc, cmin, cmax, points_c);
    if (tr->parsed()) return run_transforms(ot, points_t);
    if (mo->parsed()) return run_moments(om, gamma);
    if (ls->parsed())
      return run_logstats(ol, nfold_n > 0.0 ? std::optional<double>(nfold_n)
                                            : std::nullopt);
    if (mc->parsed()) return run_mc_product(omc, mc_n, mc_dim, mc_trials, mc_seed);
    if (ve->parsed()) return run_verify(ov, suite, v_seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

// regretlab: workbench CLI for norm-constrained online logistic prediction.
//
// Subcommands: run, bounds, distinguish, capacity, sweep. Every artifact is a
// pure function of the flag set; REGRETLAB_THREADS caps the worker count
// without changing any output byte.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "regretlab/adversary.hpp"
#include "regretlab/baselines.hpp"
#include "regretlab/bounds.hpp"
#include "regretlab/comparator.hpp"
#include "regretlab/grid.hpp"
#include "regretlab/kernels.hpp"
#include "regretlab/logistic.hpp"
#include "regretlab/mixture.hpp"
#include "regretlab/rng.hpp"
#include "regretlab/trace_io.hpp"
#include "regretlab/types.hpp"

using nlohmann::json;
using namespace regretlab;

namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

ParamVector sample_ball(const NormConstraint& c, int d, Rng& rng) {
  const double B = c.radius;
  ParamVector theta(static_cast<std::size_t>(d), 0.0);
  switch (c.norm) {
    case Norm::linf:
      for (auto& v : theta) v = B * (2.0 * rng.next_unit() - 1.0);
      break;
    case Norm::l2: {
      double nrm = 0.0;
      for (auto& v : theta) {
        v = rng.next_gaussian();
        nrm += v * v;
      }
      nrm = std::sqrt(nrm);
      const double r = B * std::pow(rng.next_unit(), 1.0 / d);
      if (nrm > 0.0) {
        for (auto& v : theta) v *= r / nrm;
      }
      break;
    }
    case Norm::l1: {
      double total = 0.0;
      for (auto& v : theta) {
        double u = rng.next_unit();
        while (u <= 0.0) u = rng.next_unit();
        v = -std::log(u);
        total += v;
      }
      const double r = B * std::pow(rng.next_unit(), 1.0 / d);
      for (auto& v : theta) {
        const bool neg = rng.next_unit() < 0.5;
        v = (neg ? -1.0 : 1.0) * v * r / total;
      }
      break;
    }
  }
  return theta;
}

std::vector<LabeledExample> synthetic_instance(const ParamVector& theta, int d,
                                               std::int64_t T, Rng& rng) {
  std::vector<LabeledExample> seq;
  seq.reserve(static_cast<std::size_t>(T));
  for (std::int64_t t = 0; t < T; ++t) {
    std::vector<double> x(static_cast<std::size_t>(d));
    for (auto& v : x) v = 2.0 * rng.next_unit() - 1.0;
    const double p = sigmoid(dot(theta, x));
    const int y = rng.next_unit() < p ? 1 : -1;
    seq.emplace_back(std::move(x), y);
  }
  return seq;
}

struct RunOptions {
  std::string alg = "grid-mixture";
  std::string norm = "l2";
  double B = 1.0;
  int d = 1;
  std::int64_t T = 16;
  double spacing = 0.0;  // 0 means default 4/sqrt(T)
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
};

int do_run(const RunOptions& opt) {
  if (opt.T < 1) throw std::invalid_argument("T must be >= 1");
  if (opt.d < 1) throw std::invalid_argument("d must be >= 1");
  const NormConstraint c{parse_norm(opt.norm), opt.B};
  validate_constraint(c);
  const TraceFormat tf = opt.format == "json" ? TraceFormat::json : TraceFormat::csv;
  const std::string out_path =
      opt.out.empty() ? (tf == TraceFormat::csv ? "trace.csv" : "trace.json") : opt.out;

  Rng rng(opt.seed);
  const ParamVector theta_true = sample_ball(c, opt.d, rng);
  const auto seq = synthetic_instance(theta_true, opt.d, opt.T, rng);
  const double eps = opt.spacing > 0.0 ? opt.spacing : default_spacing(opt.T);

  RegretTrace trace;
  json summary;
  summary["final_regret"] = nullptr;
  summary["comparator_loss"] = nullptr;
  summary["theorem2_bound"] = nullptr;
  summary["upper_bound_formula"] = nullptr;

  const BoundQuery query{opt.d, static_cast<double>(opt.T), opt.B, c.norm, 0.0, true};

  if (opt.alg == "grid-mixture" || opt.alg == "gauss-mixture") {
    const ParamGrid grid = build_grid(opt.d, c, eps);
    PriorSpec prior = PriorSpec::Uniform();
    if (opt.alg == "gauss-mixture") {
      const double nu_sq = gaussian_prior_variance(c, opt.d);
      prior = PriorSpec::QuantizedGaussian(nu_sq);
      // Quantization acceptance rule: halving the lattice step must leave the
      // first-round prediction essentially unchanged.
      const ParamGrid fine = build_grid(opt.d, c, eps / 2.0);
      const auto p0 = init_posterior(grid, prior);
      const auto p1 = init_posterior(fine, prior);
      const double a = mixture_predict(p0, grid, seq[0].features);
      const double b = mixture_predict(p1, fine, seq[0].features);
      if (std::fabs(a - b) >= 1e-3) {
        throw std::runtime_error("quantized prior not converged: halving the spacing "
                                 "moves the round-1 prediction by " +
                                 std::to_string(std::fabs(a - b)));
      }
    }
    const ComparatorResult comp = best_comparator(seq, c);
    RunResult rr = run_online(grid, prior, seq, comp.theta_star);
    trace = std::move(rr.trace);
    summary["final_regret"] = trace.final_regret();
    summary["comparator_loss"] = comp.loss;
    summary["comparator_converged"] = comp.converged;
    if (opt.alg == "grid-mixture") {
      summary["theorem2_bound"] =
          grid_mixture_regret_bound(grid.size(), opt.d, static_cast<double>(opt.T), eps);
    }
    summary["upper_bound_formula"] = upper_bound(query).nats;
    summary["grid_cardinality_M"] = grid.size();
  } else if (opt.alg == "kt") {
    std::vector<int> labels;
    labels.reserve(seq.size());
    for (const auto& ex : seq) labels.push_back(ex.label);
    trace = kt_run(labels);
    summary["final_regret"] = trace.final_regret();
    summary["comparator_loss"] = trace.total_comparator_loss();
  } else if (opt.alg == "ogd") {
    const ComparatorResult comp = best_comparator(seq, c);
    trace = ogd_run(seq, c, inverse_sqrt_schedule(), comp.theta_star);
    summary["final_regret"] = trace.final_regret();
    summary["comparator_loss"] = comp.loss;
    summary["comparator_converged"] = comp.converged;
    summary["upper_bound_formula"] = upper_bound(query).nats;
  } else {
    throw std::invalid_argument("unknown algorithm '" + opt.alg + "'");
  }

  summary["config"] = {{"algorithm", opt.alg}, {"norm", opt.norm}, {"B", opt.B},
                       {"d", opt.d},           {"T", opt.T},       {"spacing", eps},
                       {"seed", opt.seed}};

  const std::string trace_text =
      tf == TraceFormat::csv ? trace_to_csv(trace) : trace_to_json(trace);
  const std::string summary_text = summary.dump(2) + "\n";
  write_file(out_path, trace_text);
  write_file(out_path + ".summary.json", summary_text);
  std::cout << summary_text;
  return 0;
}

struct BoundsOptions {
  std::string norm = "l2";
  int d = 1;
  double T = 16.0;
  double B = 1.0;
  double eps_exponent = 0.0;
  bool bits = false;
  std::string out;
  std::string format = "json";
};

int do_bounds(const BoundsOptions& opt) {
  const BoundQuery q{opt.d, opt.T, opt.B, parse_norm(opt.norm), opt.eps_exponent, true};
  const BoundReport rep = evaluate_bounds(q);
  json doc = {{"gamma", rep.gamma},
              {"region_label", rep.region_label},
              {"lower_region", rep.lower_region},
              {"upper_region", rep.upper_region},
              {"lower_nats", rep.lower_nats},
              {"upper_nats", rep.upper_nats}};
  if (opt.bits) {
    doc["lower_bits"] = rep.lower_nats / std::log(2.0);
    doc["upper_bits"] = rep.upper_nats / std::log(2.0);
  }
  std::string text;
  if (opt.format == "csv") {
    std::ostringstream os;
    os << "gamma,region_label,lower_region,upper_region,lower_nats,upper_nats\n"
       << fmt17(rep.gamma) << ',' << rep.region_label << ',' << rep.lower_region << ','
       << rep.upper_region << ',' << fmt17(rep.lower_nats) << ',' << fmt17(rep.upper_nats)
       << '\n';
    text = os.str();
  } else {
    text = doc.dump(2) + "\n";
  }
  if (!opt.out.empty()) write_file(opt.out, text);
  std::cout << doc.dump(2) << "\n";
  return 0;
}

struct McOptions {
  int d = 1;
  std::int64_t T = 64;
  int gamma = 0;  // 0 means plain design
  int grid_points = 0;
  double eps_exponent = 0.0;
  std::int64_t trials = 1000;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
};

std::pair<SegmentedDesign, ParamGrid> mc_setup(const McOptions& opt) {
  std::optional<int> gamma =
      opt.gamma > 0 ? std::optional<int>(opt.gamma) : std::nullopt;
  SegmentedDesign design = build_design(opt.d, opt.T, gamma);
  const TheoryGridRule rule = gamma ? TheoryGridRule::scaled : TheoryGridRule::plain;
  std::optional<int> points =
      opt.grid_points > 0 ? std::optional<int>(opt.grid_points) : std::nullopt;
  ParamGrid grid = build_theory_grid(design, rule, opt.eps_exponent, points);
  return {std::move(design), std::move(grid)};
}

void emit_report(const json& doc, const std::string& out, const std::string& format) {
  std::string text;
  if (format == "csv") {
    std::ostringstream header, row;
    bool first = true;
    for (auto it = doc.begin(); it != doc.end(); ++it) {
      if (!first) {
        header << ',';
        row << ',';
      }
      first = false;
      header << it.key();
      if (it.value().is_number_float()) {
        row << fmt17(it.value().get<double>());
      } else {
        row << it.value().dump();
      }
    }
    text = header.str() + "\n" + row.str() + "\n";
  } else {
    text = doc.dump(2) + "\n";
  }
  if (!out.empty()) write_file(out, text);
  std::cout << doc.dump(2) << "\n";
}

int do_distinguish(const McOptions& opt) {
  auto [design, grid] = mc_setup(opt);
  const DistinguishabilityReport rep = estimate_pe(design, grid, opt.trials, opt.seed);
  json doc = {{"grid_cardinality_M", rep.grid_cardinality_M},
              {"trials", rep.trials},
              {"error_rate_Pe", rep.error_rate_pe},
              {"expected_regret_lower", rep.expected_regret_lower}};
  emit_report(doc, opt.out, opt.format);
  return 0;
}

int do_capacity(const McOptions& opt) {
  auto [design, grid] = mc_setup(opt);
  const OnlineAlgorithm alg = make_grid_mixture(grid, PriorSpec::Uniform());
  const CapacityReport rep = capacity_experiment(alg, design, grid, opt.trials, opt.seed);
  json doc = {{"measured_expected_regret", rep.measured_expected_regret},
              {"bound", rep.bound},
              {"error_rate_Pe", rep.error_rate_pe},
              {"grid_cardinality_M", rep.grid_cardinality_M},
              {"trials", rep.trials},
              {"std_error", rep.std_error},
              {"violation", rep.violation}};
  emit_report(doc, opt.out, opt.format);
  return 0;
}

struct SweepOptions {
  std::vector<int> ds;
  std::vector<double> Ts;
  std::vector<double> Bs;
  std::string norm = "all";
  double eps_exponent = 0.0;
  std::string out = "sweep.csv";
  std::string format = "csv";
};

struct SweepCell {
  int d;
  double T;
  double B;
  Norm norm;
  std::string status = "ok";
  BoundReport rep;
  bool lower_le_upper = false;
};

int do_sweep(const SweepOptions& opt) {
  if (opt.ds.empty() || opt.Ts.empty() || opt.Bs.empty()) {
    throw std::invalid_argument("sweep needs nonempty --d, --T and --B lists");
  }
  std::vector<Norm> norms;
  if (opt.norm == "all") {
    norms = {Norm::l1, Norm::l2, Norm::linf};
  } else {
    norms = {parse_norm(opt.norm)};
  }

  std::vector<SweepCell> cells;
  for (int d : opt.ds) {
    for (double T : opt.Ts) {
      for (double B : opt.Bs) {
        for (Norm n : norms) cells.push_back({d, T, B, n, "ok", {}, false});
      }
    }
  }

  const std::int64_t n = static_cast<std::int64_t>(cells.size());
#pragma omp parallel for num_threads(kernels::thread_cap()) schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    SweepCell& cell = cells[static_cast<std::size_t>(i)];
    try {
      const BoundQuery q{cell.d, cell.T, cell.B, cell.norm, opt.eps_exponent, true};
      cell.rep = evaluate_bounds(q);
      cell.lower_le_upper = cell.rep.lower_nats <= cell.rep.upper_nats;
    } catch (const std::exception& e) {
      cell.status = e.what();
    }
  }

  // single writer after the workers are done
  std::string text;
  if (opt.format == "csv") {
    std::ostringstream os;
    os << "d,T,B,norm,status,gamma,region,lower_region,upper_region,lower_nats,"
          "upper_nats,lower_le_upper\n";
    for (const auto& cell : cells) {
      os << cell.d << ',' << fmt17(cell.T) << ',' << fmt17(cell.B) << ','
         << norm_name(cell.norm) << ',';
      if (cell.status != "ok") {
        std::string msg = cell.status;
        for (char& ch : msg) {
          if (ch == ',' || ch == '\n') ch = ';';
        }
        os << msg << ",,,,,,,\n";
        continue;
      }
      os << "ok," << fmt17(cell.rep.gamma) << ',' << cell.rep.region_label << ','
         << cell.rep.lower_region << ',' << cell.rep.upper_region << ','
         << fmt17(cell.rep.lower_nats) << ',' << fmt17(cell.rep.upper_nats) << ','
         << (cell.lower_le_upper ? "yes" : "no") << '\n';
    }
    text = os.str();
  } else {
    json rows = json::array();
    for (const auto& cell : cells) {
      json row = {{"d", cell.d},
                  {"T", cell.T},
                  {"B", cell.B},
                  {"norm", norm_name(cell.norm)},
                  {"status", cell.status}};
      if (cell.status == "ok") {
        row["gamma"] = cell.rep.gamma;
        row["region"] = cell.rep.region_label;
        row["lower_region"] = cell.rep.lower_region;
        row["upper_region"] = cell.rep.upper_region;
        row["lower_nats"] = cell.rep.lower_nats;
        row["upper_nats"] = cell.rep.upper_nats;
        row["lower_le_upper"] = cell.lower_le_upper;
      }
      rows.push_back(std::move(row));
    }
    text = rows.dump(2) + "\n";
  }
  write_file(opt.out, text);
  std::cout << "wrote " << cells.size() << " rows to " << opt.out << "\n";
  return 0;
}

}  // namespace

namespace {

std::string trimmed(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// Expands `--config FILE` (simple key=value lines) into flags appended after
// the explicit arguments. Keys already given on the command line are left
// alone, which is what makes flags take precedence over the file.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    if (args[i] == "--config") {
      path = args[i + 1];
      break;
    }
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::string line;
  while (std::getline(in, line)) {
    line = trimmed(line);
    if (line.empty() || line[0] == '#' || line[0] == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("config line is not key=value: '" + line + "'");
    }
    const std::string key = trimmed(line.substr(0, eq));
    const std::string value = trimmed(line.substr(eq + 1));
    const std::string flag = "--" + key;
    if (std::find(args.begin(), args.end(), flag) != args.end()) continue;
    if (key == "bits") {  // flag option, no value argument
      if (value == "true" || value == "1") args.push_back(flag);
      continue;
    }
    args.push_back(flag);
    args.push_back(value);
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"regretlab: regret workbench for norm-constrained online logistic "
               "prediction"};
  app.require_subcommand(1);

  RunOptions run_opt;
  auto* run = app.add_subcommand("run", "online run on a seeded synthetic instance");
  std::string config_path;
  run->add_option("--config", config_path, "key=value config file; command-line flags win");
  run->add_option("--alg", run_opt.alg, "grid-mixture | gauss-mixture | kt | ogd")
      ->check(CLI::IsMember({"grid-mixture", "gauss-mixture", "kt", "ogd"}));
  run->add_option("--norm", run_opt.norm)->check(CLI::IsMember({"l1", "l2", "linf"}));
  run->add_option("--B", run_opt.B, "constraint radius");
  run->add_option("--d", run_opt.d, "dimension")->required();
  run->add_option("--T", run_opt.T, "horizon")->required();
  run->add_option("--spacing", run_opt.spacing, "lattice step (default 4/sqrt(T))");
  run->add_option("--seed", run_opt.seed);
  run->add_option("--out", run_opt.out, "trace path (default trace.<format>)");
  run->add_option("--format", run_opt.format)->check(CLI::IsMember({"csv", "json"}));

  BoundsOptions bounds_opt;
  auto* bounds = app.add_subcommand("bounds", "closed-form regret bound report");
  bounds->add_option("--config", config_path);
  bounds->add_option("--norm", bounds_opt.norm)->check(CLI::IsMember({"l1", "l2", "linf"}));
  bounds->add_option("--d", bounds_opt.d)->required();
  bounds->add_option("--T", bounds_opt.T)->required();
  bounds->add_option("--B", bounds_opt.B)->required();
  bounds->add_option("--eps-exponent", bounds_opt.eps_exponent);
  bounds->add_flag("--bits", bounds_opt.bits, "also report bits (nats / ln 2)");
  bounds->add_option("--out", bounds_opt.out);
  bounds->add_option("--format", bounds_opt.format)->check(CLI::IsMember({"csv", "json"}));

  McOptions dist_opt;
  auto* dist = app.add_subcommand("distinguish", "Monte Carlo misidentification rate");
  dist->add_option("--config", config_path);
  auto add_mc_flags = [](CLI::App* cmd, McOptions& o) {
    cmd->add_option("--d", o.d)->required();
    cmd->add_option("--T", o.T)->required();
    cmd->add_option("--gamma", o.gamma, "subsegment scaling levels (scaled design)");
    cmd->add_option("--grid-points", o.grid_points, "per-dimension point override");
    cmd->add_option("--eps-exponent", o.eps_exponent);
    cmd->add_option("--trials", o.trials);
    cmd->add_option("--seed", o.seed);
    cmd->add_option("--out", o.out);
    cmd->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));
  };
  add_mc_flags(dist, dist_opt);

  McOptions cap_opt;
  auto* cap = app.add_subcommand("capacity", "regret-vs-capacity experiment");
  cap->add_option("--config", config_path);
  add_mc_flags(cap, cap_opt);

  SweepOptions sweep_opt;
  auto* sweep = app.add_subcommand("sweep", "bound table over a (d,T,B) grid");
  sweep->add_option("--config", config_path);
  sweep->add_option("--d", sweep_opt.ds)->required()->delimiter(',');
  sweep->add_option("--T", sweep_opt.Ts)->required()->delimiter(',');
  sweep->add_option("--B", sweep_opt.Bs)->required()->delimiter(',');
  sweep->add_option("--norm", sweep_opt.norm)
      ->check(CLI::IsMember({"all", "l1", "l2", "linf"}));
  sweep->add_option("--eps-exponent", sweep_opt.eps_exponent);
  sweep->add_option("--out", sweep_opt.out);
  sweep->add_option("--format", sweep_opt.format)->check(CLI::IsMember({"csv", "json"}));

  try {
    std::vector<std::string> args = expand_config({argv + 1, argv + argc});
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    json err = {{"error", e.what()}};
    std::cout << err.dump() << "\n";
    return 1;
  }

  try {
    if (run->parsed()) return do_run(run_opt);
    if (bounds->parsed()) return do_bounds(bounds_opt);
    if (dist->parsed()) return do_distinguish(dist_opt);
    if (cap->parsed()) return do_capacity(cap_opt);
    if (sweep->parsed()) return do_sweep(sweep_opt);
  } catch (const std::exception& e) {
    json err = {{"error", e.what()}};
    std::cout << err.dump() << "\n";
    return 1;
  }
  return 0;
}

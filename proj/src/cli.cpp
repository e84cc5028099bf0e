#include "gorbit/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>

#include "gorbit/error.hpp"
#include "gorbit/pipeline.hpp"
#include "gorbit/report.hpp"
#include "gorbit/su5.hpp"
#include "gorbit/spec_parse.hpp"

namespace gorbit {

void validate(const RunConfig& c) {
  auto positive = [](double x, const char* name) {
    if (!(x > 0.0) || !std::isfinite(x)) throw InvalidArgument(std::string(name) + " must be positive");
  };
  positive(c.tol.rel, "rel tolerance");
  positive(c.tol.abs, "abs tolerance");
  positive(c.tol.cluster, "cluster tolerance");
  positive(c.tol.positivity, "positivity tolerance");
  positive(c.certify.thresholds.refute, "refutation tolerance");
  positive(c.certify.thresholds.accept, "acceptance tolerance");
  positive(c.certify.svd_cutoff, "svd cutoff");
  if (c.certify.thresholds.accept > c.certify.thresholds.refute) {
    throw InvalidArgument("acceptance tolerance exceeds refutation tolerance");
  }
  if (c.certify.samples < 1) throw InvalidArgument("samples must be >= 1");
  for (const auto& [name, values] : c.grid) {
    if (values.empty()) throw InvalidArgument("grid for '" + name + "' is empty");
    for (double v : values) {
      if (!std::isfinite(v)) throw InvalidArgument("grid for '" + name + "' has a non-finite value");
    }
  }
}

namespace cli {

namespace {

double parse_double(const std::string& s, const std::string& context) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw InvalidArgument("not a number in " + context + ": '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = s.find(sep, pos);
    out.push_back(s.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
    if (next == std::string::npos) return out;
    pos = next + 1;
  }
}

report::Json base_report(const Analysis& p, const RunConfig& config) {
  report::Json j = report::skeleton(config);
  j["space"] = report::space_json(p.space, p.split);
  j["space"]["normalizer_dim"] = p.normalizer_basis.cols();
  j["decomposition"] = report::decomposition_json(p.decomposition);
  j["metric_family"] = {{"equivariant", report::family_json(p.equivariant)},
                        {"normalizer", report::family_json(p.constrained)},
                        {"reduced", report::family_json(p.reduced)}};
  return j;
}

}  // namespace

std::pair<std::string, std::vector<double>> parse_grid(const std::string& text) {
  const std::size_t eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw InvalidArgument("grid must look like name=start:stop:count: " + text);
  const std::string name = text.substr(0, eq);
  const std::string body = text.substr(eq + 1);
  std::vector<double> values;
  if (body.find(':') != std::string::npos) {
    const auto parts = split(body, ':');
    if (parts.size() != 3) throw InvalidArgument("grid range must be start:stop:count: " + text);
    const double start = parse_double(parts[0], text);
    const double stop = parse_double(parts[1], text);
    const double count = parse_double(parts[2], text);
    if (count < 1 || count != std::floor(count)) throw InvalidArgument("grid count must be a positive integer: " + text);
    const int k = static_cast<int>(count);
    for (int i = 0; i < k; ++i) values.push_back(k == 1 ? start : start + (stop - start) * i / (k - 1));
  } else {
    for (const auto& item : split(body, ',')) values.push_back(parse_double(item, text));
  }
  return {name, values};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geodesic-orbit checker for homogeneous spaces of classical groups", "gorbit"};
  app.require_subcommand(1);

  RunConfig config;
  std::vector<std::string> grids;
  std::vector<std::string> params;
  std::string spec_text;
  std::string stage = "reduced";
  int terminal_samples = 1000;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--samples", config.certify.samples, "random samples per certification")->capture_default_str();
    cmd->add_option("--seed", config.certify.seed, "RNG seed")->capture_default_str();
    cmd->add_option("--tol-accept", config.certify.thresholds.accept, "relative residual accepted as solvable")
        ->capture_default_str();
    cmd->add_option("--tol-refute", config.certify.thresholds.refute, "relative residual that refutes")
        ->capture_default_str();
    cmd->add_option("--threads", config.certify.threads, "worker threads (0 = hardware)");
    cmd->add_option("--out", config.output_path, "write the JSON report here instead of stdout");
  };
  auto add_spec = [&](CLI::App* cmd) {
    cmd->add_option("spec", spec_text, "space spec, e.g. \"family=su n=5 blocks=2,2 det_one=true\"")->required();
  };

  CLI::App* describe = app.add_subcommand("describe", "dimensions and isotropy decomposition");
  CLI::App* metrics = app.add_subcommand("metrics", "invariant metric family and its reductions");
  CLI::App* check = app.add_subcommand("check", "certify one metric of the family");
  CLI::App* scan = app.add_subcommand("scan", "certify every point of a parameter grid");
  CLI::App* section5 = app.add_subcommand("section5", "full analysis of SU(5)/S(U(2)xU(2))");
  for (CLI::App* cmd : {describe, metrics, check, scan, section5}) add_common(cmd);
  for (CLI::App* cmd : {describe, metrics, check, scan}) add_spec(cmd);
  check->add_option("--param", params, "name=value, repeatable; unlisted scalars are 1");
  for (CLI::App* cmd : {check, scan}) {
    cmd->add_option("--stage", stage, "family stage: equivariant, normalizer or reduced")->capture_default_str();
  }
  for (CLI::App* cmd : {scan, section5}) {
    cmd->add_option("--grid", grids, "name=start:stop:count or name=v1,v2,...; repeatable");
  }
  scan->add_flag("--exclude-normal", config.exclude_normal, "skip the normal metric");
  section5->add_option("--terminal-samples", terminal_samples, "random X per mu for the terminal system")
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    for (const auto& g : grids) {
      auto [name, values] = parse_grid(g);
      config.grid[name] = values;
    }
    validate(config);

    report::Json j;
    std::string summary;
    if (section5->parsed()) {
      if (terminal_samples < 1) throw InvalidArgument("terminal-samples must be >= 1");
      const Su5Report r = su5_pipeline(config, terminal_samples);
      j = report::su5_json(r);
      summary = "su5: all reference facts reproduced; passing mu = " +
                j["derived_answers"]["passing_mu"].dump() + (r.consistent ? " (consistent)" : " (INCONSISTENT)");
    } else {
      const SpaceSpec spec = parse_spec(spec_text);
      const Analysis p = analyze(spec, config);
      j = base_report(p, config);
      summary = spec.name();
      if (check->parsed()) {
        std::map<std::string, double> values;
        for (const auto& s : params) {
          const std::size_t eq = s.find('=');
          if (eq == std::string::npos) throw InvalidArgument("--param must be name=value: " + s);
          values[s.substr(0, eq)] = parse_double(s.substr(eq + 1), s);
        }
        const MetricFamily& family = family_at_stage(p, stage);
        const MetricEndomorphism metric = instantiate(p.space, family, values, config.tol);
        const GoVerdict v = certify_go(p.space, p.decomposition, metric, config.certify);
        report::Json vj = report::verdict_json(v);
        report::Json pj = report::Json::object();
        for (const auto& [k, val] : values) pj[k] = report::round12(val);
        vj["params"] = pj;
        vj["stage"] = stage;
        j["verdicts"].push_back(vj);
        if (v.witness) j["witnesses"].push_back(report::witness_json(v, p.space));
        summary += ": " + std::string(to_string(v.kind));
      } else if (scan->parsed()) {
        const MetricFamily& family = family_at_stage(p, stage);
        const ScanGrid grid = default_grid(family, config.grid, config.exclude_normal);
        ScanReport s = scan_parameters(p.space, p.decomposition, family, grid, config.certify);
        for (const auto& pt : s.points) {
          if (!pt.valid) continue;
          report::Json vj = report::verdict_json(pt.verdict);
          report::Json pj = report::Json::object();
          for (const auto& [k, val] : pt.params) pj[k] = report::round12(val);
          vj["params"] = pj;
          j["verdicts"].push_back(vj);
          if (pt.verdict.witness) {
            report::Json w = report::witness_json(pt.verdict, p.space);
            w["params"] = pj;
            j["witnesses"].push_back(w);
          }
        }
        j["scan"] = report::scan_json(s);
        j["scan"]["stage"] = stage;
        summary += ": " + std::to_string(s.passing_set.size()) + " of " + std::to_string(s.points.size()) +
                   " grid points pass";
      }
    }

    const std::string text = j.dump(2);
    if (config.output_path.empty()) {
      out << text << "\n";
    } else {
      std::ofstream file(config.output_path);
      if (!file) throw InvalidArgument("cannot write " + config.output_path);
      file << text << "\n";
      out << summary << "\n";
    }
    return 0;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace cli

}  // namespace gorbit

#include "gorbit/report.hpp"

#include <cstdio>
#include <cstdlib>

namespace gorbit::report {

double round12(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

namespace {

Json numbers(const std::vector<double>& xs) {
  Json out = Json::array();
  for (double x : xs) out.push_back(round12(x));
  return out;
}

Json params_json(const std::map<std::string, double>& params) {
  Json out = Json::object();
  for (const auto& [k, v] : params) out[k] = round12(v);
  return out;
}

}  // namespace

Json config_json(const RunConfig& c) {
  Json grid = Json::object();
  for (const auto& [name, values] : c.grid) grid[name] = numbers(values);
  return {
      {"seed", c.certify.seed},
      {"samples", c.certify.samples},
      {"structured_samples", c.certify.structured},
      {"max_basis_combinations", c.certify.max_basis_combinations},
      {"tolerances",
       {{"rel", c.tol.rel},
        {"abs", c.tol.abs},
        {"cluster", c.tol.cluster},
        {"positivity", c.tol.positivity},
        {"refute", c.certify.thresholds.refute},
        {"accept", c.certify.thresholds.accept},
        {"svd_cutoff", c.certify.svd_cutoff}}},
      {"grid", grid},
      {"default_grid_values", numbers(default_grid_values())},
      {"exclude_normal", c.exclude_normal},
      {"certificate", "probabilistic: ProbablyGO means no sampled X refuted the criterion"},
  };
}

Json space_json(const HomogeneousSpace& space, const ReductiveSplit& split) {
  return {
      {"name", space.spec.name()},
      {"spec", space.spec.text()},
      {"family", std::string(to_string(space.spec.family))},
      {"n", space.spec.n},
      {"blocks", space.spec.blocks},
      {"det_one", space.spec.det_one},
      {"all_blocks_nontrivial", space.spec.all_blocks_nontrivial()},
      {"dim_g", space.dim_g()},
      {"dim_h", space.dim_h()},
      {"dim_m", space.dim_m()},
      {"dim_n", split.dim_n()},
      {"dim_p", split.dim_p()},
  };
}

Json decomposition_json(const ModuleDecomposition& d) {
  Json summands = Json::array();
  for (const auto& s : d.summands) {
    summands.push_back({{"dim", s.dim()}, {"class_id", s.class_id}, {"block", s.in_n ? "n" : "p"}});
  }
  return {{"acting", d.acting},
          {"dims", d.dims()},
          {"class_count", d.class_count()},
          {"min_cluster_gap", round12(d.min_cluster_gap)},
          {"summands", summands}};
}

Json family_json(const MetricFamily& f) {
  Json params = Json::array();
  for (int i = 0; i < f.size(); ++i) {
    params.push_back({{"name", f.names[static_cast<std::size_t>(i)]},
                      {"kind", f.kinds[static_cast<std::size_t>(i)] == ParamKind::scalar ? "scalar" : "intertwiner"},
                      {"homothety", i == f.homothety_index}});
  }
  Json merges = Json::array();
  for (const auto& m : f.merges) {
    merges.push_back({{"params", m.params}, {"equals", m.equals}, {"provenance", m.provenance}, {"reason", m.reason}});
  }
  return {{"parameters", params}, {"merges", merges}, {"positivity_domain", f.positivity_domain()}};
}

Json vector_json(const AlgebraVector& x, const LieAlgebra& g) {
  Json out = Json::object();
  for (int i = 0; i < g.dim(); ++i) {
    const double c = round12(x.coeffs[i]);
    if (std::abs(c) > 1e-14) out[g.labels()[static_cast<std::size_t>(i)]] = c;
  }
  return out;
}

Json verdict_json(const GoVerdict& v) {
  return {{"verdict", std::string(to_string(v.kind))},
          {"max_relative_residual", round12(v.max_residual)},
          {"samples", v.samples},
          {"random_samples", v.random_samples},
          {"structured_samples", v.structured_samples},
          {"seed", v.seed}};
}

Json witness_json(const GoVerdict& v, const HomogeneousSpace& space) {
  if (!v.witness) return nullptr;
  const auto& w = *v.witness;
  return {{"x", vector_json(w.x, *space.g)},
          {"a", vector_json(w.a, *space.g)},
          {"residual", round12(w.residual)},
          {"relative_residual", round12(w.relative_residual)}};
}

Json scan_json(const ScanReport& scan) {
  Json points = Json::array();
  for (const auto& p : scan.points) {
    Json j = {{"params", params_json(p.params)}, {"normal", p.normal}, {"valid", p.valid}};
    if (p.valid) {
      j["verdict"] = verdict_json(p.verdict);
    } else {
      j["error"] = p.error;
    }
    points.push_back(j);
  }
  Json passing = Json::array();
  for (const auto& p : scan.passing_set) passing.push_back(params_json(p));
  return {{"parameters", scan.parameter_names}, {"points", points}, {"passing_set", passing}};
}

Json skeleton(const RunConfig& config) {
  return {{"space", nullptr},
          {"config", config_json(config)},
          {"decomposition", nullptr},
          {"metric_family", nullptr},
          {"verdicts", Json::array()},
          {"witnesses", Json::array()},
          {"derived_answers", Json::object()}};
}

Json su5_json(const Su5Report& r) {
  const auto& space = r.fixture.space;
  const auto& g = *space.g;
  Json out = skeleton(r.config);
  out["space"] = space_json(space, r.split);
  out["space"]["normalizer_dim"] = r.normalizer_basis.cols();
  out["space"]["w"] = vector_json(r.fixture.w, g);
  out["space"]["v"] = vector_json(r.fixture.v, g);

  out["decomposition"] = decomposition_json(r.decomposition);
  Json labels = Json::object();
  for (const auto& [label, index] : r.summand_labels) labels[label] = index;
  out["decomposition"]["reference_labels"] = labels;
  out["decomposition"]["under_normalizer"] = decomposition_json(r.normalizer_decomposition);

  out["metric_family"] = {{"equivariant", family_json(r.family_equivariant)},
                          {"normalizer", family_json(r.family_normalizer)},
                          {"reduced", family_json(r.family_reduced)}};

  auto facts_json = [](const std::vector<FactCheck>& facts) {
    Json a = Json::array();
    for (const auto& f : facts) {
      a.push_back({{"identity", f.name}, {"verified", f.verified}, {"residual", round12(f.residual)}, {"detail", f.detail}});
    }
    return a;
  };
  out["facts"] = facts_json(r.facts);
  out["lemma_5_1"] = facts_json(r.bracket_identities);

  for (const auto& p : r.scan.points) {
    Json v = verdict_json(p.verdict);
    v["params"] = params_json(p.params);
    out["verdicts"].push_back(v);
    if (p.verdict.witness) {
      Json w = witness_json(p.verdict, space);
      w["params"] = params_json(p.params);
      out["witnesses"].push_back(w);
    }
  }
  out["scan"] = scan_json(r.scan);

  Json terminal = Json::array();
  for (const auto& t : r.terminal) {
    terminal.push_back({{"mu", round12(t.mu)},
                        {"feasible", t.feasible},
                        {"samples", t.samples},
                        {"max_relative_residual", round12(t.max_residual)}});
  }
  out["derived_answers"] = {
      {"status", "derived, not from paper"},
      {"question", "values of mu (lambda = 1) for which the metric is geodesic orbit"},
      {"passing_mu", numbers(r.passing_mu)},
      {"terminal_system_feasible_mu", numbers(r.terminal_feasible_mu)},
      {"consistent", r.consistent},
      {"terminal_system", terminal},
  };
  return out;
}

}  // namespace gorbit::report

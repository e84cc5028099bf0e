#pragma once

#include "gorbit/config.hpp"
#include "gorbit/homspace.hpp"
#include "gorbit/invmetrics.hpp"

namespace gorbit {

/// Everything derived from a space spec before any metric is chosen.
struct Analysis {
  HomogeneousSpace space;
  Eigen::MatrixXd normalizer_basis;
  ReductiveSplit split;
  ModuleDecomposition decomposition;
  MetricFamily equivariant;  // metric_space
  MetricFamily constrained;  // + normalizer constraint
  MetricFamily reduced;      // + eigenvalue constraints
};

Analysis analyze(const SpaceSpec& spec, const RunConfig& config = {});

/// "equivariant", "normalizer" or "reduced"; throws InvalidArgument otherwise.
const MetricFamily& family_at_stage(const Analysis& analysis, const std::string& stage);

}  // namespace gorbit

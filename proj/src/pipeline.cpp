#include "gorbit/pipeline.hpp"

#include "gorbit/error.hpp"

namespace gorbit {

Analysis analyze(const SpaceSpec& spec, const RunConfig& config) {
  Analysis a;
  a.space = build_space(spec, config.tol);
  a.normalizer_basis = normalizer(a.space, config.tol);
  a.split = reductive_split(a.space, a.normalizer_basis, config.tol);
  Rng rng(config.certify.seed);
  a.decomposition = isotypic_decompose(a.space, a.split, rng, config.tol);
  a.equivariant = metric_space(a.space, a.split, a.decomposition, config.tol);
  a.constrained = apply_normalizer_constraint(a.space, a.split, a.equivariant, config.tol);
  a.reduced = eigen_constraints(a.space, a.decomposition, a.constrained, config.tol);
  return a;
}

const MetricFamily& family_at_stage(const Analysis& a, const std::string& stage) {
  if (stage == "equivariant") return a.equivariant;
  if (stage == "normalizer") return a.constrained;
  if (stage == "reduced") return a.reduced;
  throw InvalidArgument("unknown stage '" + stage + "' (expected equivariant, normalizer or reduced)");
}

}  // namespace gorbit

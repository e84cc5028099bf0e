#pragma once

// JSON reports. Numbers carry 12 significant digits; algebra vectors are
// objects keyed by basis label.

#include <json.hpp>

#include "gorbit/config.hpp"
#include "gorbit/gocheck.hpp"
#include "gorbit/su5.hpp"

namespace gorbit::report {

using Json = nlohmann::ordered_json;

double round12(double x);

Json config_json(const RunConfig& config);
Json space_json(const HomogeneousSpace& space, const ReductiveSplit& split);
Json decomposition_json(const ModuleDecomposition& decomposition);
Json family_json(const MetricFamily& family);
Json vector_json(const AlgebraVector& x, const LieAlgebra& g);
Json verdict_json(const GoVerdict& verdict);
Json witness_json(const GoVerdict& verdict, const HomogeneousSpace& space);
Json scan_json(const ScanReport& scan);

/// Skeleton with every top-level key present.
Json skeleton(const RunConfig& config);

Json su5_json(const Su5Report& report);

}  // namespace gorbit::report

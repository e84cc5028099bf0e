#pragma once

#include <string_view>

#include "gorbit/homspace.hpp"

namespace gorbit {

/// Parses whitespace-separated key=value pairs (family, n, blocks, det_one)
/// into a validated SpaceSpec. Throws ParseError pointing at the offending token.
SpaceSpec parse_spec(std::string_view text);

}  // namespace gorbit

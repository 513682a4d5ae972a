// SPDX-License-Identifier: Apache-2.0

#include "gngs/error.hpp"

namespace gngs
{

std::string_view to_string(ErrorCode code)
{
  switch (code)
  {
    case ErrorCode::invalid_structure: return "invalid-structure";
    case ErrorCode::supercritical_order: return "supercritical-order";
    case ErrorCode::degenerate_pair: return "degenerate-pair";
    case ErrorCode::degenerate_interpolation: return "degenerate-interpolation";
    case ErrorCode::infeasible_exponent: return "infeasible-exponent";
    case ErrorCode::inadmissible: return "inadmissible";
    case ErrorCode::invalid_grid: return "invalid-grid";
    case ErrorCode::grid_mismatch: return "grid-mismatch";
    case ErrorCode::numeric: return "numeric";
    case ErrorCode::degenerate_projection: return "degenerate-projection";
    case ErrorCode::unsupported_exponent: return "unsupported-exponent";
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::io: return "io";
    case ErrorCode::config: return "config";
  }
  return "unknown";
}

}  // namespace gngs

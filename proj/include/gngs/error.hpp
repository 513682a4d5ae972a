// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gngs
{

enum class ErrorCode
{
  invalid_structure,
  supercritical_order,
  degenerate_pair,
  degenerate_interpolation,
  infeasible_exponent,
  inadmissible,
  invalid_grid,
  grid_mismatch,
  numeric,
  degenerate_projection,
  unsupported_exponent,
  invalid_argument,
  io,
  config
};

std::string_view to_string(ErrorCode code);

/// Base exception for every failure raised by the library. The code is stable and is what
/// the command-line front end maps onto exit statuses.
class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string &message)
    : std::runtime_error(message), code_(code)
  {
  }

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace gngs

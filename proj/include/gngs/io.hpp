// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>

#include "gngs/exponents.hpp"
#include "gngs/grid.hpp"

namespace gngs
{

struct StoredField
{
  GridFunction u;
  DilationStructure weights;
};

/// Writes `<stem>.bin` and the JSON sidecar `<stem>.json`.
///
/// Binary layout, little endian: "GNGS", u32 version, u32 dims, dims x u64 points,
/// dims x f64 half lengths, dims x f64 weights, then the samples as f64 in row-major order.
void save_field(const std::filesystem::path &stem, const GridFunction &u, const DilationStructure &weights);

/// Reads a field written by save_field. `path` may name the .bin file or the stem.
/// Rejects truncated or oversized payloads and headers that disagree with the sidecar.
StoredField load_field(const std::filesystem::path &path);

}  // namespace gngs

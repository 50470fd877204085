// Copyright 2026 The tripod-polariton Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// On-disk field formats.
//
// Raster: `<name>.bin` holds n*n row-major pairs of little-endian IEEE-754
// doubles (re, im). The sidecar `<name>.json` records
//   {"format": "complex128-le-rowmajor", "n_x": n, "extent": e}.
// Midline CSV: one row per node along y = 0 with columns x, intensity, phase.

#pragma once

#include <filesystem>

#include "tripod/grid.hpp"

namespace tripod {

std::filesystem::path sidecar_path(const std::filesystem::path& raster);

void write_raster(const ComplexField2D& f, const std::filesystem::path& path);
ComplexField2D read_raster(const std::filesystem::path& path);

void write_midline_csv(const ComplexField2D& f,
                       const std::filesystem::path& path);

}  // namespace tripod

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

#include "tripod/field_io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>

#include "json.hpp"

namespace tripod {

namespace {

constexpr const char* kRasterFormat = "complex128-le-rowmajor";

std::uint64_t to_little_endian(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::big) {
    std::uint64_t r = 0;
    for (int b = 0; b < 8; ++b) r |= ((v >> (8 * b)) & 0xffu) << (8 * (7 - b));
    return r;
  }
  return v;
}

void put_double(std::ostream& os, double d) {
  const auto bits = to_little_endian(std::bit_cast<std::uint64_t>(d));
  char bytes[8];
  std::memcpy(bytes, &bits, 8);
  os.write(bytes, 8);
}

double get_double(std::istream& is) {
  char bytes[8];
  is.read(bytes, 8);
  std::uint64_t bits = 0;
  std::memcpy(&bits, bytes, 8);
  return std::bit_cast<double>(to_little_endian(bits));
}

}  // namespace

std::filesystem::path sidecar_path(const std::filesystem::path& raster) {
  auto p = raster;
  p.replace_extension(".json");
  return p;
}

void write_raster(const ComplexField2D& f, const std::filesystem::path& path) {
  std::ofstream bin(path, std::ios::binary);
  if (!bin) {
    throw Error(ErrorCode::io_error, "cannot open " + path.string());
  }
  for (const auto& v : f) {
    put_double(bin, v.real());
    put_double(bin, v.imag());
  }
  if (!bin) throw Error(ErrorCode::io_error, "write failed: " + path.string());

  nlohmann::ordered_json meta;
  meta["format"] = kRasterFormat;
  meta["n_x"] = f.grid().n();
  meta["extent"] = f.grid().extent();
  std::ofstream side(sidecar_path(path));
  if (!side) {
    throw Error(ErrorCode::io_error,
                "cannot open " + sidecar_path(path).string());
  }
  side << meta.dump(2) << '\n';
}

ComplexField2D read_raster(const std::filesystem::path& path) {
  std::ifstream side(sidecar_path(path));
  if (!side) {
    throw Error(ErrorCode::io_error,
                "missing sidecar " + sidecar_path(path).string());
  }
  nlohmann::json meta;
  try {
    side >> meta;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::io_error,
                "malformed sidecar " + sidecar_path(path).string() + ": " +
                    e.what());
  }
  if (meta.value("format", std::string{}) != kRasterFormat) {
    throw Error(ErrorCode::io_error, "unsupported raster format in sidecar");
  }
  const auto grid =
      make_grid(meta.at("n_x").get<int>(), meta.at("extent").get<double>());

  std::ifstream bin(path, std::ios::binary);
  if (!bin) throw Error(ErrorCode::io_error, "cannot open " + path.string());
  ComplexField2D f(grid);
  for (auto& v : f) {
    const double re = get_double(bin);
    const double im = get_double(bin);
    v = {re, im};
  }
  if (!bin) {
    throw Error(ErrorCode::io_error, "truncated raster " + path.string());
  }
  return f;
}

void write_midline_csv(const ComplexField2D& f,
                       const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorCode::io_error, "cannot open " + path.string());
  os << "x_over_lambda,intensity,phase_rad\n";
  os << std::setprecision(17);
  const auto& g = f.grid();
  const int mid = g.n() / 2;
  for (int i = 0; i < g.n(); ++i) {
    const auto v = f(i, mid);
    os << g.coord(i) << ',' << std::norm(v) << ',' << std::arg(v) << '\n';
  }
}

}  // namespace tripod

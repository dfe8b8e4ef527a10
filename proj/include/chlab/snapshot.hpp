#pragma once

#include <filesystem>

#include "chlab/field.hpp"

namespace chlab {

// Binary field snapshot, little-endian:
//   magic "CHS1" | u32 version = 1 | u64 n_points | f64 period | f64 time |
//   f64 alpha | n_points x f64 samples
// Write-then-read is bit identical; total length is 40 + 8 n_points bytes.
void write_snapshot(const Field& f, const std::filesystem::path& path);
Field read_snapshot(const std::filesystem::path& path);

} // namespace chlab

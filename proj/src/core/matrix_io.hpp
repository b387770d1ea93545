#pragma once

#include "core/types.hpp"

#include <string>
#include <utility>
#include <vector>

namespace cdeim {

/// Binary matrix container: 14-byte header (magic "CDMX", version u16,
/// rows u32, cols u32, little-endian) followed by rows*cols IEEE-754 doubles
/// in column-major order. Paths ending in ".csv" use plain text instead, one
/// matrix row per line with 17 significant digits.
inline constexpr char kMatrixMagic[4] = {'C', 'D', 'M', 'X'};
inline constexpr std::uint16_t kMatrixFormatVersion = 1;
inline constexpr std::size_t kMatrixHeaderBytes = 14;

Matrix read_matrix(const std::string& path);
void write_matrix(const Matrix& matrix, const std::string& path);

/// Sensor index lists: plain text, one zero-based index per line.
IndexList read_index_list(const std::string& path);
void write_index_list(const IndexList& indices, const std::string& path);

/// Key = value run manifest, one entry per line in the given order.
void write_manifest(const std::string& path,
                    const std::vector<std::pair<std::string, std::string>>& entries);

/// Shortest-width decimal with 17 significant digits; the one float format
/// used for every text artifact so reruns are byte-identical.
std::string format_double(double v);

}  // namespace cdeim

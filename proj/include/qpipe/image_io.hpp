#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "qpipe/phasemap.hpp"

namespace qpipe::io {

enum class ImageFormat { Pgm, Csv };

/// By extension: .pgm or .csv. Anything else is an ArgumentError.
ImageFormat format_for_path(const std::filesystem::path& path);

/// P2 or P5. Sets bit_depth to bit_width(maxval), so the default intensity
/// range is the smallest power of two above maxval.
Image read_pgm(std::istream& in);

/// One image row per line, comma separated decimals. Blank lines are skipped.
Image read_csv_image(std::istream& in);

Image read_image(const std::filesystem::path& path);

/// P2. Pixels must be nonnegative integers. maxval is 2^bit_depth - 1 when a
/// hint is set, else the largest pixel (at least 1).
void write_pgm(std::ostream& out, const Image& image);

/// Values printed with 17 significant digits; any sign allowed.
void write_csv_grid(std::ostream& out, std::size_t width, std::size_t height,
                    const std::vector<double>& values);

void write_image(const std::filesystem::path& path, const Image& image);

/// Writes to a sibling temp file and renames it over `path`, so a failed
/// run never leaves a partial file behind.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace qpipe::io

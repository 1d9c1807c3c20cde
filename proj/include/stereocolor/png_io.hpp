#pragma once

#include <filesystem>

#include "stereocolor/image.hpp"

namespace stereocolor {

/// Reads an 8-bit PNG as RGB in [0,1] (value / 255). Gray and palette images are
/// expanded, alpha is dropped, 16-bit samples are reduced to 8 bits. Throws IoError.
Image read_png(const std::filesystem::path& path);

/// Writes 8-bit RGB with round-half-up of clamp(v) * 255. The file is written to a
/// temporary name and renamed, so a failed write leaves no partial file. Throws IoError.
void write_png(const std::filesystem::path& path, const Image& img);

/// The 8-bit quantization write_png applies.
unsigned char quantize8(double v);

}  // namespace stereocolor

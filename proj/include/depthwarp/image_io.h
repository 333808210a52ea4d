#pragma once

#include <string>

#include "depthwarp/grid.h"

namespace depthwarp {

// Binary PPM (P6, 8-bit). Values are quantized with round(v * 255) on write
// and mapped back as byte / 255 on read, so write/read/write round-trips are
// byte-identical.
void write_ppm(const std::string& path, const Image& image);
Image read_ppm(const std::string& path);

// PFM, single channel ("Pf"), little-endian (negative scale), rows stored
// bottom-up. Values are stored as float32; write/read/write round-trips are
// byte-identical.
void write_pfm(const std::string& path, const ScalarGrid& grid);
ScalarGrid read_pfm(const std::string& path);

}  // namespace depthwarp

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "topocode/image.hpp"

namespace topocode {

// IDX image container (big-endian magic 0x00000803, counts, then unsigned
// bytes). Pixels are normalized per image by their maximum. Throws IoError
// on bad magic or truncation.
std::vector<GrayImage> load_idx(const std::string& path);

// Binary PGM (P5, maxval <= 255); ASCII P2 is rejected as unsupported.
GrayImage load_pgm(const std::string& path);

// Every *.pgm file in the directory, sorted by filename; an empty or
// pgm-free directory yields an empty list.
std::vector<GrayImage> load_pgm_dir(const std::string& path);

void save_pgm(const GrayImage& image, const std::string& path);

// Procedurally drawn 28x28 digit-like glyphs (bars, rings, double rings,
// hooks) with seeded jitter; bright strokes on a dark background.
std::vector<GrayImage> synthetic_dataset(int count, std::uint64_t seed);

} // namespace topocode

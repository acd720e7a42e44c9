#pragma once

#include <cstdint>
#include <vector>

namespace topocode {

// Filtration direction. Sublevel grows dark-to-bright; superlevel is realized
// as the sublevel filtration of 1 - value, so bright structure enters first.
enum class Orientation : std::uint8_t { sublevel = 0, superlevel = 1 };

enum class NormalizeMode { per_image_max, fixed_255 };

// Normalized grayscale grid, row-major, values in [0, 1].
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<double> pixels;

    int size() const { return width * height; }
    double at(int row, int col) const { return pixels[static_cast<std::size_t>(row) * width + col]; }
    double& at(int row, int col) { return pixels[static_cast<std::size_t>(row) * width + col]; }

    bool operator==(const GrayImage&) const = default;
};

// Filtration value of a pixel under the given orientation.
inline double filtration_value(double pixel, Orientation o) {
    return o == Orientation::superlevel ? 1.0 - pixel : pixel;
}

// Scale nonnegative raw intensities into [0, 1]. per_image_max divides by the
// grid maximum (an all-zero grid passes through unchanged); fixed_255 divides
// by 255. Throws ValueError on negative input or, for fixed_255, input > 255.
GrayImage normalize(const std::vector<double>& raw, int width, int height,
                    NormalizeMode mode = NormalizeMode::per_image_max);

GrayImage normalize_bytes(const std::vector<std::uint8_t>& raw, int width, int height,
                          NormalizeMode mode = NormalizeMode::per_image_max);

// 8-bit representation of a normalized image, round(v * 255) per pixel.
std::vector<std::uint8_t> to_bytes(const GrayImage& image);

// Drop `margin` rows/columns from every side. Throws DimensionError when
// margin < 0 or margin >= floor(min(width, height) / 2).
GrayImage crop_interior(const GrayImage& image, int margin);

} // namespace topocode

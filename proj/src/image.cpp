#include "topocode/image.hpp"

#include <algorithm>
#include <cmath>

#include "topocode/errors.hpp"

namespace topocode {

GrayImage normalize(const std::vector<double>& raw, int width, int height, NormalizeMode mode) {
    if (width < 1 || height < 1)
        throw DimensionError("normalize: width and height must be positive");
    if (raw.size() != static_cast<std::size_t>(width) * height)
        throw DimensionError("normalize: pixel count does not match dimensions");

    GrayImage out;
    out.width = width;
    out.height = height;
    out.pixels.resize(raw.size());

    double max_value = 0.0;
    for (double v : raw) {
        if (v < 0.0) throw ValueError("normalize: negative intensity");
        max_value = std::max(max_value, v);
    }

    if (mode == NormalizeMode::fixed_255) {
        if (max_value > 255.0) throw ValueError("normalize: intensity above 255 in fixed_255 mode");
        for (std::size_t i = 0; i < raw.size(); ++i) out.pixels[i] = raw[i] / 255.0;
        return out;
    }

    if (max_value == 0.0) {
        out.pixels = raw;
        return out;
    }
    for (std::size_t i = 0; i < raw.size(); ++i) out.pixels[i] = raw[i] / max_value;
    return out;
}

GrayImage normalize_bytes(const std::vector<std::uint8_t>& raw, int width, int height, NormalizeMode mode) {
    std::vector<double> tmp(raw.begin(), raw.end());
    return normalize(tmp, width, height, mode);
}

std::vector<std::uint8_t> to_bytes(const GrayImage& image) {
    std::vector<std::uint8_t> out(image.pixels.size());
    for (std::size_t i = 0; i < image.pixels.size(); ++i) {
        const double v = std::clamp(image.pixels[i], 0.0, 1.0);
        out[i] = static_cast<std::uint8_t>(std::lround(v * 255.0));
    }
    return out;
}

GrayImage crop_interior(const GrayImage& image, int margin) {
    if (margin < 0) throw DimensionError("crop_interior: negative margin");
    if (margin == 0) return image;
    if (margin >= std::min(image.width, image.height) / 2)
        throw DimensionError("crop_interior: margin leaves no interior");

    GrayImage out;
    out.width = image.width - 2 * margin;
    out.height = image.height - 2 * margin;
    out.pixels.reserve(static_cast<std::size_t>(out.width) * out.height);
    for (int r = margin; r < image.height - margin; ++r)
        for (int c = margin; c < image.width - margin; ++c)
            out.pixels.push_back(image.at(r, c));
    return out;
}

} // namespace topocode

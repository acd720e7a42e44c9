#include "topocode/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "topocode/errors.hpp"
#include "topocode/rng.hpp"

namespace topocode {

namespace {

std::uint32_t read_u32_be(std::istream& in) {
    std::uint8_t b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (!in) throw IoError("unexpected end of file while reading a 32-bit field");
    return (static_cast<std::uint32_t>(b[0]) << 24) | (static_cast<std::uint32_t>(b[1]) << 16) |
           (static_cast<std::uint32_t>(b[2]) << 8) | b[3];
}

} // namespace

std::vector<GrayImage> load_idx(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("load_idx: cannot open " + path);

    const std::uint32_t magic = read_u32_be(in);
    if (magic != 0x00000803u)
        throw IoError("load_idx: bad magic in " + path + " (expected 0x00000803)");
    const std::uint32_t count = read_u32_be(in);
    const std::uint32_t rows = read_u32_be(in);
    const std::uint32_t cols = read_u32_be(in);
    if (rows == 0 || cols == 0) throw IoError("load_idx: zero image dimensions in " + path);

    std::vector<GrayImage> images;
    images.reserve(count);
    std::vector<std::uint8_t> buffer(static_cast<std::size_t>(rows) * cols);
    for (std::uint32_t i = 0; i < count; ++i) {
        in.read(reinterpret_cast<char*>(buffer.data()), static_cast<std::streamsize>(buffer.size()));
        if (!in) throw IoError("load_idx: truncated image data in " + path);
        images.push_back(normalize_bytes(buffer, static_cast<int>(cols), static_cast<int>(rows)));
    }
    return images;
}

GrayImage load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("load_pgm: cannot open " + path);

    std::string magic;
    in >> magic;
    if (magic == "P2") throw IoError("load_pgm: ASCII P2 is unsupported in " + path);
    if (magic != "P5") throw IoError("load_pgm: not a binary PGM (P5): " + path);

    auto next_token = [&in, &path]() -> long {
        // skip whitespace and # comments
        for (;;) {
            const int c = in.peek();
            if (c == '#') {
                std::string line;
                std::getline(in, line);
            } else if (std::isspace(c)) {
                in.get();
            } else {
                break;
            }
        }
        long v = -1;
        in >> v;
        if (!in || v < 0) throw IoError("load_pgm: malformed header in " + path);
        return v;
    };

    const long width = next_token();
    const long height = next_token();
    const long maxval = next_token();
    if (maxval < 1 || maxval > 255) throw IoError("load_pgm: maxval must be in [1, 255] in " + path);
    in.get(); // single whitespace byte after maxval

    std::vector<std::uint8_t> buffer(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
    in.read(reinterpret_cast<char*>(buffer.data()), static_cast<std::streamsize>(buffer.size()));
    if (!in) throw IoError("load_pgm: truncated pixel data in " + path);
    return normalize_bytes(buffer, static_cast<int>(width), static_cast<int>(height));
}

std::vector<GrayImage> load_pgm_dir(const std::string& path) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(path)) throw IoError("load_pgm_dir: not a directory: " + path);

    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(path))
        if (entry.is_regular_file() && entry.path().extension() == ".pgm")
            files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());

    std::vector<GrayImage> images;
    images.reserve(files.size());
    for (const std::string& file : files) images.push_back(load_pgm(file));
    return images;
}

void save_pgm(const GrayImage& image, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("save_pgm: cannot open " + path);
    out << "P5\n" << image.width << " " << image.height << "\n255\n";
    const std::vector<std::uint8_t> bytes = to_bytes(image);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

namespace {

constexpr int kGlyphSize = 28;

// soft-edged disk-distance stroke: 1 inside, linear falloff over one pixel
double stroke_value(double distance, double half_width) {
    const double edge = half_width + 1.0;
    if (distance <= half_width) return 1.0;
    if (distance >= edge) return 0.0;
    return edge - distance;
}

void draw_ring(GrayImage& img, double cy, double cx, double radius, double half_width, double intensity) {
    for (int r = 0; r < img.height; ++r) {
        for (int c = 0; c < img.width; ++c) {
            const double d = std::abs(std::hypot(r - cy, c - cx) - radius);
            img.at(r, c) = std::max(img.at(r, c), intensity * stroke_value(d, half_width));
        }
    }
}

void draw_segment(GrayImage& img, double y0, double x0, double y1, double x1, double half_width,
                  double intensity) {
    const double vy = y1 - y0, vx = x1 - x0;
    const double len2 = vy * vy + vx * vx;
    for (int r = 0; r < img.height; ++r) {
        for (int c = 0; c < img.width; ++c) {
            double t = len2 > 0 ? ((r - y0) * vy + (c - x0) * vx) / len2 : 0.0;
            t = std::clamp(t, 0.0, 1.0);
            const double d = std::hypot(r - (y0 + t * vy), c - (x0 + t * vx));
            img.at(r, c) = std::max(img.at(r, c), intensity * stroke_value(d, half_width));
        }
    }
}

} // namespace

std::vector<GrayImage> synthetic_dataset(int count, std::uint64_t seed) {
    std::vector<GrayImage> images;
    images.reserve(static_cast<std::size_t>(count));

    for (int i = 0; i < count; ++i) {
        Rng rng(split_seed(seed, static_cast<std::uint64_t>(i)));
        GrayImage img;
        img.width = kGlyphSize;
        img.height = kGlyphSize;
        img.pixels.assign(static_cast<std::size_t>(kGlyphSize) * kGlyphSize, 0.0);

        const double jitter_y = 2.0 * (rng.uniform() - 0.5) * 2.0;
        const double jitter_x = 2.0 * (rng.uniform() - 0.5) * 2.0;
        const double cy = kGlyphSize / 2.0 + jitter_y;
        const double cx = kGlyphSize / 2.0 + jitter_x;
        const double intensity = 0.85 + 0.15 * rng.uniform();
        const double half_width = 0.6 + 0.8 * rng.uniform();

        switch (i % 5) {
        case 0: { // ring, one loop
            draw_ring(img, cy, cx, 7.0 + 2.0 * rng.uniform(), half_width, intensity);
            break;
        }
        case 1: { // vertical bar, no loop
            draw_segment(img, cy - 9.0, cx, cy + 9.0, cx, half_width, intensity);
            break;
        }
        case 2: { // double ring, two loops
            draw_ring(img, cy - 5.0, cx, 4.0 + rng.uniform(), half_width, intensity);
            draw_ring(img, cy + 5.0, cx, 4.0 + rng.uniform(), half_width, intensity);
            break;
        }
        case 3: { // angled hook, no loop
            draw_segment(img, cy - 8.0, cx - 5.0, cy - 8.0, cx + 5.0, half_width, intensity);
            draw_segment(img, cy - 8.0, cx + 5.0, cy + 8.0, cx - 3.0, half_width, intensity);
            break;
        }
        case 4: { // ring with a tail
            draw_ring(img, cy - 2.0, cx, 5.0 + rng.uniform(), half_width, intensity);
            draw_segment(img, cy + 3.0, cx + 4.0, cy + 9.0, cx + 6.0, half_width, intensity);
            break;
        }
        }
        for (double& v : img.pixels) v = std::clamp(v, 0.0, 1.0);
        images.push_back(std::move(img));
    }
    return images;
}

} // namespace topocode

#pragma once

#include <set>
#include <vector>

#include "topocode/image.hpp"
#include "topocode/persistence.hpp"
#include "topocode/rng.hpp"

namespace testutil {

// random image with all pixel values distinct (uniform draws, rejected on collision)
inline topocode::GrayImage random_distinct_image(int width, int height, topocode::Rng& rng,
                                                 double lo = 0.0, double hi = 1.0) {
    topocode::GrayImage img;
    img.width = width;
    img.height = height;
    std::set<double> seen;
    while (static_cast<int>(img.pixels.size()) < width * height) {
        const double v = lo + (hi - lo) * rng.uniform();
        if (seen.insert(v).second) img.pixels.push_back(v);
    }
    return img;
}

inline topocode::GrayImage image_from(std::vector<std::vector<double>> rows) {
    topocode::GrayImage img;
    img.height = static_cast<int>(rows.size());
    img.width = static_cast<int>(rows.front().size());
    for (const auto& row : rows) img.pixels.insert(img.pixels.end(), row.begin(), row.end());
    return img;
}

// diagram with the given finite pairs in dimension h, no essentials
inline topocode::PersistenceDiagram diagram_from_pairs(int h,
                                                       const std::vector<std::pair<double, double>>& pairs) {
    topocode::PersistenceDiagram d;
    for (const auto& [birth, death] : pairs) d.group(h).finite.push_back({birth, death, -1, -1});
    return d;
}

inline std::vector<std::pair<double, double>> random_pairs(topocode::Rng& rng, int max_count) {
    const int count = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(max_count) + 1));
    std::vector<std::pair<double, double>> pairs;
    for (int i = 0; i < count; ++i) {
        const double birth = rng.uniform();
        const double death = birth + (1.0 - birth) * rng.uniform_pos();
        pairs.emplace_back(birth, death);
    }
    return pairs;
}

} // namespace testutil

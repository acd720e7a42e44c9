#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "topocode/image.hpp"

namespace topocode {

// Cubical cell. `value` is the filtration value, `provenance` the index of
// the pixel that determines it (the minimizing top cell, ties to the smallest
// pixel index).
struct Cell {
    std::uint8_t dim = 0;
    double value = 0.0;
    std::int32_t provenance = -1;
};

// Full cubical complex of an image under the T-construction: every pixel is a
// top-dimensional square, every face carries the minimum over its incident
// squares. Cells live on a (2H+1) x (2W+1) grid; the coordinate parities give
// the dimension (odd/odd = square, even/even = vertex, mixed = edge).
struct CubicalComplex {
    int image_width = 0;
    int image_height = 0;
    std::vector<Cell> cells; // row-major over the (2H+1) x (2W+1) grid

    int grid_width() const { return 2 * image_width + 1; }
    int grid_height() const { return 2 * image_height + 1; }
    int cell_count() const { return grid_width() * grid_height(); }

    int cell_index(int y, int x) const { return y * grid_width() + x; }
    int cell_y(int index) const { return index / grid_width(); }
    int cell_x(int index) const { return index % grid_width(); }

    // Boundary cell indices (4 edges for a square, 2 vertices for an edge,
    // none for a vertex).
    std::array<int, 4> boundary(int index, int& count) const;

    // Euler characteristic of the sublevel complex at threshold t
    // (cells with value <= t), computed by cell counting.
    long euler_characteristic(double threshold) const;
};

// Build the filtered complex of `image` in the given orientation (superlevel
// uses 1 - value). Throws DimensionError when width or height < 2.
CubicalComplex build_complex(const GrayImage& image, Orientation orientation);

} // namespace topocode

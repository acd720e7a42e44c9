#include "topocode/cubical.hpp"

#include "topocode/errors.hpp"

namespace topocode {

std::array<int, 4> CubicalComplex::boundary(int index, int& count) const {
    const int y = cell_y(index);
    const int x = cell_x(index);
    const bool y_odd = (y & 1) != 0;
    const bool x_odd = (x & 1) != 0;
    std::array<int, 4> out{};
    count = 0;
    if (y_odd && x_odd) { // square -> 4 edges
        out[count++] = cell_index(y - 1, x);
        out[count++] = cell_index(y + 1, x);
        out[count++] = cell_index(y, x - 1);
        out[count++] = cell_index(y, x + 1);
    } else if (y_odd) { // vertical edge -> endpoint vertices
        out[count++] = cell_index(y - 1, x);
        out[count++] = cell_index(y + 1, x);
    } else if (x_odd) { // horizontal edge
        out[count++] = cell_index(y, x - 1);
        out[count++] = cell_index(y, x + 1);
    }
    return out;
}

long CubicalComplex::euler_characteristic(double threshold) const {
    long chi = 0;
    for (const Cell& c : cells) {
        if (c.value > threshold) continue;
        chi += (c.dim == 1) ? -1 : 1;
    }
    return chi;
}

CubicalComplex build_complex(const GrayImage& image, Orientation orientation) {
    if (image.width < 2 || image.height < 2)
        throw DimensionError("build_complex: image must be at least 2x2");

    CubicalComplex cx;
    cx.image_width = image.width;
    cx.image_height = image.height;
    cx.cells.resize(static_cast<std::size_t>(cx.cell_count()));

    const int gw = cx.grid_width();
    const int gh = cx.grid_height();
    for (int y = 0; y < gh; ++y) {
        for (int x = 0; x < gw; ++x) {
            Cell& cell = cx.cells[static_cast<std::size_t>(y) * gw + x];
            cell.dim = static_cast<std::uint8_t>((y & 1) + (x & 1));

            // minimize over incident squares (odd coordinates within +-1)
            double best = 2.0;
            std::int32_t best_pixel = -1;
            for (int sy = y - 1; sy <= y + 1; ++sy) {
                if (sy < 1 || sy > gh - 2 || (sy & 1) == 0) continue;
                for (int sx = x - 1; sx <= x + 1; ++sx) {
                    if (sx < 1 || sx > gw - 2 || (sx & 1) == 0) continue;
                    const int pr = (sy - 1) / 2;
                    const int pc = (sx - 1) / 2;
                    const std::int32_t pixel = pr * image.width + pc;
                    const double v = filtration_value(image.pixels[static_cast<std::size_t>(pixel)], orientation);
                    if (v < best || (v == best && pixel < best_pixel)) {
                        best = v;
                        best_pixel = pixel;
                    }
                }
            }
            cell.value = best;
            cell.provenance = best_pixel;
        }
    }
    return cx;
}

} // namespace topocode

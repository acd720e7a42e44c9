// Independent reference implementations used only by tests. They share no
// code with the library paths they check.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "topocode/image.hpp"

namespace oracle {

struct Bar {
    double birth = 0.0;
    double death = 0.0;
};

// H0 barcode of the sublevel/superlevel filtration by a union-find sweep over
// pixels in increasing filtration order, 8-connectivity, elder rule. Pixel
// values must be distinct. Returns finite bars sorted by (birth, death) plus
// the essential birth.
struct H0Barcode {
    std::vector<Bar> finite;
    double essential_birth = 0.0;
};

inline H0Barcode h0_union_find(const topocode::GrayImage& image, topocode::Orientation orientation) {
    const int w = image.width, h = image.height;
    std::vector<double> value(image.pixels.size());
    for (std::size_t i = 0; i < value.size(); ++i)
        value[i] = topocode::filtration_value(image.pixels[i], orientation);

    std::vector<int> order(value.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return value[static_cast<std::size_t>(a)] < value[static_cast<std::size_t>(b)]; });

    std::vector<int> parent(value.size(), -1); // -1: not yet added
    std::vector<double> component_birth(value.size(), 0.0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };

    H0Barcode barcode;
    for (int pixel : order) {
        parent[static_cast<std::size_t>(pixel)] = pixel;
        component_birth[static_cast<std::size_t>(pixel)] = value[static_cast<std::size_t>(pixel)];
        const int r = pixel / w, c = pixel % w;
        for (int dr = -1; dr <= 1; ++dr) {
            for (int dc = -1; dc <= 1; ++dc) {
                if (dr == 0 && dc == 0) continue;
                const int nr = r + dr, nc = c + dc;
                if (nr < 0 || nr >= h || nc < 0 || nc >= w) continue;
                const int neighbor = nr * w + nc;
                if (parent[static_cast<std::size_t>(neighbor)] < 0) continue; // not yet in the sublevel set
                const int root_a = find(pixel);
                const int root_b = find(neighbor);
                if (root_a == root_b) continue;
                // elder rule: the younger component dies now
                const int old_root = component_birth[static_cast<std::size_t>(root_a)] <= component_birth[static_cast<std::size_t>(root_b)] ? root_a : root_b;
                const int young_root = old_root == root_a ? root_b : root_a;
                const double death = value[static_cast<std::size_t>(pixel)];
                if (component_birth[static_cast<std::size_t>(young_root)] < death)
                    barcode.finite.push_back({component_birth[static_cast<std::size_t>(young_root)], death});
                parent[static_cast<std::size_t>(young_root)] = old_root;
            }
        }
    }
    barcode.essential_birth = value[static_cast<std::size_t>(order.front())];
    std::sort(barcode.finite.begin(), barcode.finite.end(), [](const Bar& a, const Bar& b) {
        if (a.birth != b.birth) return a.birth < b.birth;
        return a.death < b.death;
    });
    return barcode;
}

// GF(2) rank by Gaussian elimination over bit rows.
inline int gf2_rank(std::vector<std::vector<std::uint64_t>> rows, int columns) {
    int rank = 0;
    const int m = static_cast<int>(rows.size());
    for (int col = 0; col < columns && rank < m; ++col) {
        int pivot = -1;
        for (int r = rank; r < m; ++r) {
            if ((rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col) / 64] >> (col % 64)) & 1) { pivot = r; break; }
        }
        if (pivot < 0) continue;
        std::swap(rows[static_cast<std::size_t>(rank)], rows[static_cast<std::size_t>(pivot)]);
        for (int r = 0; r < m; ++r) {
            if (r == rank) continue;
            if ((rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col) / 64] >> (col % 64)) & 1)
                for (std::size_t word = 0; word < rows[static_cast<std::size_t>(r)].size(); ++word)
                    rows[static_cast<std::size_t>(r)][word] ^= rows[static_cast<std::size_t>(rank)][word];
        }
        ++rank;
    }
    return rank;
}

// Betti numbers (b0, b1) of the sublevel cubical complex at `threshold`,
// computed from scratch via ranks of the boundary matrices over Z/2.
struct Betti {
    int b0 = 0;
    int b1 = 0;
};

inline Betti betti_bruteforce(const topocode::GrayImage& image, topocode::Orientation orientation,
                              double threshold) {
    const int w = image.width, h = image.height;
    const int gw = 2 * w + 1, gh = 2 * h + 1;

    auto pixel_value = [&](int pr, int pc) {
        return topocode::filtration_value(image.at(pr, pc), orientation);
    };
    auto cell_value = [&](int y, int x) {
        double best = 2.0;
        for (int sy = y - 1; sy <= y + 1; ++sy) {
            if (sy < 1 || sy > gh - 2 || (sy % 2) == 0) continue;
            for (int sx = x - 1; sx <= x + 1; ++sx) {
                if (sx < 1 || sx > gw - 2 || (sx % 2) == 0) continue;
                best = std::min(best, pixel_value((sy - 1) / 2, (sx - 1) / 2));
            }
        }
        return best;
    };

    std::map<std::pair<int, int>, int> vertex_id, edge_id, square_id;
    for (int y = 0; y < gh; ++y) {
        for (int x = 0; x < gw; ++x) {
            if (cell_value(y, x) > threshold) continue;
            const int dim = (y % 2) + (x % 2);
            if (dim == 0) vertex_id[{y, x}] = static_cast<int>(vertex_id.size());
            else if (dim == 1) edge_id[{y, x}] = static_cast<int>(edge_id.size());
            else square_id[{y, x}] = static_cast<int>(square_id.size());
        }
    }

    const int v = static_cast<int>(vertex_id.size());
    const int e = static_cast<int>(edge_id.size());
    const int f = static_cast<int>(square_id.size());
    const std::size_t vwords = (static_cast<std::size_t>(v) + 63) / 64;
    const std::size_t ewords = (static_cast<std::size_t>(e) + 63) / 64;

    // boundary_1: one row per edge over vertex columns
    std::vector<std::vector<std::uint64_t>> boundary_1(static_cast<std::size_t>(e),
                                                       std::vector<std::uint64_t>(vwords, 0));
    for (const auto& [coords, id] : edge_id) {
        const auto [y, x] = coords;
        const std::pair<int, int> ends[2] = {
            (y % 2) ? std::pair{y - 1, x} : std::pair{y, x - 1},
            (y % 2) ? std::pair{y + 1, x} : std::pair{y, x + 1},
        };
        for (const auto& end : ends) {
            const int vid = vertex_id.at(end);
            boundary_1[static_cast<std::size_t>(id)][static_cast<std::size_t>(vid) / 64] ^= 1ULL << (vid % 64);
        }
    }
    // boundary_2: one row per square over edge columns
    std::vector<std::vector<std::uint64_t>> boundary_2(static_cast<std::size_t>(f),
                                                       std::vector<std::uint64_t>(ewords ? ewords : 1, 0));
    for (const auto& [coords, id] : square_id) {
        const auto [y, x] = coords;
        const std::pair<int, int> sides[4] = {{y - 1, x}, {y + 1, x}, {y, x - 1}, {y, x + 1}};
        for (const auto& side : sides) {
            const int eid = edge_id.at(side);
            boundary_2[static_cast<std::size_t>(id)][static_cast<std::size_t>(eid) / 64] ^= 1ULL << (eid % 64);
        }
    }

    const int rank_1 = gf2_rank(boundary_1, v);
    const int rank_2 = gf2_rank(boundary_2, e);
    Betti betti;
    betti.b0 = v - rank_1;
    betti.b1 = (e - rank_1) - rank_2;
    return betti;
}

// Exhaustive minimum over all augmented matchings between two finite-pair
// lists: every subset of pairs may be matched injectively, the rest projects
// to the diagonal. p = infinity combines by max.
inline double wasserstein_bruteforce(const std::vector<std::pair<double, double>>& a,
                                     const std::vector<std::pair<double, double>>& b, double p) {
    const bool bottleneck = std::isinf(p);
    const std::size_t m = a.size();
    const std::size_t n = b.size();

    auto linf = [](const std::pair<double, double>& x, const std::pair<double, double>& y) {
        return std::max(std::abs(x.first - y.first), std::abs(x.second - y.second));
    };
    auto diag = [](const std::pair<double, double>& x) { return (x.second - x.first) / 2.0; };

    std::vector<int> assignment(m, -1); // -1: diagonal
    std::vector<char> used(n, 0);
    double best = std::numeric_limits<double>::infinity();

    auto combine = [&](double total, double term) {
        return bottleneck ? std::max(total, term) : total + std::pow(term, p);
    };

    std::function<void(std::size_t, double)> search = [&](std::size_t i, double total) {
        if (i == m) {
            for (std::size_t j = 0; j < n; ++j)
                if (!used[j]) total = combine(total, diag(b[j]));
            best = std::min(best, total);
            return;
        }
        search(i + 1, combine(total, diag(a[i]))); // to the diagonal
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j]) continue;
            used[j] = 1;
            search(i + 1, combine(total, linf(a[i], b[j])));
            used[j] = 0;
        }
    };
    search(0, bottleneck ? 0.0 : 0.0);
    if (bottleneck) return best;
    return best == 0.0 ? 0.0 : std::pow(best, 1.0 / p);
}

// Gaussian tail probability Q(x)
inline double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

} // namespace oracle

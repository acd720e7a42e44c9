#include "topocode/persistence.hpp"

#include <algorithm>
#include <numeric>

#include "topocode/errors.hpp"

namespace topocode {

namespace {

// xor-merge of two sorted index lists (Z/2 column addition)
std::vector<int> add_columns(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) out.push_back(a[i++]);
        else if (b[j] < a[i]) out.push_back(b[j++]);
        else { ++i; ++j; }
    }
    out.insert(out.end(), a.begin() + i, a.end());
    out.insert(out.end(), b.begin() + j, b.end());
    return out;
}

} // namespace

PersistenceDiagram compute_persistence(const CubicalComplex& cx) {
    const int n = cx.cell_count();

    for (int c = 0; c < n; ++c) {
        int bcount = 0;
        const auto faces = cx.boundary(c, bcount);
        for (int k = 0; k < bcount; ++k)
            if (cx.cells[static_cast<std::size_t>(faces[k])].value > cx.cells[static_cast<std::size_t>(c)].value)
                throw FiltrationError("compute_persistence: face value exceeds coface value");
    }

    // filtration order: (value, dimension, cell index)
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const Cell& ca = cx.cells[static_cast<std::size_t>(a)];
        const Cell& cb = cx.cells[static_cast<std::size_t>(b)];
        if (ca.value != cb.value) return ca.value < cb.value;
        if (ca.dim != cb.dim) return ca.dim < cb.dim;
        return a < b;
    });
    std::vector<int> position(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p) position[static_cast<std::size_t>(order[static_cast<std::size_t>(p)])] = p;

    // reduction state, indexed by filtration position
    std::vector<int> pivot_owner(static_cast<std::size_t>(n), -1);  // low position -> reduced column position
    std::vector<std::vector<int>> reduced(static_cast<std::size_t>(n));
    std::vector<char> cleared(static_cast<std::size_t>(n), 0); // positions known to reduce to zero
    std::vector<char> paired(static_cast<std::size_t>(n), 0);

    struct Pairing { int birth_cell; int death_cell; int dim; };
    std::vector<Pairing> pairings;
    pairings.reserve(static_cast<std::size_t>(n) / 2);

    for (int dim = 2; dim >= 1; --dim) {
        for (int p = 0; p < n; ++p) {
            const int cell = order[static_cast<std::size_t>(p)];
            if (cx.cells[static_cast<std::size_t>(cell)].dim != dim) continue;
            if (cleared[static_cast<std::size_t>(p)]) continue;

            int bcount = 0;
            const auto faces = cx.boundary(cell, bcount);
            std::vector<int> column;
            column.reserve(static_cast<std::size_t>(bcount));
            for (int k = 0; k < bcount; ++k) column.push_back(position[static_cast<std::size_t>(faces[k])]);
            std::sort(column.begin(), column.end());

            while (!column.empty()) {
                const int low = column.back();
                const int owner = pivot_owner[static_cast<std::size_t>(low)];
                if (owner < 0) {
                    pivot_owner[static_cast<std::size_t>(low)] = p;
                    cleared[static_cast<std::size_t>(low)] = 1; // the birth cell's own column reduces to zero
                    paired[static_cast<std::size_t>(low)] = 1;
                    paired[static_cast<std::size_t>(p)] = 1;
                    pairings.push_back({order[static_cast<std::size_t>(low)], cell, dim - 1});
                    break;
                }
                column = add_columns(column, reduced[static_cast<std::size_t>(owner)]);
            }
            reduced[static_cast<std::size_t>(p)] = std::move(column);
        }
    }

    PersistenceDiagram diagram;
    for (const Pairing& pr : pairings) {
        if (pr.dim > 1) continue;
        const Cell& birth = cx.cells[static_cast<std::size_t>(pr.birth_cell)];
        const Cell& death = cx.cells[static_cast<std::size_t>(pr.death_cell)];
        if (death.value <= birth.value) continue; // zero persistence
        diagram.group(pr.dim).finite.push_back({birth.value, death.value, birth.provenance, death.provenance});
    }

    // unpaired cells carry essential classes
    for (int p = 0; p < n; ++p) {
        if (paired[static_cast<std::size_t>(p)]) continue;
        const int cell = order[static_cast<std::size_t>(p)];
        const Cell& c = cx.cells[static_cast<std::size_t>(cell)];
        if (c.dim > 1) continue;
        diagram.group(c.dim).essential.push_back({c.value, c.provenance});
    }

    for (auto& group : diagram.groups) {
        std::sort(group.finite.begin(), group.finite.end(), [](const FinitePair& a, const FinitePair& b) {
            if (a.birth != b.birth) return a.birth < b.birth;
            if (a.death != b.death) return a.death < b.death;
            return a.birth_pixel < b.birth_pixel;
        });
        std::sort(group.essential.begin(), group.essential.end(), [](const EssentialClass& a, const EssentialClass& b) {
            if (a.birth != b.birth) return a.birth < b.birth;
            return a.birth_pixel < b.birth_pixel;
        });
    }
    return diagram;
}

PersistenceDiagram diagram_of(const GrayImage& image, Orientation orientation) {
    return compute_persistence(build_complex(image, orientation));
}

} // namespace topocode

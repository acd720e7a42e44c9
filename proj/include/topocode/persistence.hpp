#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "topocode/cubical.hpp"
#include "topocode/image.hpp"

namespace topocode {

constexpr std::int32_t kNoPixel = -1;

// Finite birth-death pair with pixel provenance for both coordinates.
// Provenance is kNoPixel for diagrams reconstructed from the wire.
struct FinitePair {
    double birth = 0.0;
    double death = 0.0;
    std::int32_t birth_pixel = kNoPixel;
    std::int32_t death_pixel = kNoPixel;

    double persistence() const { return death - birth; }
    bool operator==(const FinitePair&) const = default;
};

// Class with infinite death (the connected component of the full image).
struct EssentialClass {
    double birth = 0.0;
    std::int32_t birth_pixel = kNoPixel;

    bool operator==(const EssentialClass&) const = default;
};

struct DiagramGroup {
    std::vector<FinitePair> finite;
    std::vector<EssentialClass> essential;

    bool operator==(const DiagramGroup&) const = default;
};

// Persistence diagram restricted to H0 and H1.
struct PersistenceDiagram {
    std::array<DiagramGroup, 2> groups;

    DiagramGroup& group(int h) { return groups[static_cast<std::size_t>(h)]; }
    const DiagramGroup& group(int h) const { return groups[static_cast<std::size_t>(h)]; }

    bool operator==(const PersistenceDiagram&) const = default;
};

// Standard persistence via Z/2 boundary-matrix column reduction with the
// clearing optimization; cells ordered by (value, dimension, index).
// Zero-persistence pairs are dropped. Throws FiltrationError when a face
// exceeds a coface's value.
PersistenceDiagram compute_persistence(const CubicalComplex& complex);

// Convenience: build_complex + compute_persistence.
PersistenceDiagram diagram_of(const GrayImage& image, Orientation orientation);

} // namespace topocode

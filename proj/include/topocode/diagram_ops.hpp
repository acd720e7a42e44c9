#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "topocode/persistence.hpp"

namespace topocode {

// Sum of (death - birth) over the finite pairs of dimension h; essential
// classes are excluded. Dimensions outside {0, 1} yield 0.
double total_persistence(const PersistenceDiagram& diagram, int h);

// Remove, independently per dimension, every finite pair whose persistence is
// strictly below alpha * total_persistence of that dimension. Essential
// classes are always retained. alpha must lie in [0, 1].
PersistenceDiagram denoise(const PersistenceDiagram& diagram, double alpha);

struct QuantizedPair {
    std::uint8_t birth = 0;
    std::uint8_t death = 0;
    bool operator==(const QuantizedPair&) const = default;
};

struct QuantizedGroup {
    std::vector<QuantizedPair> finite;
    std::vector<std::uint8_t> essential;
    bool operator==(const QuantizedGroup&) const = default;
};

// Wire representation of a diagram: every coordinate on the 8-bit grid k/255.
struct QuantizedDiagram {
    std::array<QuantizedGroup, 2> groups;

    QuantizedGroup& group(int h) { return groups[static_cast<std::size_t>(h)]; }
    const QuantizedGroup& group(int h) const { return groups[static_cast<std::size_t>(h)]; }
    bool operator==(const QuantizedDiagram&) const = default;

    // coordinate bytes carried on the wire: 2 per finite pair + 1 per essential
    std::size_t coordinate_bytes() const;
};

// Map every coordinate to round(v * 255). Throws ValueError when a coordinate
// lies outside [0, 1].
QuantizedDiagram quantize(const PersistenceDiagram& diagram);

// Map bytes back to k/255. Pairs whose birth and death collapsed to the same
// level are dropped (death > birth invariant). Provenance is absent.
PersistenceDiagram dequantize(const QuantizedDiagram& diagram);

} // namespace topocode

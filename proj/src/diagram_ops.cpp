#include "topocode/diagram_ops.hpp"

#include <cmath>

#include "topocode/errors.hpp"

namespace topocode {

double total_persistence(const PersistenceDiagram& diagram, int h) {
    if (h < 0 || h > 1) return 0.0;
    double total = 0.0;
    for (const FinitePair& pair : diagram.group(h).finite) total += pair.persistence();
    return total;
}

PersistenceDiagram denoise(const PersistenceDiagram& diagram, double alpha) {
    if (alpha < 0.0 || alpha > 1.0) throw ValueError("denoise: alpha outside [0, 1]");
    PersistenceDiagram out;
    for (int h = 0; h <= 1; ++h) {
        const double floor = alpha * total_persistence(diagram, h);
        DiagramGroup& group = out.group(h);
        for (const FinitePair& pair : diagram.group(h).finite)
            if (pair.persistence() >= floor) group.finite.push_back(pair);
        group.essential = diagram.group(h).essential;
    }
    return out;
}

namespace {

std::uint8_t quantize_coord(double v) {
    if (v < 0.0 || v > 1.0) throw ValueError("quantize: coordinate outside [0, 1]");
    return static_cast<std::uint8_t>(std::lround(v * 255.0));
}

} // namespace

std::size_t QuantizedDiagram::coordinate_bytes() const {
    std::size_t bytes = 0;
    for (const QuantizedGroup& g : groups) bytes += 2 * g.finite.size() + g.essential.size();
    return bytes;
}

QuantizedDiagram quantize(const PersistenceDiagram& diagram) {
    QuantizedDiagram out;
    for (int h = 0; h <= 1; ++h) {
        for (const FinitePair& pair : diagram.group(h).finite)
            out.group(h).finite.push_back({quantize_coord(pair.birth), quantize_coord(pair.death)});
        for (const EssentialClass& e : diagram.group(h).essential)
            out.group(h).essential.push_back(quantize_coord(e.birth));
    }
    return out;
}

PersistenceDiagram dequantize(const QuantizedDiagram& diagram) {
    PersistenceDiagram out;
    for (int h = 0; h <= 1; ++h) {
        for (const QuantizedPair& pair : diagram.group(h).finite) {
            if (pair.death <= pair.birth) continue; // collapsed on the 8-bit grid
            out.group(h).finite.push_back({pair.birth / 255.0, pair.death / 255.0, kNoPixel, kNoPixel});
        }
        for (std::uint8_t e : diagram.group(h).essential)
            out.group(h).essential.push_back({e / 255.0, kNoPixel});
    }
    return out;
}

} // namespace topocode

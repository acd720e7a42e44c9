#pragma once

#include <optional>
#include <vector>

#include "topocode/image.hpp"
#include "topocode/persistence.hpp"

namespace topocode {

struct DetectionConfig {
    std::vector<double> alphas{0.0, 0.15, 0.30, 0.45}; // ascending, in [0, 1]
    double p = 2.0;
    double epsilon = 0.05; // acceptance threshold on the H0+H1 distance
};

struct DetectionRow {
    double alpha = 0.0;
    double distance_total = 0.0;
    double distance_h0 = 0.0;
    double distance_h1 = 0.0;
};

struct DetectionReport {
    std::vector<DetectionRow> rows; // one per configured alpha
    bool accepted = false;          // distance < epsilon at some alpha
    std::optional<double> significance; // 1 - alpha at the first accepting alpha
};

// Compare the received image's diagram against the (dequantized) Topocode
// over the alpha schedule: both diagrams are denoised at each alpha and the
// H0+H1 p-Wasserstein distance is reported. Accept when any alpha brings the
// distance under epsilon; otherwise the verdict is retransmit.
DetectionReport detect(const GrayImage& received, const PersistenceDiagram& topocode,
                       Orientation orientation, const DetectionConfig& config);

struct CorrectionConfig {
    double gamma = 100.0;       // weight of the Wasserstein term
    double p = 2.0;
    std::vector<int> dims{0, 1};
    double step = 0.01;
    int iterations = 300;
    double tolerance = 1e-6;    // minimum best-loss improvement over 10 steps
};

struct LossGradient {
    double loss = 0.0;
    double distance_term = 0.0;    // sum of per-dimension distances, unweighted
    double regularizer_term = 0.0; // sum of min(|x|, |1-x|)
    std::vector<double> gradient;  // per pixel
};

// Loss gamma * sum_h d_{w,p,h}(target, D(candidate)) + sum_i min(|x_i|,|1-x_i|)
// and its subgradient. The candidate's diagram and the optimal matching are
// recomputed from scratch; matched-pair costs differentiate through the
// provenance pixels (L-infinity subgradient flows to the coordinate with the
// larger difference, ties to birth), diagonal matches push birth and death
// toward their mean.
LossGradient loss_and_gradient(const GrayImage& candidate, const PersistenceDiagram& target,
                               Orientation orientation, const CorrectionConfig& config);

struct CorrectionResult {
    GrayImage corrected;            // best-loss iterate
    std::vector<double> loss_trace; // loss at every evaluated iterate
    int best_iteration = 0;
};

// Fixed-step subgradient descent on the correction loss with pixels clamped
// to [0, 1]; stops at the iteration cap or when the best loss improves by
// less than `tolerance` over 10 consecutive steps.
CorrectionResult correct(const GrayImage& received, const PersistenceDiagram& topocode,
                         Orientation orientation, const CorrectionConfig& config);

} // namespace topocode

#include "topocode/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "topocode/diagram_ops.hpp"
#include "topocode/errors.hpp"
#include "topocode/wasserstein.hpp"

namespace topocode {

DetectionReport detect(const GrayImage& received, const PersistenceDiagram& topocode,
                       Orientation orientation, const DetectionConfig& config) {
    if (config.epsilon < 0.0) throw ConfigError("detect: epsilon must be nonnegative");
    if (config.alphas.empty()) throw ConfigError("detect: alpha schedule is empty");
    for (std::size_t i = 0; i < config.alphas.size(); ++i) {
        if (config.alphas[i] < 0.0 || config.alphas[i] > 1.0)
            throw ConfigError("detect: alpha outside [0, 1]");
        if (i > 0 && config.alphas[i] < config.alphas[i - 1])
            throw ConfigError("detect: alphas must be ascending");
    }

    const PersistenceDiagram received_diagram = diagram_of(received, orientation);

    DetectionReport report;
    for (double alpha : config.alphas) {
        const PersistenceDiagram a = denoise(topocode, alpha);
        const PersistenceDiagram b = denoise(received_diagram, alpha);
        DetectionRow row;
        row.alpha = alpha;
        row.distance_h0 = wasserstein(a, b, 0, config.p).distance;
        row.distance_h1 = wasserstein(a, b, 1, config.p).distance;
        row.distance_total = row.distance_h0 + row.distance_h1;
        report.rows.push_back(row);
        if (!report.accepted && row.distance_total < config.epsilon) {
            report.accepted = true;
            report.significance = 1.0 - alpha;
        }
    }
    return report;
}

namespace {

// d/de of (sum e_i^p)^(1/p) given the edge's ground cost and the total
double edge_weight(double ground, double distance, double p) {
    if (distance <= 0.0) return 0.0;
    if (p == 1.0) return 1.0;
    if (p == 2.0) return ground / distance;
    return std::pow(ground / distance, p - 1.0);
}

inline double sign_of(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

// subgradient of min(|x|, |1-x|): 0 exactly at the minima 0 and 1,
// the |x| branch at the 0.5 tie
double regularizer_slope(double x) {
    const double toward_zero = std::abs(x);
    const double toward_one = std::abs(1.0 - x);
    if (toward_zero <= toward_one) return sign_of(x);
    return -sign_of(1.0 - x);
}

} // namespace

LossGradient loss_and_gradient(const GrayImage& candidate, const PersistenceDiagram& target,
                               Orientation orientation, const CorrectionConfig& config) {
    if (config.gamma < 0.0) throw ConfigError("loss_and_gradient: gamma must be nonnegative");
    if (!(config.p >= 1.0)) throw ConfigError("loss_and_gradient: p must be >= 1");

    LossGradient out;
    out.gradient.assign(candidate.pixels.size(), 0.0);

    const PersistenceDiagram diagram = diagram_of(candidate, orientation);
    // filtration value is pixel (sublevel) or 1 - pixel (superlevel)
    const double chain = orientation == Orientation::superlevel ? -1.0 : 1.0;

    for (int h : config.dims) {
        const WassersteinResult result = wasserstein(target, diagram, h, config.p);
        out.distance_term += result.distance;
        if (config.gamma == 0.0 || result.distance <= 0.0) continue;

        const DiagramGroup& target_group = target.group(h);
        const DiagramGroup& candidate_group = diagram.group(h);
        const DiagramMatching& matching = result.matching;

        for (std::size_t e = 0; e < matching.matched.size(); ++e) {
            const auto [ti, ci] = matching.matched[e];
            const FinitePair& t = target_group.finite[static_cast<std::size_t>(ti)];
            const FinitePair& c = candidate_group.finite[static_cast<std::size_t>(ci)];
            const double w = config.gamma * edge_weight(matching.matched_costs[e], result.distance, config.p);
            const double birth_delta = c.birth - t.birth;
            const double death_delta = c.death - t.death;
            // L-infinity subgradient: all of it on the larger coordinate gap
            if (std::abs(birth_delta) >= std::abs(death_delta)) {
                if (c.birth_pixel != kNoPixel)
                    out.gradient[static_cast<std::size_t>(c.birth_pixel)] += w * sign_of(birth_delta) * chain;
            } else {
                if (c.death_pixel != kNoPixel)
                    out.gradient[static_cast<std::size_t>(c.death_pixel)] += w * sign_of(death_delta) * chain;
            }
        }
        // candidate pairs sent to the diagonal collapse toward their mean
        for (std::size_t e = 0; e < matching.to_diagonal_2.size(); ++e) {
            const int ci = matching.to_diagonal_2[e];
            const FinitePair& c = candidate_group.finite[static_cast<std::size_t>(ci)];
            const double w = config.gamma * edge_weight(matching.diagonal_costs_2[e], result.distance, config.p);
            if (c.birth_pixel != kNoPixel)
                out.gradient[static_cast<std::size_t>(c.birth_pixel)] += w * -0.5 * chain;
            if (c.death_pixel != kNoPixel)
                out.gradient[static_cast<std::size_t>(c.death_pixel)] += w * 0.5 * chain;
        }
        // target pairs on the diagonal have no candidate dependence

        // essentials are matched by sorted birth; replicate that pairing
        std::vector<std::size_t> target_order(target_group.essential.size());
        std::vector<std::size_t> candidate_order(candidate_group.essential.size());
        for (std::size_t i = 0; i < target_order.size(); ++i) target_order[i] = i;
        for (std::size_t i = 0; i < candidate_order.size(); ++i) candidate_order[i] = i;
        std::sort(target_order.begin(), target_order.end(), [&](std::size_t a, std::size_t b) {
            return target_group.essential[a].birth < target_group.essential[b].birth;
        });
        std::sort(candidate_order.begin(), candidate_order.end(), [&](std::size_t a, std::size_t b) {
            return candidate_group.essential[a].birth < candidate_group.essential[b].birth;
        });
        const std::size_t common = std::min(target_order.size(), candidate_order.size());
        for (std::size_t i = 0; i < common; ++i) {
            const EssentialClass& t = target_group.essential[target_order[i]];
            const EssentialClass& c = candidate_group.essential[candidate_order[i]];
            const double ground = std::abs(c.birth - t.birth);
            const double w = config.gamma * edge_weight(ground, result.distance, config.p);
            if (c.birth_pixel != kNoPixel)
                out.gradient[static_cast<std::size_t>(c.birth_pixel)] += w * sign_of(c.birth - t.birth) * chain;
        }
    }

    for (std::size_t i = 0; i < candidate.pixels.size(); ++i) {
        const double x = candidate.pixels[i];
        out.regularizer_term += std::min(std::abs(x), std::abs(1.0 - x));
        out.gradient[i] += regularizer_slope(x);
    }
    out.loss = config.gamma * out.distance_term + out.regularizer_term;
    return out;
}

CorrectionResult correct(const GrayImage& received, const PersistenceDiagram& topocode,
                         Orientation orientation, const CorrectionConfig& config) {
    if (config.iterations < 1) throw ConfigError("correct: iterations must be >= 1");
    if (config.step <= 0.0) throw ConfigError("correct: step must be positive");

    GrayImage current = received;
    CorrectionResult result;
    result.corrected = received;
    double best_loss = std::numeric_limits<double>::infinity();
    std::vector<double> best_history;

    for (int iteration = 0; iteration < config.iterations; ++iteration) {
        const LossGradient lg = loss_and_gradient(current, topocode, orientation, config);
        result.loss_trace.push_back(lg.loss);
        if (lg.loss < best_loss) {
            best_loss = lg.loss;
            result.corrected = current;
            result.best_iteration = iteration;
        }
        best_history.push_back(best_loss);

        const std::size_t lag = 10;
        if (best_history.size() > lag &&
            best_history[best_history.size() - 1 - lag] - best_loss < config.tolerance)
            break;

        for (std::size_t i = 0; i < current.pixels.size(); ++i)
            current.pixels[i] = std::clamp(current.pixels[i] - config.step * lg.gradient[i], 0.0, 1.0);
    }
    return result;
}

} // namespace topocode

#pragma once

#include <limits>
#include <utility>
#include <vector>

#include "topocode/persistence.hpp"

namespace topocode {

// order value standing for the bottleneck distance
constexpr double kBottleneck = std::numeric_limits<double>::infinity();

// L-infinity distance from (birth, death) to its nearest diagonal point.
inline double diagonal_cost(double birth, double death) { return (death - birth) / 2.0; }

inline double linf_distance(const FinitePair& a, const FinitePair& b) {
    const double db = a.birth > b.birth ? a.birth - b.birth : b.birth - a.birth;
    const double dd = a.death > b.death ? a.death - b.death : b.death - a.death;
    return db > dd ? db : dd;
}

// Optimal bijection between two augmented diagrams of one dimension.
// Ground metric is L-infinity; unmatched pairs project to the diagonal.
struct DiagramMatching {
    std::vector<std::pair<int, int>> matched;  // (index in D1, index in D2)
    std::vector<int> to_diagonal_1;
    std::vector<int> to_diagonal_2;
    std::vector<double> matched_costs;         // ground distance per matched edge
    std::vector<double> diagonal_costs_1;
    std::vector<double> diagonal_costs_2;
    double order = 2.0;                        // p, kBottleneck for p = infinity
    double distance = 0.0;
};

struct WassersteinResult {
    double distance = 0.0;
    DiagramMatching matching;
};

// p-Wasserstein (p >= 1) or bottleneck (p = kBottleneck) distance between the
// dimension-h groups, solved exactly: Hungarian assignment on the augmented
// cost matrix for finite p, binary search over candidate costs with a
// maximum-bipartite-matching feasibility test for the bottleneck. Essential
// classes are matched to essential classes by birth; a count surplus adds a
// fixed penalty of 1.0 per unmatched essential.
WassersteinResult wasserstein(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                              int h, double p);

// Sum of per-dimension distances over `dims`.
double total_distance(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                      double p, const std::vector<int>& dims);

} // namespace topocode

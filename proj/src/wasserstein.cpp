#include "topocode/wasserstein.hpp"

#include <algorithm>
#include <cmath>

#include "topocode/assignment.hpp"
#include "topocode/errors.hpp"

namespace topocode {

namespace {

double power_cost(double ground, double p) {
    if (p == 1.0) return ground;
    if (p == 2.0) return ground * ground;
    return std::pow(ground, p);
}

// essential classes matched by sorted birth order; surplus costs 1.0 each
std::vector<double> essential_ground_costs(const DiagramGroup& g1, const DiagramGroup& g2) {
    std::vector<double> b1, b2;
    for (const EssentialClass& e : g1.essential) b1.push_back(e.birth);
    for (const EssentialClass& e : g2.essential) b2.push_back(e.birth);
    std::sort(b1.begin(), b1.end());
    std::sort(b2.begin(), b2.end());
    std::vector<double> costs;
    const std::size_t common = std::min(b1.size(), b2.size());
    for (std::size_t i = 0; i < common; ++i) costs.push_back(std::abs(b1[i] - b2[i]));
    for (std::size_t i = common; i < std::max(b1.size(), b2.size()); ++i) costs.push_back(1.0);
    return costs;
}

// deterministic total: power terms summed in sorted order
double rooted_sum(std::vector<double>& power_terms, double p) {
    std::sort(power_terms.begin(), power_terms.end());
    double total = 0.0;
    for (double t : power_terms) total += t;
    if (total == 0.0) return 0.0;
    if (p == 1.0) return total;
    if (p == 2.0) return std::sqrt(total);
    return std::pow(total, 1.0 / p);
}

DiagramMatching solve_finite_p(const DiagramGroup& g1, const DiagramGroup& g2, double p) {
    const int m1 = static_cast<int>(g1.finite.size());
    const int m2 = static_cast<int>(g2.finite.size());
    const int n = m1 + m2;

    DiagramMatching matching;
    matching.order = p;
    if (n == 0) return matching;

    std::vector<std::vector<double>> cost(static_cast<std::size_t>(n),
                                          std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < m1; ++i) {
        for (int j = 0; j < m2; ++j)
            cost[i][static_cast<std::size_t>(j)] = power_cost(linf_distance(g1.finite[static_cast<std::size_t>(i)],
                                                                            g2.finite[static_cast<std::size_t>(j)]), p);
        const double diag = power_cost(diagonal_cost(g1.finite[static_cast<std::size_t>(i)].birth,
                                                     g1.finite[static_cast<std::size_t>(i)].death), p);
        for (int k = m2; k < n; ++k) cost[i][static_cast<std::size_t>(k)] = diag;
    }
    for (int k = m1; k < n; ++k) {
        for (int j = 0; j < m2; ++j)
            cost[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] =
                power_cost(diagonal_cost(g2.finite[static_cast<std::size_t>(j)].birth,
                                         g2.finite[static_cast<std::size_t>(j)].death), p);
    }

    const AssignmentResult assignment = solve_assignment(cost);
    for (int i = 0; i < m1; ++i) {
        const int j = assignment.row_to_col[static_cast<std::size_t>(i)];
        if (j < m2) {
            matching.matched.emplace_back(i, j);
            matching.matched_costs.push_back(linf_distance(g1.finite[static_cast<std::size_t>(i)],
                                                           g2.finite[static_cast<std::size_t>(j)]));
        } else {
            matching.to_diagonal_1.push_back(i);
            matching.diagonal_costs_1.push_back(diagonal_cost(g1.finite[static_cast<std::size_t>(i)].birth,
                                                              g1.finite[static_cast<std::size_t>(i)].death));
        }
    }
    std::vector<char> col_matched(static_cast<std::size_t>(m2), 0);
    for (const auto& [i, j] : matching.matched) col_matched[static_cast<std::size_t>(j)] = 1;
    for (int j = 0; j < m2; ++j) {
        if (col_matched[static_cast<std::size_t>(j)]) continue;
        matching.to_diagonal_2.push_back(j);
        matching.diagonal_costs_2.push_back(diagonal_cost(g2.finite[static_cast<std::size_t>(j)].birth,
                                                          g2.finite[static_cast<std::size_t>(j)].death));
    }
    return matching;
}

// feasibility of the augmented assignment with every used edge cost <= t
bool bottleneck_feasible(const DiagramGroup& g1, const DiagramGroup& g2, double t,
                         DiagramMatching* out) {
    const int m1 = static_cast<int>(g1.finite.size());
    const int m2 = static_cast<int>(g2.finite.size());
    const int n = m1 + m2;
    if (n == 0) return true;

    // left: D1 pairs then D2 diagonal slots; right: D2 pairs then D1 slots
    BipartiteMatcher matcher(n, n);
    for (int i = 0; i < m1; ++i) {
        for (int j = 0; j < m2; ++j)
            if (linf_distance(g1.finite[static_cast<std::size_t>(i)], g2.finite[static_cast<std::size_t>(j)]) <= t)
                matcher.add_edge(i, j);
        if (diagonal_cost(g1.finite[static_cast<std::size_t>(i)].birth, g1.finite[static_cast<std::size_t>(i)].death) <= t)
            matcher.add_edge(i, m2 + i);
    }
    for (int k = 0; k < m2; ++k) {
        const int left = m1 + k;
        if (diagonal_cost(g2.finite[static_cast<std::size_t>(k)].birth, g2.finite[static_cast<std::size_t>(k)].death) <= t)
            matcher.add_edge(left, k);
        for (int i = 0; i < m1; ++i) matcher.add_edge(left, m2 + i); // slot-slot, cost 0
    }

    for (int left = 0; left < n; ++left)
        if (!matcher.augment_from(left)) return false;

    if (out != nullptr) {
        for (int i = 0; i < m1; ++i) {
            const int j = matcher.match_of_left()[static_cast<std::size_t>(i)];
            if (j < m2) {
                out->matched.emplace_back(i, j);
                out->matched_costs.push_back(linf_distance(g1.finite[static_cast<std::size_t>(i)],
                                                           g2.finite[static_cast<std::size_t>(j)]));
            } else {
                out->to_diagonal_1.push_back(i);
                out->diagonal_costs_1.push_back(diagonal_cost(g1.finite[static_cast<std::size_t>(i)].birth,
                                                              g1.finite[static_cast<std::size_t>(i)].death));
            }
        }
        for (int j = 0; j < m2; ++j) {
            const int partner = matcher.match_of_right()[static_cast<std::size_t>(j)];
            if (partner >= m1) {
                out->to_diagonal_2.push_back(j);
                out->diagonal_costs_2.push_back(diagonal_cost(g2.finite[static_cast<std::size_t>(j)].birth,
                                                              g2.finite[static_cast<std::size_t>(j)].death));
            }
        }
    }
    return true;
}

DiagramMatching solve_bottleneck(const DiagramGroup& g1, const DiagramGroup& g2) {
    DiagramMatching matching;
    matching.order = kBottleneck;

    std::vector<double> candidates{0.0};
    for (const FinitePair& a : g1.finite) {
        candidates.push_back(diagonal_cost(a.birth, a.death));
        for (const FinitePair& b : g2.finite) candidates.push_back(linf_distance(a, b));
    }
    for (const FinitePair& b : g2.finite) candidates.push_back(diagonal_cost(b.birth, b.death));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::size_t lo = 0, hi = candidates.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (bottleneck_feasible(g1, g2, candidates[mid], nullptr)) hi = mid;
        else lo = mid + 1;
    }
    bottleneck_feasible(g1, g2, candidates[lo], &matching);
    return matching;
}

} // namespace

WassersteinResult wasserstein(const PersistenceDiagram& d1, const PersistenceDiagram& d2, int h, double p) {
    if (!(p >= 1.0)) throw ValueError("wasserstein: order p must be >= 1");

    const DiagramGroup& g1 = d1.group(h);
    const DiagramGroup& g2 = d2.group(h);
    const std::vector<double> essential_costs = essential_ground_costs(g1, g2);

    WassersteinResult result;
    if (p == kBottleneck) {
        result.matching = solve_bottleneck(g1, g2);
        double worst = 0.0;
        for (double c : result.matching.matched_costs) worst = std::max(worst, c);
        for (double c : result.matching.diagonal_costs_1) worst = std::max(worst, c);
        for (double c : result.matching.diagonal_costs_2) worst = std::max(worst, c);
        for (double c : essential_costs) worst = std::max(worst, c);
        result.distance = worst;
    } else {
        result.matching = solve_finite_p(g1, g2, p);
        std::vector<double> terms;
        for (double c : result.matching.matched_costs) terms.push_back(power_cost(c, p));
        for (double c : result.matching.diagonal_costs_1) terms.push_back(power_cost(c, p));
        for (double c : result.matching.diagonal_costs_2) terms.push_back(power_cost(c, p));
        for (double c : essential_costs) terms.push_back(power_cost(c, p));
        result.distance = rooted_sum(terms, p);
    }
    result.matching.distance = result.distance;
    return result;
}

double total_distance(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                      double p, const std::vector<int>& dims) {
    double total = 0.0;
    for (int h : dims) total += wasserstein(d1, d2, h, p).distance;
    return total;
}

} // namespace topocode

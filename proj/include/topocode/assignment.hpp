#pragma once

#include <vector>

namespace topocode {

struct AssignmentResult {
    std::vector<int> row_to_col;
    double cost = 0.0;
};

// Exact minimum-cost perfect assignment on a square cost matrix
// (Hungarian method with potentials, O(n^3)). Empty input is valid.
AssignmentResult solve_assignment(const std::vector<std::vector<double>>& cost);

// Augmenting-path bipartite matcher used by the bottleneck search. Vertices
// already matched stay matched while further paths are added.
class BipartiteMatcher {
public:
    BipartiteMatcher(int left_count, int right_count);

    void add_edge(int left, int right);
    // try to match `left`; returns false when no augmenting path exists
    bool augment_from(int left);

    const std::vector<int>& match_of_left() const { return match_left_; }
    const std::vector<int>& match_of_right() const { return match_right_; }

private:
    bool try_path(int left, std::vector<char>& visited);

    std::vector<std::vector<int>> adjacency_;
    std::vector<int> match_left_;
    std::vector<int> match_right_;
};

} // namespace topocode

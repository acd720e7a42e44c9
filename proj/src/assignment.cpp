#include "topocode/assignment.hpp"

#include <cmath>
#include <limits>

namespace topocode {

AssignmentResult solve_assignment(const std::vector<std::vector<double>>& cost) {
    const int n = static_cast<int>(cost.size());
    AssignmentResult result;
    if (n == 0) return result;

    const double inf = std::numeric_limits<double>::infinity();

    // potentials formulation, 1-based scratch arrays
    std::vector<double> u(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<double> v(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<int> assigned_row(static_cast<std::size_t>(n) + 1, 0); // column -> row
    std::vector<int> way(static_cast<std::size_t>(n) + 1, 0);

    for (int i = 1; i <= n; ++i) {
        assigned_row[0] = i;
        int j0 = 0;
        std::vector<double> minv(static_cast<std::size_t>(n) + 1, inf);
        std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
        do {
            used[static_cast<std::size_t>(j0)] = 1;
            const int i0 = assigned_row[static_cast<std::size_t>(j0)];
            double delta = inf;
            int j1 = 0;
            for (int j = 1; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) continue;
                const double cur = cost[static_cast<std::size_t>(i0 - 1)][static_cast<std::size_t>(j - 1)]
                                   - u[static_cast<std::size_t>(i0)] - v[static_cast<std::size_t>(j)];
                if (cur < minv[static_cast<std::size_t>(j)]) {
                    minv[static_cast<std::size_t>(j)] = cur;
                    way[static_cast<std::size_t>(j)] = j0;
                }
                if (minv[static_cast<std::size_t>(j)] < delta) {
                    delta = minv[static_cast<std::size_t>(j)];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) {
                    u[static_cast<std::size_t>(assigned_row[static_cast<std::size_t>(j)])] += delta;
                    v[static_cast<std::size_t>(j)] -= delta;
                } else {
                    minv[static_cast<std::size_t>(j)] -= delta;
                }
            }
            j0 = j1;
        } while (assigned_row[static_cast<std::size_t>(j0)] != 0);
        do {
            const int j1 = way[static_cast<std::size_t>(j0)];
            assigned_row[static_cast<std::size_t>(j0)] = assigned_row[static_cast<std::size_t>(j1)];
            j0 = j1;
        } while (j0 != 0);
    }

    result.row_to_col.assign(static_cast<std::size_t>(n), -1);
    for (int j = 1; j <= n; ++j)
        if (assigned_row[static_cast<std::size_t>(j)] > 0)
            result.row_to_col[static_cast<std::size_t>(assigned_row[static_cast<std::size_t>(j)] - 1)] = j - 1;
    for (int i = 0; i < n; ++i)
        result.cost += cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(result.row_to_col[static_cast<std::size_t>(i)])];
    return result;
}

BipartiteMatcher::BipartiteMatcher(int left_count, int right_count)
    : adjacency_(static_cast<std::size_t>(left_count)),
      match_left_(static_cast<std::size_t>(left_count), -1),
      match_right_(static_cast<std::size_t>(right_count), -1) {}

void BipartiteMatcher::add_edge(int left, int right) {
    adjacency_[static_cast<std::size_t>(left)].push_back(right);
}

bool BipartiteMatcher::augment_from(int left) {
    if (match_left_[static_cast<std::size_t>(left)] >= 0) return true;
    std::vector<char> visited(match_right_.size(), 0);
    return try_path(left, visited);
}

bool BipartiteMatcher::try_path(int left, std::vector<char>& visited) {
    for (int right : adjacency_[static_cast<std::size_t>(left)]) {
        if (visited[static_cast<std::size_t>(right)]) continue;
        visited[static_cast<std::size_t>(right)] = 1;
        if (match_right_[static_cast<std::size_t>(right)] < 0 ||
            try_path(match_right_[static_cast<std::size_t>(right)], visited)) {
            match_left_[static_cast<std::size_t>(left)] = right;
            match_right_[static_cast<std::size_t>(right)] = left;
            return true;
        }
    }
    return false;
}

} // namespace topocode

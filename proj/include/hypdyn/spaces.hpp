#pragma once

// Geometry of the k-star: k closed edges glued at a single branch point b.
// A point is (edge, t) with t the arc length from b; the interval is the
// k = 1 (or k = 2) case.

#include <compare>
#include <cstddef>
#include <vector>

namespace hypdyn {

class StarSpace {
public:
    /// k edges of length 1.
    explicit StarSpace(int k);
    explicit StarSpace(std::vector<double> edge_lengths);

    int k() const { return static_cast<int>(lengths_.size()); }
    double length(int edge) const { return lengths_.at(static_cast<std::size_t>(edge)); }
    const std::vector<double>& lengths() const { return lengths_; }

    bool operator==(const StarSpace&) const = default;

private:
    std::vector<double> lengths_;
};

struct StarPoint {
    int edge = 0;
    double t = 0.0;

    bool is_branch() const { return t == 0.0; }

    // Lexicographic by (edge, t). Only meaningful on canonical points.
    friend bool operator==(const StarPoint& a, const StarPoint& b) {
        return a.edge == b.edge && a.t == b.t;
    }
    friend std::partial_ordering operator<=>(const StarPoint& a, const StarPoint& b) {
        if (auto c = a.edge <=> b.edge; c != 0) return c;
        return a.t <=> b.t;
    }
};

inline StarPoint branch_point() { return StarPoint{0, 0.0}; }

/// Canonical representative: the branch point is always (0, +0.0).
/// Throws std::domain_error when the edge index or coordinate is out of range.
StarPoint canonicalize(const StarSpace& X, StarPoint p);

/// Geodesic distance: |t - t'| on a common edge, t + t' through the branch otherwise.
double distance(const StarSpace& X, const StarPoint& p, const StarPoint& q);

}  // namespace hypdyn

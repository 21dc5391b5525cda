#include "hypdyn/spaces.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hypdyn {

StarSpace::StarSpace(int k) {
    if (k < 1) throw std::domain_error("StarSpace: k must be >= 1, got " + std::to_string(k));
    lengths_.assign(static_cast<std::size_t>(k), 1.0);
}

StarSpace::StarSpace(std::vector<double> edge_lengths) : lengths_(std::move(edge_lengths)) {
    if (lengths_.empty()) throw std::domain_error("StarSpace: at least one edge required");
    for (double L : lengths_) {
        if (!(L > 0.0) || !std::isfinite(L))
            throw std::domain_error("StarSpace: edge lengths must be positive and finite");
    }
}

StarPoint canonicalize(const StarSpace& X, StarPoint p) {
    if (p.edge < 0 || p.edge >= X.k())
        throw std::domain_error("canonicalize: edge index " + std::to_string(p.edge) + " out of range");
    const double L = X.length(p.edge);
    if (!(p.t >= 0.0) || !(p.t <= L))
        throw std::domain_error("canonicalize: coordinate " + std::to_string(p.t) + " outside [0, " +
                                std::to_string(L) + "]");
    if (p.t == 0.0) return branch_point();  // also folds -0.0
    return p;
}

double distance(const StarSpace& X, const StarPoint& p, const StarPoint& q) {
    (void)X;
    if (p.edge == q.edge) return std::fabs(p.t - q.t);
    return p.t + q.t;
}

}  // namespace hypdyn

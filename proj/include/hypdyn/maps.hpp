#pragma once

// Homeomorphisms of a star: an edge permutation plus strictly increasing edge
// maps fixing both ends of each edge. Edge maps act on the normalized
// coordinate s = t / L in [0, 1].

#include <span>
#include <utility>
#include <vector>

#include "hypdyn/spaces.hpp"

namespace hypdyn {

/// Coordinates below this floor collapse onto the branch point.
inline constexpr double kBranchClampFloor = 1e-300;

class EdgeMap {
public:
    enum class Family { Power, Pwl, Composite };

    /// s -> s^p, p > 0. p == 1 is the exact identity.
    static EdgeMap power(double p);
    /// Strictly increasing piecewise-linear map through the given breakpoints,
    /// which must start at (0,0) and end at (1,1).
    static EdgeMap pwl(std::vector<std::pair<double, double>> points);
    static EdgeMap identity() { return power(1.0); }

    Family family() const { return family_; }
    double exponent() const { return p_; }
    double inverse_exponent() const { return inv_p_; }
    const std::vector<std::pair<double, double>>& points() const { return pts_; }
    bool is_identity() const { return family_ == Family::Power && p_ == 1.0; }

    double forward(double s) const;
    double inverse(double s) const;

    EdgeMap inverted() const;
    /// The map s -> next(this(s)).
    EdgeMap then(const EdgeMap& next) const;

private:
    EdgeMap() = default;

    Family family_ = Family::Power;
    double p_ = 1.0;
    double inv_p_ = 1.0;
    std::vector<std::pair<double, double>> pts_;
    std::vector<EdgeMap> chain_;
};

class StarHomeo {
public:
    /// maps[j] carries edge j onto edge perm[j].
    StarHomeo(StarSpace space, std::vector<int> perm, std::vector<EdgeMap> maps);
    static StarHomeo identity(const StarSpace& space);

    const StarSpace& space() const { return space_; }
    const std::vector<int>& perm() const { return perm_; }
    const std::vector<int>& inverse_perm() const { return inv_perm_; }
    const std::vector<EdgeMap>& edge_maps() const { return maps_; }

    StarHomeo inverse() const;
    /// h^m for m >= 1, with edge maps composed along permutation cycles.
    StarHomeo power(int m) const;

private:
    StarSpace space_;
    std::vector<int> perm_;
    std::vector<int> inv_perm_;
    std::vector<EdgeMap> maps_;
};

StarPoint apply(const StarHomeo& h, const StarPoint& p);
StarPoint apply_inverse(const StarHomeo& h, const StarPoint& p);

/// h^n(p) for any integer n. Runs of power maps are evaluated in log space
/// (exponents multiplied, one exp at the end) so deep iterates do not drift.
StarPoint iterate(const StarHomeo& h, const StarPoint& p, long n);

/// Least m >= 1 with perm^m = id.
int edge_period(const StarHomeo& h);

/// For p interior to an edge: true iff h^m(p) != p, m the edge period.
bool is_wandering(const StarHomeo& h, const StarPoint& p);

/// Orbit grid x^j_n = h^n(x^j), |n| <= radius, and the minimum distance
/// between distinct grid points.
struct WanderingLattice {
    int radius = 0;
    std::vector<std::vector<StarPoint>> orbits;  // orbits[j][n + radius]
    double delta = 0.0;

    int tracks() const { return static_cast<int>(orbits.size()); }
    const StarPoint& at(int track, int n) const {
        return orbits[static_cast<std::size_t>(track)][static_cast<std::size_t>(n + radius)];
    }
};

/// Requires edge_period(h) == 1 and every base point interior and wandering.
/// Throws InvariantViolation when two grid points coincide (delta == 0).
WanderingLattice wandering_lattice(const StarHomeo& h, std::span<const StarPoint> base, int radius);

}  // namespace hypdyn

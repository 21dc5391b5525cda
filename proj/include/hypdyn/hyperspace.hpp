#pragma once

// Finite representations of hyperspace elements of a star:
//   Subcontinuum   - an arc inside one open edge, or a star piece through b
//   FinitePointSet - elements of F_n(X)
//   ArcUnion       - elements of C_n of the interval (k = 1 or k = 2 stars)
// plus the Hausdorff metric, induced maps and the endpoint/boundary maps.

#include <utility>
#include <variant>
#include <vector>

#include "hypdyn/maps.hpp"
#include "hypdyn/spaces.hpp"

namespace hypdyn {

struct Arc {
    int edge = 0;
    double a = 0.0;
    double b = 0.0;
    bool operator==(const Arc&) const = default;
};

/// Connected closed set through the branch point: [0, reaches[j]] on edge j.
struct StarPiece {
    std::vector<double> reaches;
    bool operator==(const StarPiece&) const = default;
};

using Subcontinuum = std::variant<Arc, StarPiece>;

struct FinitePointSet {
    std::vector<StarPoint> points;  // sorted, distinct, canonical
    std::size_t size() const { return points.size(); }
    bool operator==(const FinitePointSet&) const = default;
};

/// Disjoint closed intervals in interval coordinates, sorted left to right.
/// For k = 1 the interval is [0, L0]; for k = 2 it is [-L0, L1], edge 0
/// running to the left of the branch point.
struct ArcUnion {
    std::vector<std::pair<double, double>> arcs;
    std::size_t components() const { return arcs.size(); }
    bool operator==(const ArcUnion&) const = default;
};

// Validating constructors. All throw std::domain_error on malformed input.
Subcontinuum make_arc(const StarSpace& X, int edge, double a, double b);  // a == 0 yields a StarPiece
StarPiece make_star_piece(const StarSpace& X, std::vector<double> reaches);
FinitePointSet make_point_set(const StarSpace& X, std::vector<StarPoint> points);
ArcUnion make_arc_union(const StarSpace& X, std::vector<std::pair<double, double>> arcs, int max_components = 0);

/// Interval coordinate <-> star point, for k <= 2.
StarPoint interval_point(const StarSpace& X, double u);
double interval_coordinate(const StarSpace& X, const StarPoint& p);

struct Segment {
    int edge = 0;
    double lo = 0.0;
    double hi = 0.0;
};

std::vector<Segment> segments(const StarSpace& X, const Subcontinuum& S);
std::vector<Segment> segments(const StarSpace& X, const FinitePointSet& S);
std::vector<Segment> segments(const StarSpace& X, const ArcUnion& S);

double hausdorff(const StarSpace& X, const std::vector<Segment>& S, const std::vector<Segment>& T);

template <class S, class T>
double hausdorff(const StarSpace& X, const S& s, const T& t) {
    return hausdorff(X, segments(X, s), segments(X, t));
}

Subcontinuum induced_apply(const StarHomeo& h, const Subcontinuum& S);
FinitePointSet induced_apply(const StarHomeo& h, const FinitePointSet& S);
ArcUnion induced_apply(const StarHomeo& h, const ArcUnion& S);

/// E(S): tips of a star piece (or {b} when it is the branch point alone);
/// the ends of an arc. A star piece with one positive reach is the arc [b, tip],
/// so both b and the tip are returned.
FinitePointSet endpoints(const StarSpace& X, const Subcontinuum& S);

/// All interval endpoints of U as star points.
FinitePointSet boundary(const StarSpace& X, const ArcUnion& U);

enum class C2Class { A, B1, B2, C, Other };
const char* to_string(C2Class c);
C2Class classify_C2(const ArcUnion& U);

/// Star piece with the given tips (edge, t), at least two of them.
StarPiece make_Y_element(const StarSpace& X, const std::vector<std::pair<int, double>>& tips);

}  // namespace hypdyn

#include "hypdyn/hyperspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace hypdyn {

namespace {

void check_interval_star(const StarSpace& X, const char* who) {
    if (X.k() > 2) throw std::domain_error(std::string(who) + ": interval representations need k <= 2");
}

double interval_min(const StarSpace& X) { return X.k() == 1 ? 0.0 : -X.length(0); }
double interval_max(const StarSpace& X) { return X.k() == 1 ? X.length(0) : X.length(1); }

}  // namespace

Subcontinuum make_arc(const StarSpace& X, int edge, double a, double b) {
    if (edge < 0 || edge >= X.k()) throw std::domain_error("make_arc: edge out of range");
    if (!(a >= 0.0) || !(a <= b) || !(b <= X.length(edge)))
        throw std::domain_error("make_arc: need 0 <= a <= b <= L");
    if (a == 0.0) {
        std::vector<double> reaches(static_cast<std::size_t>(X.k()), 0.0);
        reaches[static_cast<std::size_t>(edge)] = b;
        return StarPiece{std::move(reaches)};
    }
    return Arc{edge, a, b};
}

StarPiece make_star_piece(const StarSpace& X, std::vector<double> reaches) {
    if (static_cast<int>(reaches.size()) != X.k()) throw std::domain_error("make_star_piece: need one reach per edge");
    for (std::size_t j = 0; j < reaches.size(); ++j) {
        if (!(reaches[j] >= 0.0) || !(reaches[j] <= X.length(static_cast<int>(j))))
            throw std::domain_error("make_star_piece: reach outside [0, L]");
        reaches[j] += 0.0;  // -0.0 -> +0.0
    }
    return StarPiece{std::move(reaches)};
}

FinitePointSet make_point_set(const StarSpace& X, std::vector<StarPoint> points) {
    if (points.empty()) throw std::domain_error("make_point_set: a finite set must be nonempty");
    for (auto& p : points) p = canonicalize(X, p);
    std::sort(points.begin(), points.end(), [](const StarPoint& a, const StarPoint& b) { return a < b; });
    points.erase(std::unique(points.begin(), points.end()), points.end());
    return FinitePointSet{std::move(points)};
}

ArcUnion make_arc_union(const StarSpace& X, std::vector<std::pair<double, double>> arcs, int max_components) {
    check_interval_star(X, "make_arc_union");
    if (arcs.empty()) throw std::domain_error("make_arc_union: need at least one arc");
    if (max_components > 0 && static_cast<int>(arcs.size()) > max_components)
        throw std::domain_error("make_arc_union: too many components");
    const double lo = interval_min(X), hi = interval_max(X);
    std::sort(arcs.begin(), arcs.end());
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        auto& [a, b] = arcs[i];
        if (!(a <= b) || !(a >= lo) || !(b <= hi)) throw std::domain_error("make_arc_union: arc outside the interval");
        if (i > 0 && !(arcs[i - 1].second < a))
            throw std::domain_error("make_arc_union: arcs must be pairwise disjoint");
        a += 0.0;
        b += 0.0;
    }
    return ArcUnion{std::move(arcs)};
}

StarPoint interval_point(const StarSpace& X, double u) {
    check_interval_star(X, "interval_point");
    if (X.k() == 1) return canonicalize(X, StarPoint{0, u});
    if (u < 0.0) return canonicalize(X, StarPoint{0, -u});
    return canonicalize(X, StarPoint{1, u});
}

double interval_coordinate(const StarSpace& X, const StarPoint& p) {
    check_interval_star(X, "interval_coordinate");
    if (X.k() == 2 && p.edge == 0) return -p.t + 0.0;
    return p.t;
}

// ---------------------------------------------------------------------------
// Segments

std::vector<Segment> segments(const StarSpace& X, const Subcontinuum& S) {
    std::vector<Segment> out;
    if (const auto* arc = std::get_if<Arc>(&S)) {
        out.push_back({arc->edge, arc->a, arc->b});
        return out;
    }
    const auto& piece = std::get<StarPiece>(S);
    for (std::size_t j = 0; j < piece.reaches.size(); ++j)
        if (piece.reaches[j] > 0.0) out.push_back({static_cast<int>(j), 0.0, piece.reaches[j]});
    if (out.empty()) out.push_back({0, 0.0, 0.0});
    (void)X;
    return out;
}

std::vector<Segment> segments(const StarSpace&, const FinitePointSet& S) {
    std::vector<Segment> out;
    out.reserve(S.points.size());
    for (const auto& p : S.points) out.push_back({p.edge, p.t, p.t});
    return out;
}

std::vector<Segment> segments(const StarSpace& X, const ArcUnion& S) {
    check_interval_star(X, "segments");
    std::vector<Segment> out;
    for (const auto& [a, b] : S.arcs) {
        if (X.k() == 1) {
            out.push_back({0, a, b});
        } else if (b <= 0.0) {
            out.push_back({0, -b + 0.0, -a});
        } else if (a >= 0.0) {
            out.push_back({1, a, b});
        } else {
            out.push_back({0, 0.0, -a});
            out.push_back({1, 0.0, b});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Hausdorff distance

namespace {

// sup over x in S of dist(x, T). On the edge of a segment of S, T looks like
// its own segments on that edge plus one virtual point at -c, where c is the
// closest approach of T to the branch point along any other edge. The distance
// to a union of intervals on a line peaks at segment ends or gap midpoints.
double directed(const std::vector<Segment>& S, const std::vector<Segment>& T) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    double worst = 0.0;
    std::vector<std::pair<double, double>> line;
    for (const Segment& s : S) {
        line.clear();
        double c = inf;
        for (const Segment& t : T) {
            if (t.edge == s.edge)
                line.emplace_back(t.lo, t.hi);
            else
                c = std::min(c, t.lo);
        }
        if (c < inf) line.emplace_back(-c, -c);
        std::sort(line.begin(), line.end());
        auto dist = [&](double x) {
            double d = inf;
            for (const auto& [lo, hi] : line) d = std::min(d, x < lo ? lo - x : (x > hi ? x - hi : 0.0));
            return d;
        };
        worst = std::max({worst, dist(s.lo), dist(s.hi)});
        double reach = -inf;
        for (const auto& [lo, hi] : line) {
            if (reach > -inf && lo > reach) {
                const double mid = 0.5 * (reach + lo);
                if (mid > s.lo && mid < s.hi) worst = std::max(worst, dist(mid));
            }
            reach = std::max(reach, hi);
        }
    }
    return worst;
}

}  // namespace

double hausdorff(const StarSpace&, const std::vector<Segment>& S, const std::vector<Segment>& T) {
    if (S.empty() || T.empty()) throw std::domain_error("hausdorff: sets must be nonempty");
    return std::max(directed(S, T), directed(T, S));
}

// ---------------------------------------------------------------------------
// Induced maps

Subcontinuum induced_apply(const StarHomeo& h, const Subcontinuum& S) {
    const StarSpace& X = h.space();
    if (const auto* arc = std::get_if<Arc>(&S)) {
        const StarPoint p = apply(h, StarPoint{arc->edge, arc->a});
        const StarPoint q = apply(h, StarPoint{arc->edge, arc->b});
        if (q.is_branch()) return StarPiece{std::vector<double>(static_cast<std::size_t>(X.k()), 0.0)};
        return make_arc(X, q.edge, p.t, q.t);
    }
    const auto& piece = std::get<StarPiece>(S);
    std::vector<double> reaches(piece.reaches.size(), 0.0);
    for (std::size_t j = 0; j < piece.reaches.size(); ++j) {
        if (piece.reaches[j] == 0.0) continue;
        const StarPoint q = apply(h, StarPoint{static_cast<int>(j), piece.reaches[j]});
        if (!q.is_branch()) reaches[static_cast<std::size_t>(q.edge)] = q.t;
    }
    return StarPiece{std::move(reaches)};
}

FinitePointSet induced_apply(const StarHomeo& h, const FinitePointSet& S) {
    std::vector<StarPoint> pts;
    pts.reserve(S.points.size());
    for (const auto& p : S.points) pts.push_back(apply(h, p));
    return make_point_set(h.space(), std::move(pts));
}

ArcUnion induced_apply(const StarHomeo& h, const ArcUnion& S) {
    const StarSpace& X = h.space();
    std::vector<std::pair<double, double>> arcs;
    arcs.reserve(S.arcs.size());
    for (const auto& [a, b] : S.arcs) {
        const double u = interval_coordinate(X, apply(h, interval_point(X, a)));
        const double v = interval_coordinate(X, apply(h, interval_point(X, b)));
        arcs.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(arcs.begin(), arcs.end());
    return make_arc_union(X, std::move(arcs));
}

// ---------------------------------------------------------------------------
// Endpoint maps

FinitePointSet endpoints(const StarSpace& X, const Subcontinuum& S) {
    if (const auto* arc = std::get_if<Arc>(&S))
        return make_point_set(X, {StarPoint{arc->edge, arc->a}, StarPoint{arc->edge, arc->b}});
    const auto& piece = std::get<StarPiece>(S);
    std::vector<StarPoint> tips;
    for (std::size_t j = 0; j < piece.reaches.size(); ++j)
        if (piece.reaches[j] > 0.0) tips.push_back({static_cast<int>(j), piece.reaches[j]});
    if (tips.size() <= 1) tips.push_back(branch_point());
    return make_point_set(X, std::move(tips));
}

FinitePointSet boundary(const StarSpace& X, const ArcUnion& U) {
    std::vector<StarPoint> pts;
    for (const auto& [a, b] : U.arcs) {
        pts.push_back(interval_point(X, a));
        pts.push_back(interval_point(X, b));
    }
    return make_point_set(X, std::move(pts));
}

const char* to_string(C2Class c) {
    switch (c) {
    case C2Class::A: return "A";
    case C2Class::B1: return "B1";
    case C2Class::B2: return "B2";
    case C2Class::C: return "C";
    case C2Class::Other: return "OTHER";
    }
    return "?";
}

C2Class classify_C2(const ArcUnion& U) {
    if (U.arcs.empty() || U.arcs.size() > 2) throw std::domain_error("classify_C2: need one or two components");
    if (U.arcs.size() == 1) return C2Class::C;
    const bool left = U.arcs[0].first < U.arcs[0].second;
    const bool right = U.arcs[1].first < U.arcs[1].second;
    if (left && right) return C2Class::A;
    if (left) return C2Class::B1;
    if (right) return C2Class::B2;
    return C2Class::Other;
}

StarPiece make_Y_element(const StarSpace& X, const std::vector<std::pair<int, double>>& tips) {
    if (tips.size() < 2) throw std::domain_error("make_Y_element: need at least two tips");
    std::vector<double> reaches(static_cast<std::size_t>(X.k()), 0.0);
    for (const auto& [edge, t] : tips) {
        if (edge < 0 || edge >= X.k()) throw std::domain_error("make_Y_element: edge out of range");
        if (!(t > 0.0) || !(t <= X.length(edge))) throw std::domain_error("make_Y_element: tip must satisfy 0 < t <= L");
        auto& r = reaches[static_cast<std::size_t>(edge)];
        if (r != 0.0) throw std::domain_error("make_Y_element: two tips on edge " + std::to_string(edge));
        r = t;
    }
    return StarPiece{std::move(reaches)};
}

}  // namespace hypdyn
